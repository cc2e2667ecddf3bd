#ifndef THETASURF_ERRORS_HPP
#define THETASURF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace thetasurf {

// Errors are split by how the CLI reports them: bad input (exit 2) or a
// numerical/capability failure (exit 3).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define THETASURF_ERROR(Name, Base)                                  \
  struct Name : Base {                                               \
    explicit Name(const std::string& what) : Base(#Name ": " + what) {} \
  };

THETASURF_ERROR(NonPositiveDefinite, InputError)
THETASURF_ERROR(ToleranceTooTight, NumericalError)
THETASURF_ERROR(RankDeficient, InputError)
THETASURF_ERROR(NotInVoronoiCell, InputError)
THETASURF_ERROR(VariableDivides, InputError)
THETASURF_ERROR(ParseError, InputError)
THETASURF_ERROR(UnsupportedFieldExtension, NumericalError)
THETASURF_ERROR(NotUnitCommensurable, InputError)
THETASURF_ERROR(EliminationOverflow, NumericalError)
THETASURF_ERROR(NotImplicitizable, NumericalError)
THETASURF_ERROR(DegenerateFiber, NumericalError)
THETASURF_ERROR(BranchCollision, NumericalError)
THETASURF_ERROR(QuadratureStall, NumericalError)
THETASURF_ERROR(SingularAlpha, NumericalError)
THETASURF_ERROR(ParabolicPoint, NumericalError)
THETASURF_ERROR(DegenerateConfiguration, InputError)
THETASURF_ERROR(MemoryCap, InputError)
THETASURF_ERROR(EmptySurface, NumericalError)

#undef THETASURF_ERROR

}  // namespace thetasurf

#endif
