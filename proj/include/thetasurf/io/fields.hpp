#ifndef THETASURF_IO_FIELDS_HPP
#define THETASURF_IO_FIELDS_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "../exact/mpoly.hpp"
#include "../numeric/asymptotic.hpp"
#include "../tropical.hpp"

namespace thetasurf {

using Field = std::function<double(const Vec3<double>&)>;

inline Field scherk_field() {
  return [](const Vec3<double>& p) { return std::sin(p[0]) - std::sin(p[1]) * std::exp(p[2]); };
}

// psi in X, Y, Z; the real part for coefficients outside Q
inline Field polynomial_field(const MPoly& psi) {
  if (psi.nvars() != 3) throw InputError("field polynomial must be in three variables");
  struct T {
    std::array<int, 3> e;
    double c;
  };
  std::vector<T> terms;
  for (auto& [e, c] : psi.terms()) terms.push_back({{e[0], e[1], e[2]}, c.to_complex().real()});
  return [terms](const Vec3<double>& p) {
    double s = 0;
    for (auto& t : terms) s += t.c * std::pow(p[0], t.e[0]) * std::pow(p[1], t.e[1]) * std::pow(p[2], t.e[2]);
    return s;
  };
}

// sum A_n exp(n . X) at real X, i.e. the degenerate sum at x = X / (2 pi i).
// The real part is returned.
inline Field degenerate_field(const DegenerateTheta& dt) {
  return [dt](const Vec3<double>& p) {
    std::complex<double> s = 0;
    for (auto& t : dt.terms) s += t.A * std::exp(t.n[0] * p[0] + t.n[1] * p[1] + t.n[2] * p[2]);
    return s.real();
  };
}

// Re theta[eps, delta](A X) for real X; with real B and A this is the cosine sum.
inline Field theta_field(const Mat3<double>& A, const RiemannMatrix& B, const ThetaCharacteristic& chi,
                         double tol = 1e-12) {
  return theta_function(A, B, chi, tol).value;
}

}  // namespace thetasurf

#endif
