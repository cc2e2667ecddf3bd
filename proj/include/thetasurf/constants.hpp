#ifndef THETASURF_CONSTANTS_HPP
#define THETASURF_CONSTANTS_HPP

#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <complex>

namespace thetasurf {

template <class Real>
inline Real pi_v() {
  return boost::math::constants::pi<Real>();
}

// exp(z) for complex<Real>, written out so multiprecision reals work too.
template <class Real>
inline std::complex<Real> cexp(const std::complex<Real>& z) {
  using std::cos;
  using std::exp;
  using std::sin;
  Real m = exp(z.real());
  return {m * cos(z.imag()), m * sin(z.imag())};
}

// e(t) = exp(2*pi*t). Every theta-type sum in the library goes through this.
template <class Real>
inline std::complex<Real> e_of(const std::complex<Real>& t) {
  return cexp(std::complex<Real>(2 * pi_v<Real>() * t.real(), 2 * pi_v<Real>() * t.imag()));
}

}  // namespace thetasurf

#endif
