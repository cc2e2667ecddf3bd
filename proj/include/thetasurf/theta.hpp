#ifndef THETASURF_THETA_HPP
#define THETASURF_THETA_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "linalg3.hpp"

namespace thetasurf {

// 113-bit significand, used by oracles and the degeneration residual.
using Extended = boost::multiprecision::cpp_bin_float_quad;

// Symmetric 3x3 complex matrix with positive definite real part.
template <class Real = double>
class RiemannMatrixT {
 public:
  using C = std::complex<Real>;

  explicit RiemannMatrixT(const Mat3<C>& b) : b_(b) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (b_[i][j] != b_[j][i]) throw InputError("Riemann matrix is not symmetric");
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        re_[i][j] = b_[i][j].real();
        im_[i][j] = b_[i][j].imag();
      }
    auto ev = sym_eigenvalues(re_);
    lmin_ = ev[0];
    if (!(lmin_ > 0)) throw NonPositiveDefinite("real part has eigenvalue " + to_str(lmin_));
    re_inv_ = inv3(re_);
    real_ = true;
    for (auto& r : im_)
      for (auto v : r)
        if (v != 0) real_ = false;
  }

  static RiemannMatrixT real(const Mat3<Real>& m) {
    Mat3<C> b;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) b[i][j] = C(m[i][j], 0);
    return RiemannMatrixT(b);
  }

  const Mat3<C>& entries() const { return b_; }
  const C& operator()(int i, int j) const { return b_[i][j]; }
  const Mat3<Real>& re() const { return re_; }
  const Mat3<Real>& im() const { return im_; }
  const Mat3<Real>& re_inverse() const { return re_inv_; }
  Real min_eigenvalue() const { return lmin_; }
  bool is_real() const { return real_; }

  template <class R2>
  RiemannMatrixT<R2> cast() const {
    Mat3<std::complex<R2>> b;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) b[i][j] = std::complex<R2>(R2(b_[i][j].real()), R2(b_[i][j].imag()));
    return RiemannMatrixT<R2>(b);
  }

 private:
  static std::string to_str(const Real& v) {
    using std::to_string;
    return std::to_string(static_cast<double>(v));
  }
  Mat3<C> b_;
  Mat3<Real> re_, im_, re_inv_;
  Real lmin_;
  bool real_;
};

using RiemannMatrix = RiemannMatrixT<double>;

struct ThetaCharacteristic {
  std::array<int, 3> eps{0, 0, 0};
  std::array<int, 3> delta{0, 0, 0};

  ThetaCharacteristic() = default;
  ThetaCharacteristic(std::array<int, 3> e, std::array<int, 3> d) : eps(e), delta(d) {
    for (int i = 0; i < 3; ++i)
      if ((eps[i] != 0 && eps[i] != 1) || (delta[i] != 0 && delta[i] != 1))
        throw InputError("characteristic entries must be 0 or 1");
  }

  bool is_zero() const { return eps == std::array<int, 3>{0, 0, 0} && delta == eps; }
  bool odd() const { return (eps[0] * delta[0] + eps[1] * delta[1] + eps[2] * delta[2]) % 2 == 1; }
  std::string str() const {
    std::string s = "(";
    for (int v : eps) s += char('0' + v);
    s += ",";
    for (int v : delta) s += char('0' + v);
    return s + ")";
  }
  bool operator==(const ThetaCharacteristic&) const = default;
  auto operator<=>(const ThetaCharacteristic&) const = default;

  // All 64 characteristics, lexicographic in (eps, delta).
  static std::vector<ThetaCharacteristic> all() {
    std::vector<ThetaCharacteristic> out;
    for (int e = 0; e < 8; ++e)
      for (int d = 0; d < 8; ++d)
        out.emplace_back(std::array<int, 3>{e >> 2 & 1, e >> 1 & 1, e & 1},
                         std::array<int, 3>{d >> 2 & 1, d >> 1 & 1, d & 1});
    return out;
  }
};

namespace detail {

// Upper bound for sum over a shifted lattice of exp(-pi |v|^2), |v| > R, where all
// lattice distances are at least rho (disjoint balls of radius rho/2).
inline double gaussian_tail(double R, double rho) {
  const double pi = pi_v<double>();
  double a = R - rho, h = rho / 2;
  double ea = std::exp(-pi * a * a), erfc_a = std::erfc(std::sqrt(pi) * a);
  double integral = a * ea / (2 * pi) + erfc_a / (4 * pi) + 2 * h * ea / (2 * pi) + h * h * erfc_a / 2;
  double ball = pi / 6 * rho * rho * rho;
  return 4 * pi / ball * integral;
}

constexpr int kBoxCap = 80;

inline double radius_for(double lmin, double tol) {
  if (!(tol > 0)) throw InputError("tolerance must be positive");
  double rho = std::sqrt(lmin);
  double lo = rho / 2;
  if (gaussian_tail(lo, rho) <= tol) return lo;
  double hi = std::max(lo, 1.0);
  while (gaussian_tail(hi, rho) > tol) {
    hi *= 1.5;
    if (hi > 2 * kBoxCap * rho + 20) throw ToleranceTooTight("tolerance " + std::to_string(tol));
  }
  for (int it = 0; it < 60; ++it) {
    double mid = (lo + hi) / 2;
    (gaussian_tail(mid, rho) <= tol ? hi : lo) = mid;
  }
  if (hi > kBoxCap * rho) throw ToleranceTooTight("truncation radius " + std::to_string(hi) + " exceeds cap");
  return hi;
}

}  // namespace detail

// Radius R (in the Re(B) norm) such that the lattice tail beyond R is below tol.
template <class Real>
double truncation_radius(const RiemannMatrixT<Real>& B, double tol) {
  return detail::radius_for(static_cast<double>(B.min_eigenvalue()), tol);
}

template <class Real = double>
struct LatticePlanT {
  RiemannMatrixT<Real> matrix;
  double tol;
  double radius;  // covers every point whose own radius is <= radius
  std::vector<Vec3<int>> points;
  std::vector<Real> weights;  // exp(-pi k^T Re(B) k)
};
using LatticePlan = LatticePlanT<double>;

template <class Real>
LatticePlanT<Real> make_plan(const RiemannMatrixT<Real>& B, double tol, double radius) {
  const auto& Y = B.re();
  double margin2 = 0;
  for (auto& r : Y)
    for (auto v : r) margin2 += std::abs(static_cast<double>(v));
  double reach = radius + 0.5 * std::sqrt(margin2);
  double lmin = static_cast<double>(B.min_eigenvalue());
  int h = static_cast<int>(std::ceil(reach / std::sqrt(lmin)));
  if (h > detail::kBoxCap) throw ToleranceTooTight("lattice box half-width " + std::to_string(h));
  LatticePlanT<Real> plan{B, tol, radius, {}, {}};
  const Real pi = pi_v<Real>();
  for (int a = -h; a <= h; ++a)
    for (int b = -h; b <= h; ++b)
      for (int c = -h; c <= h; ++c) {
        Vec3<Real> k{Real(a), Real(b), Real(c)};
        Real q = quad3(Y, k);
        if (static_cast<double>(q) <= reach * reach * (1 + 1e-12)) {
          using std::exp;
          plan.points.push_back({a, b, c});
          plan.weights.push_back(exp(-pi * q));
        }
      }
  return plan;
}

namespace detail {

template <class Real>
struct PointSetup {
  Vec3<Real> shift;       // eps/2
  Vec3<Real> center_m;    // center for m = n + eps/2
  Vec3<int> base;         // rounded center for n
  double radius;
};

template <class Real>
PointSetup<Real> setup_point(const RiemannMatrixT<Real>& B, const Vec3<std::complex<Real>>& x,
                             const ThetaCharacteristic& chi, double tol) {
  using std::round;
  PointSetup<Real> s;
  Vec3<Real> imx{x[0].imag(), x[1].imag(), x[2].imag()};
  Vec3<Real> c = mul3(B.re_inverse(), imx);
  for (int i = 0; i < 3; ++i) {
    s.shift[i] = Real(chi.eps[i]) / 2;
    s.center_m[i] = -c[i];
    s.base[i] = static_cast<int>(round(s.center_m[i] - s.shift[i]));
  }
  double cyc = static_cast<double>(quad3(B.re(), s.center_m));
  double tol_eff = tol * std::exp(-pi_v<double>() * cyc);
  if (!(tol_eff > 0)) throw ToleranceTooTight("imaginary part of x too large for tolerance");
  s.radius = radius_for(static_cast<double>(B.min_eigenvalue()), tol_eff);
  return s;
}

template <class Real>
std::complex<Real> sum_with_plan(const LatticePlanT<Real>& plan, const Vec3<std::complex<Real>>& x,
                                 const ThetaCharacteristic& chi, const PointSetup<Real>& s) {
  using C = std::complex<Real>;
  using std::cos;
  using std::exp;
  const auto& B = plan.matrix;
  const auto& Y = B.re();
  const Real pi = pi_v<Real>();
  const bool real_path = B.is_real() && x[0].imag() == 0 && x[1].imag() == 0 && x[2].imag() == 0;
  Vec3<C> xd;
  for (int i = 0; i < 3; ++i) xd[i] = x[i] + C(Real(chi.delta[i]) / 2, 0);
  const Real r2 = Real(s.radius * s.radius * (1 + 1e-12));
  Real acc_re = 0, acc_im = 0;
  for (const auto& k : plan.points) {
    Vec3<Real> m, d;
    for (int i = 0; i < 3; ++i) {
      m[i] = Real(s.base[i] + k[i]) + s.shift[i];
      d[i] = m[i] - s.center_m[i];
    }
    if (quad3(Y, d) > r2) continue;
    if (real_path) {
      Real phase = 2 * pi * (m[0] * xd[0].real() + m[1] * xd[1].real() + m[2] * xd[2].real());
      acc_re += exp(-pi * quad3(Y, m)) * cos(phase);
    } else {
      // exponent 2*pi*(-1/2 m^T B m + i m^T xd)
      C mbm = quad3(B.entries(), m);
      C mx = m[0] * xd[0] + m[1] * xd[1] + m[2] * xd[2];
      C t = C(-pi, 0) * mbm + C(0, 2 * pi) * mx;
      C v = cexp(t);
      acc_re += v.real();
      acc_im += v.imag();
    }
  }
  return {acc_re, acc_im};
}

}  // namespace detail

// theta[eps,delta](x, B) = sum_n e(-1/2 (n+eps/2)^T B (n+eps/2) + i (n+eps/2)^T (x+delta/2))
template <class Real>
std::complex<Real> theta_char_eval(const Vec3<std::complex<Real>>& x, const RiemannMatrixT<Real>& B,
                                   const ThetaCharacteristic& chi, double tol) {
  auto s = detail::setup_point(B, x, chi, tol);
  auto plan = make_plan(B, tol, s.radius);
  return detail::sum_with_plan(plan, x, chi, s);
}

template <class Real>
std::complex<Real> theta_eval(const Vec3<std::complex<Real>>& x, const RiemannMatrixT<Real>& B, double tol) {
  return theta_char_eval(x, B, ThetaCharacteristic{}, tol);
}

template <class Real>
std::vector<std::complex<Real>> theta_batch(const std::vector<Vec3<std::complex<Real>>>& points,
                                            const RiemannMatrixT<Real>& B, const ThetaCharacteristic& chi,
                                            double tol) {
  if (points.empty()) throw InputError("theta_batch needs at least one point");
  std::vector<detail::PointSetup<Real>> setups;
  setups.reserve(points.size());
  double rmax = 0;
  for (const auto& x : points) {
    setups.push_back(detail::setup_point(B, x, chi, tol));
    rmax = std::max(rmax, setups.back().radius);
  }
  auto plan = make_plan(B, tol, rmax);
  std::vector<std::complex<Real>> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out.push_back(detail::sum_with_plan(plan, points[i], chi, setups[i]));
  return out;
}

// kappa = 1/2 (i B eps + delta)
template <class Real>
Vec3<std::complex<Real>> half_period(const RiemannMatrixT<Real>& B, const ThetaCharacteristic& chi) {
  Vec3<std::complex<Real>> k;
  for (int i = 0; i < 3; ++i) {
    std::complex<Real> s(0, 0);
    for (int j = 0; j < 3; ++j) s += B(i, j) * Real(chi.eps[j]);
    k[i] = std::complex<Real>(0, 1) * s / Real(2) + std::complex<Real>(Real(chi.delta[i]) / 2, 0);
  }
  return k;
}

}  // namespace thetasurf

#endif
