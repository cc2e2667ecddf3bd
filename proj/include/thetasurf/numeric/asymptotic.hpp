#ifndef THETASURF_NUMERIC_ASYMPTOTIC_HPP
#define THETASURF_NUMERIC_ASYMPTOTIC_HPP

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "../errors.hpp"
#include "../linalg3.hpp"
#include "../theta.hpp"

namespace thetasurf {

using RVec3 = Vec3<double>;

// Implicit surface F = 0 with first and second derivatives.
struct SurfaceFunction {
  std::function<double(const RVec3&)> value;
  std::function<RVec3(const RVec3&)> gradient;
  std::function<Mat3<double>(const RVec3&)> hessian;
};

// sin X - sin Y exp(Z)
inline SurfaceFunction scherk_function() {
  SurfaceFunction f;
  f.value = [](const RVec3& p) { return std::sin(p[0]) - std::sin(p[1]) * std::exp(p[2]); };
  f.gradient = [](const RVec3& p) {
    double e = std::exp(p[2]);
    return RVec3{std::cos(p[0]), -std::cos(p[1]) * e, -std::sin(p[1]) * e};
  };
  f.hessian = [](const RVec3& p) {
    double e = std::exp(p[2]), s = std::sin(p[1]) * e, c = std::cos(p[1]) * e;
    return Mat3<double>{{{-std::sin(p[0]), 0, 0}, {0, s, -c}, {0, -c, -s}}};
  };
  return f;
}

// Derivatives by central differences at step h (for theta-based F).
inline SurfaceFunction numeric_derivatives(std::function<double(const RVec3&)> F, double h = 1e-5) {
  SurfaceFunction f;
  f.value = F;
  f.gradient = [F, h](const RVec3& p) {
    RVec3 g;
    for (int i = 0; i < 3; ++i) {
      RVec3 a = p, b = p;
      a[i] += h;
      b[i] -= h;
      g[i] = (F(a) - F(b)) / (2 * h);
    }
    return g;
  };
  f.hessian = [F, h](const RVec3& p) {
    Mat3<double> H{};
    double f0 = F(p);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        if (i == j) {
          RVec3 a = p, b = p;
          a[i] += h;
          b[i] -= h;
          H[i][i] = (F(a) - 2 * f0 + F(b)) / (h * h);
        } else {
          RVec3 pp = p, pm = p, mp = p, mm = p;
          pp[i] += h, pp[j] += h;
          pm[i] += h, pm[j] -= h;
          mp[i] -= h, mp[j] += h;
          mm[i] -= h, mm[j] -= h;
          H[i][j] = H[j][i] = (F(pp) - F(pm) - F(mp) + F(mm)) / (4 * h * h);
        }
      }
    return H;
  };
  return f;
}

// Re theta[eps, delta](A X, B) for real X; A is the inverse of a real pi_alpha.
inline SurfaceFunction theta_function(const Mat3<double>& A, const RiemannMatrix& B, const ThetaCharacteristic& chi,
                                      double tol = 1e-12) {
  auto F = [A, B, chi, tol](const RVec3& X) {
    auto z = mul3(A, X);
    Vec3<std::complex<double>> x{z[0], z[1], z[2]};
    return theta_char_eval(x, B, chi, tol).real();
  };
  return numeric_derivatives(F);
}

namespace detail {

inline double dot(const RVec3& a, const RVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline RVec3 axpy(double s, const RVec3& a, const RVec3& b) { return {b[0] + s * a[0], b[1] + s * a[1], b[2] + s * a[2]}; }
inline RVec3 cross(const RVec3& a, const RVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline RVec3 unit(RVec3 v) {
  double n = std::sqrt(dot(v, v));
  return {v[0] / n, v[1] / n, v[2] / n};
}

}  // namespace detail

// The two asymptotic directions at p (unit vectors), or ParabolicPoint.
inline std::array<RVec3, 2> asymptotic_directions(const SurfaceFunction& f, const RVec3& p, double tol = 1e-9) {
  using namespace detail;
  RVec3 g = f.gradient(p);
  double gn = std::sqrt(dot(g, g));
  if (gn == 0) throw ParabolicPoint("singular point of the surface");
  RVec3 n{g[0] / gn, g[1] / gn, g[2] / gn};
  RVec3 a = std::abs(n[0]) < 0.9 ? RVec3{1, 0, 0} : RVec3{0, 1, 0};
  RVec3 e1 = unit(cross(n, a)), e2 = cross(n, e1);
  auto H = f.hessian(p);
  auto form = [&](const RVec3& u, const RVec3& v) { return dot(u, mul3(H, v)) / gn; };
  double h11 = form(e1, e1), h12 = form(e1, e2), h22 = form(e2, e2);
  double disc = h12 * h12 - h11 * h22;
  if (disc <= tol)
    throw ParabolicPoint("second fundamental form is not indefinite (discriminant " + std::to_string(disc) + ")");
  // eigen-decomposition of [[h11,h12],[h12,h22]]
  double tr = 0.5 * (h11 + h22), r = std::sqrt(0.25 * (h11 - h22) * (h11 - h22) + h12 * h12);
  double k1 = tr + r, k2 = tr - r;  // k1 > 0 > k2
  double th = 0.5 * std::atan2(2 * h12, h11 - h22);
  RVec3 u1 = axpy(std::sin(th), e2, {std::cos(th) * e1[0], std::cos(th) * e1[1], std::cos(th) * e1[2]});
  RVec3 u2 = cross(n, u1);
  double w1 = std::sqrt(-k2), w2 = std::sqrt(k1);
  RVec3 vp = unit(axpy(w2, u2, {w1 * u1[0], w1 * u1[1], w1 * u1[2]}));
  RVec3 vm = unit(axpy(-w2, u2, {w1 * u1[0], w1 * u1[1], w1 * u1[2]}));
  return {vp, vm};
}

namespace detail {

// asymptotic direction at p closest to `prev`, signed to agree with it
inline RVec3 follow(const SurfaceFunction& f, const RVec3& p, const RVec3& prev, double tol) {
  auto d = asymptotic_directions(f, p, tol);
  double a = dot(d[0], prev), b = dot(d[1], prev);
  RVec3 v = std::abs(a) >= std::abs(b) ? d[0] : d[1];
  double s = std::abs(a) >= std::abs(b) ? a : b;
  if (s < 0) v = {-v[0], -v[1], -v[2]};
  return v;
}

inline RVec3 project(const SurfaceFunction& f, RVec3 p) {
  for (int it = 0; it < 8; ++it) {
    double v = f.value(p);
    if (std::abs(v) < 1e-15) break;
    RVec3 g = f.gradient(p);
    p = axpy(-v / dot(g, g), g, p);
  }
  return p;
}

inline RVec3 rk4(const SurfaceFunction& f, const RVec3& p, const RVec3& dir, double h, double tol, RVec3* dir_out) {
  RVec3 k1 = follow(f, p, dir, tol);
  RVec3 k2 = follow(f, axpy(h / 2, k1, p), k1, tol);
  RVec3 k3 = follow(f, axpy(h / 2, k2, p), k2, tol);
  RVec3 k4 = follow(f, axpy(h, k3, p), k3, tol);
  RVec3 q = p;
  for (int i = 0; i < 3; ++i) q[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  q = project(f, q);
  *dir_out = k4;
  return q;
}

}  // namespace detail

struct AsymptoticCurve {
  std::vector<RVec3> points;
};

// Arc-length parametrized asymptotic curve through `start`. The family and
// orientation are the ones closest to `hint`; branch -1 picks the other family.
inline AsymptoticCurve asymptotic_curve(const SurfaceFunction& f, const RVec3& start, int steps, double h,
                                        RVec3 hint, int branch = 1, double tol = 1e-9) {
  using namespace detail;
  if (std::abs(f.value(start)) > 1e-10) throw InputError("start point is not on the surface");
  if (steps < 0 || !(h > 0)) throw InputError("need steps >= 0 and h > 0");
  auto d = asymptotic_directions(f, start, tol);
  RVec3 dir;
  if (branch == 1) {
    dir = std::abs(dot(d[0], hint)) >= std::abs(dot(d[1], hint)) ? d[0] : d[1];
  } else if (branch == -1) {
    dir = std::abs(dot(d[0], hint)) >= std::abs(dot(d[1], hint)) ? d[1] : d[0];
  } else {
    throw InputError("branch must be +1 or -1");
  }
  if (dot(dir, hint) < 0) dir = {-dir[0], -dir[1], -dir[2]};
  AsymptoticCurve out{{start}};
  RVec3 p = start;
  for (int k = 0; k < steps; ++k) {
    // one step of size h, subdivided until a step and two half steps agree
    int pieces = 1;
    RVec3 np, nd;
    for (;;) {
      RVec3 a = p, ad = dir, b = p, bd = dir;
      double sub = h / pieces;
      for (int i = 0; i < pieces; ++i) a = rk4(f, a, ad, sub, tol, &ad);
      for (int i = 0; i < 2 * pieces; ++i) b = rk4(f, b, bd, sub / 2, tol, &bd);
      double err = std::sqrt(dot(axpy(-1, a, b), axpy(-1, a, b)));
      if (err <= 1e-11 * std::max(1.0, h)) {
        np = b;
        nd = bd;
        break;
      }
      pieces *= 2;
      if (pieces > (1 << 16)) throw ParabolicPoint("step control failed; direction field degenerates");
    }
    p = np;
    dir = nd;
    out.points.push_back(p);
  }
  return out;
}

}  // namespace thetasurf

#endif
