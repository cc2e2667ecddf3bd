#ifndef THETASURF_TETRA_HPP
#define THETASURF_TETRA_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "exact/qnum.hpp"
#include "exact/upoly.hpp"
#include "symbolic/implicit.hpp"

namespace thetasurf {

// alpha U + beta V + gamma W = delta T, with alpha + beta + gamma = delta so
// that (1:1:1:1) lies on it.
struct TetraPlane {
  QNum alpha, beta, gamma, delta;

  TetraPlane(QNum a, QNum b, QNum g, QNum d) : alpha(a), beta(b), gamma(g), delta(d) {
    if (alpha.is_zero() || beta.is_zero() || gamma.is_zero() || delta.is_zero())
      throw InputError("plane coefficients must be nonzero");
    if (!(alpha + beta + gamma - delta).is_zero())
      throw InputError("plane does not pass through (1,1,1): alpha + beta + gamma != delta");
  }
  static TetraPlane through_one(QNum a, QNum b, QNum g) { return TetraPlane(a, b, g, a + b + g); }
  std::string str() const {
    return "(" + alpha.str() + ")*U + (" + beta.str() + ")*V + (" + gamma.str() + ")*W = " + delta.str();
  }
};

// U = 1 + a s + b t, V = 1 + c s + d t, W = 1 + e s + f t
struct LinePairParams {
  QNum a, b, c, d, e, f;
};

inline QNum tangency_det(const LinePairParams& p) {
  // det [[a,b,ab],[c,d,cd],[e,f,ef]]
  QNum m[3][3] = {{p.a, p.b, p.a * p.b}, {p.c, p.d, p.c * p.d}, {p.e, p.f, p.e * p.f}};
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// The family over b, with c, d, e rational functions of b.
struct LineFamily {
  QNum a, f;
  RatFn b, c, d, e;  // b is the identity when left free
  UPoly excluded;  // b values where the formula breaks down (zero poly: none)
  LinePairParams at(const QNum& bv) const {
    if (!excluded.is_zero() && excluded(bv).is_zero()) throw DegenerateConfiguration("b = " + bv.str() + " is excluded");
    return {a, b(bv), c(bv), d(bv), e(bv), f};
  }
  RatFn det() const {
    RatFn A(a), F(f);
    RatFn m[3][3] = {{A, b, A * b}, {c, d, c * d}, {e, F, e * F}};
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }
};

struct FamilySolution {
  std::optional<LineFamily> family;
  // when the tangency condition pins down b instead: the polynomial b must satisfy
  std::optional<UPoly> constraint;
};

// Solve alpha a + beta c + gamma e = 0, alpha b + beta d + gamma f = 0 and the
// tangency determinant for (c, d, e), given a and f; b is free unless b_fixed
// is given. The determinant factors as -(a f - b e) N / beta^2; the factor
// a f = b e makes the two lines parallel and is discarded.
inline FamilySolution solve_family(const TetraPlane& P, const QNum& a, const QNum& f,
                                   std::optional<QNum> b_fixed = std::nullopt) {
  const QNum &al = P.alpha, &be = P.beta, &ga = P.gamma;
  RatFn b = b_fixed ? RatFn(*b_fixed) : RatFn::var();
  // N = a alpha ((alpha + beta) b + gamma f) + e gamma (alpha b + (beta + gamma) f)
  RatFn A0 = RatFn(a * al) * (RatFn(al + be) * b + RatFn(ga * f));
  RatFn A1 = RatFn(ga) * (RatFn(al) * b + RatFn((be + ga) * f));
  FamilySolution out;
  if (A1.is_zero()) {
    if (A0.is_zero()) throw DegenerateConfiguration("e is not determined by the constraints");
    // only possible for a fixed b; report the condition on b
    UPoly cond = (RatFn(a * al) * (RatFn(al + be) * RatFn::var() + RatFn(ga * f))).num();
    out.constraint = cond;
    return out;
  }
  LineFamily fam;
  fam.a = a;
  fam.f = f;
  fam.b = b;
  fam.e = -A0 / A1;
  fam.c = -(RatFn(al * a) + RatFn(ga) * fam.e) / RatFn(be);
  fam.d = -(RatFn(al) * b + RatFn(ga * f)) / RatFn(be);
  // after cancellation; e.g. b = 0 can survive as a limit of the family
  if (!b_fixed) fam.excluded = fam.e.den().degree() > 0 ? fam.e.den() : UPoly();
  out.family = fam;
  return out;
}

struct HadamardResult {
  bool ok;
  double max_defect;
  bool exact_zero;
};

// Tests alpha U~ + beta V~ + gamma W~ = delta on a grid of (s, t), with
// U~ = (1 + a s)(1 + b t) etc.
inline HadamardResult hadamard_check(const LinePairParams& p, const TetraPlane& P, int n_samples, double tol) {
  if (n_samples < 10) throw InputError("need at least 10 samples");
  int side = (int)std::ceil(std::sqrt((double)n_samples));
  HadamardResult r{true, 0, true};
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      QNum s = QNum::frac(i - side / 2, 3), t = QNum::frac(2 * j - side, 5);
      QNum U = (QNum(1) + p.a * s) * (QNum(1) + p.b * t);
      QNum V = (QNum(1) + p.c * s) * (QNum(1) + p.d * t);
      QNum W = (QNum(1) + p.e * s) * (QNum(1) + p.f * t);
      QNum def = P.alpha * U + P.beta * V + P.gamma * W - P.delta;
      if (!def.is_zero()) r.exact_zero = false;
      r.max_defect = std::max(r.max_defect, std::abs(def.to_complex()));
    }
  r.ok = r.max_defect <= tol;
  return r;
}

// X = log(1 + a s) + log(1 + b t), etc.
inline LogParametrization generating_curves(const TetraPlane& P, const LinePairParams& p) {
  if (!hadamard_check(p, P, 16, 0).exact_zero) throw InputError("line pair does not multiply to the plane");
  auto side = [](const QNum& k) {
    Antiderivative a;
    if (!k.is_zero()) a.logs.push_back({QNum(1), -(QNum(1) / k), k});
    return a;
  };
  LogParametrization out;
  out.coords[0] = {side(p.a), side(p.b)};
  out.coords[1] = {side(p.c), side(p.d)};
  out.coords[2] = {side(p.e), side(p.f)};
  return out;
}

}  // namespace thetasurf

#endif
