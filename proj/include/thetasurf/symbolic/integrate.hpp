#ifndef THETASURF_SYMBOLIC_INTEGRATE_HPP
#define THETASURF_SYMBOLIC_INTEGRATE_HPP

#include <array>
#include <string>
#include <vector>

#include "../exact/roots.hpp"
#include "quartic.hpp"

namespace thetasurf {

// A rational component of the curve: x = x(w), y = y(w).
struct ComponentParam {
  RatFn x, y;
  std::string label;

  static ComponentParam parse(const std::string& xs, const std::string& ys, std::string label = "") {
    return {parse_ratfn(xs), parse_ratfn(ys), std::move(label)};
  }
};

// Compose a bivariate polynomial with rational functions of w.
inline RatFn compose2(const MPoly& q, const RatFn& x, const RatFn& y) {
  RatFn r(0);
  std::vector<RatFn> px{RatFn(1)}, py{RatFn(1)};
  for (auto& [e, c] : q.terms()) {
    while ((int)px.size() <= e[0]) px.push_back(px.back() * x);
    while ((int)py.size() <= e[1]) py.push_back(py.back() * y);
    r += px[e[0]] * py[e[1]] * RatFn(c);
  }
  return r;
}

inline bool lies_on(const MPoly& q, const ComponentParam& c) { return compose2(q, c.x, c.y).is_zero(); }

// omega_j = num_j / q_y dx = -num_j / q_x dy with num = (x, y, 1).
struct DifferentialBasis {
  MPoly q, qx, qy;
  std::array<MPoly, 3> num;
  // dx-form denominators and dy-form denominators (the latter carry the sign)
  MPoly dx_den() const { return qy; }
  MPoly dy_den() const { return -qx; }
};

inline DifferentialBasis differential_basis(const MPoly& q) {
  if (q.nvars() != 2) throw InputError("differential basis needs q(x,y)");
  return {q, q.derivative(0), q.derivative(1), {MPoly::var(2, 0), MPoly::var(2, 1), MPoly(2, QNum(1))}};
}

// Pull omega_which (1..3) back to the component as a rational function of w (times dw).
inline RatFn pullback(const DifferentialBasis& b, const ComponentParam& c, int which) {
  if (which < 1 || which > 3) throw InputError("form index must be 1, 2 or 3");
  RatFn num = compose2(b.num[which - 1], c.x, c.y);
  RatFn qy = compose2(b.qy, c.x, c.y);
  if (!qy.is_zero()) return num * c.x.derivative() / qy;
  RatFn qx = compose2(b.qx, c.x, c.y);
  if (qx.is_zero()) throw InputError("component lies in the singular locus");
  return -(num * c.y.derivative() / qx);
}

// coef * log(lead * (w - root))
struct LogTerm {
  QNum coef;
  QNum root;
  QNum lead{1};
};

struct Antiderivative {
  std::vector<LogTerm> logs;
  RatFn rational;

  bool has_logs() const { return !logs.empty(); }
  RatFn derivative() const {
    RatFn d = rational.derivative();
    for (auto& l : logs) d += RatFn(UPoly(l.coef), UPoly::linear(l.root));
    return d;
  }
  std::string str(const std::string& v = "w") const {
    std::string s;
    for (auto& l : logs) {
      if (!s.empty()) s += " + ";
      s += "(" + l.coef.str() + ")*log(";
      if (!l.lead.is_one()) s += "(" + l.lead.str() + ")*";
      s += "(" + UPoly::linear(l.root).str(v) + "))";
    }
    if (!rational.is_zero() || s.empty()) {
      if (!s.empty()) s += " + ";
      s += rational.str(v);
    }
    return s;
  }
};

// Exact partial-fraction antiderivative of f; the rational part vanishes at
// infinity apart from its polynomial part, which has zero constant term.
inline Antiderivative integrate_rational(const RatFn& f) {
  Antiderivative out;
  if (f.is_zero()) return out;
  auto [poly, rem] = f.num().divmod(f.den());
  out.rational = RatFn(poly.integral());
  if (rem.is_zero()) return out;
  const UPoly& Q = f.den();
  for (const auto& er : exact_roots(Q)) {
    const QNum& r = er.value;
    int m = er.multiplicity;
    UPoly Qr = Q / UPoly::linear(r).pow(m);
    UPoly A = rem.shift(r), B = Qr.shift(r);
    std::vector<QNum> c(m);
    for (int k = 0; k < m; ++k) {
      QNum acc = A.coeff(k);
      for (int j = 1; j <= k; ++j) acc -= B.coeff(j) * c[k - j];
      c[k] = acc / B.coeff(0);
    }
    // c_k / (w - r)^(m - k)
    for (int k = 0; k < m; ++k) {
      if (c[k].is_zero()) continue;
      int p = m - k;
      if (p == 1)
        out.logs.push_back({c[k], r, QNum(1)});
      else
        out.rational += RatFn(UPoly(-c[k] / QNum((long)(p - 1))), UPoly::linear(r).pow(p - 1));
    }
  }
  return out;
}

inline Antiderivative integrate_on_component(const MPoly& q, const ComponentParam& comp, int which) {
  if (!lies_on(q, comp)) throw InputError("component " + comp.label + " does not lie on the curve");
  return integrate_rational(pullback(differential_basis(q), comp, which));
}

}  // namespace thetasurf

#endif
