#ifndef THETASURF_NUMERIC_CURVE_HPP
#define THETASURF_NUMERIC_CURVE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <tuple>
#include <vector>

#include "../errors.hpp"
#include "../exact/mpoly.hpp"
#include "../exact/roots.hpp"

namespace thetasurf {

using cd = std::complex<double>;

// q(x, y) with floating-point coefficients.
class NumCurve {
 public:
  struct Term {
    int i, j;  // x^i y^j
    cd c;
  };

  NumCurve() = default;
  explicit NumCurve(std::vector<Term> t) : terms_(std::move(t)) {
    for (auto& s : terms_) {
      dy_ = std::max(dy_, s.j);
      scale_ = std::max(scale_, std::abs(s.c));
    }
  }
  static NumCurve from_mpoly(const MPoly& q) {
    if (q.nvars() != 2) throw InputError("curve must be a polynomial in x, y");
    std::vector<Term> t;
    for (auto& [e, c] : q.terms()) t.push_back({e[0], e[1], c.to_complex()});
    return NumCurve(std::move(t));
  }

  cd eval(cd x, cd y) const {
    cd s = 0;
    for (auto& t : terms_) s += t.c * ipow(x, t.i) * ipow(y, t.j);
    return s;
  }
  cd dx(cd x, cd y) const {
    cd s = 0;
    for (auto& t : terms_)
      if (t.i > 0) s += t.c * double(t.i) * ipow(x, t.i - 1) * ipow(y, t.j);
    return s;
  }
  cd dy(cd x, cd y) const {
    cd s = 0;
    for (auto& t : terms_)
      if (t.j > 0) s += t.c * double(t.j) * ipow(x, t.i) * ipow(y, t.j - 1);
    return s;
  }
  // coefficients of q(x, .) in ascending powers of y
  std::vector<std::complex<long double>> y_coeffs(cd x) const {
    std::vector<std::complex<long double>> c(dy_ + 1, 0);
    std::complex<long double> xl(x.real(), x.imag());
    for (auto& t : terms_) {
      std::complex<long double> p(t.c.real(), t.c.imag());
      for (int k = 0; k < t.i; ++k) p *= xl;
      c[t.j] += p;
    }
    return c;
  }
  int degree_y() const { return dy_; }
  double scale() const { return scale_; }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  static cd ipow(cd x, int k) {
    cd r = 1;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
  }
  std::vector<Term> terms_;
  int dy_ = 0;
  double scale_ = 0;
};

// All roots of q(x, .), Newton-polished, sorted by (Re, Im).
inline std::vector<cd> curve_branches(const NumCurve& q, cd x) {
  auto c = q.y_coeffs(x);
  double mag = 0;
  for (auto& v : c) mag = std::max(mag, (double)std::abs(v));
  if (c.empty() || std::abs(c.back()) <= 1e-14 * std::max(mag, 1.0))
    throw DegenerateFiber("leading coefficient in y vanishes at x = (" + std::to_string(x.real()) + "," +
                          std::to_string(x.imag()) + ")");
  auto r = aberth_roots(c);
  int n = (int)c.size() - 1;
  std::vector<cd> out;
  for (auto z : r) {
    for (int it = 0; it < 3; ++it) {
      std::complex<long double> p = c[n], d = 0;
      for (int k = n - 1; k >= 0; --k) {
        d = d * z + p;
        p = p * z + c[k];
      }
      if (d == std::complex<long double>(0)) break;
      z -= p / d;
    }
    out.push_back(cd((double)z.real(), (double)z.imag()));
  }
  std::sort(out.begin(), out.end(),
            [](const cd& a, const cd& b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  return out;
}

// Root nearest to `guess`, with the distance to the runner-up.
inline std::pair<cd, double> nearest_branch(const NumCurve& q, cd x, cd guess) {
  auto r = curve_branches(q, x);
  std::sort(r.begin(), r.end(), [&](const cd& a, const cd& b) { return std::abs(a - guess) < std::abs(b - guess); });
  double second = r.size() > 1 ? std::abs(r[1] - r[0]) : 1e300;
  return {r[0], second};
}

struct TracePoint {
  double s;
  cd x, y;
};

// Continue y along x(s), s in [s0, s1], starting from y0 above x(s0). Steps
// are halved until the predicted value picks out one root unambiguously.
inline std::vector<TracePoint> track(const NumCurve& q, const std::function<cd(double)>& xof, cd y0, double s0,
                                     double s1, double hmax = 1.0 / 32) {
  std::vector<TracePoint> tr{{s0, xof(s0), y0}};
  double dir = s1 > s0 ? 1 : -1;
  double h = std::min(hmax, std::abs(s1 - s0));
  while (dir * (s1 - tr.back().s) > 1e-15) {
    const auto& cur = tr.back();
    double step = std::min(h, std::abs(s1 - cur.s));
    double sn = cur.s + dir * step;
    cd pred = cur.y;
    if (tr.size() > 1) {
      const auto& prev = tr[tr.size() - 2];
      pred += (cur.y - prev.y) * ((sn - cur.s) / (cur.s - prev.s));
    }
    cd xn = xof(sn);
    auto [yn, sep] = nearest_branch(q, xn, pred);
    double miss = std::abs(yn - pred);
    if (miss <= 0.25 * sep && miss <= 0.05 * (1 + std::abs(cur.y))) {
      tr.push_back({sn, xn, yn});
      h = std::min(hmax, 2 * step);
    } else {
      h = step / 2;
      if (h < 1e-13)
        throw BranchCollision("two branches meet near x = (" + std::to_string(xn.real()) + "," +
                              std::to_string(xn.imag()) + ")");
    }
  }
  return tr;
}

// y at parameter s from a dense trace: interpolate, then snap to the nearest root.
inline cd trace_lookup(const NumCurve& q, const std::vector<TracePoint>& tr, double s, cd x) {
  bool asc = tr.back().s >= tr.front().s;
  auto it = std::lower_bound(tr.begin(), tr.end(), s, [asc](const TracePoint& p, double v) {
    return asc ? p.s < v : p.s > v;
  });
  cd guess;
  if (it == tr.begin()) guess = tr.front().y;
  else if (it == tr.end()) guess = tr.back().y;
  else {
    auto a = it - 1;
    double w = (s - a->s) / (it->s - a->s);
    guess = a->y + (it->y - a->y) * w;
  }
  return nearest_branch(q, x, guess).first;
}

}  // namespace thetasurf

#endif
