#ifndef THETASURF_NUMERIC_QUADRATURE_HPP
#define THETASURF_NUMERIC_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

#include "../errors.hpp"

namespace thetasurf {

using CVec3 = std::array<std::complex<double>, 3>;

namespace detail {

// Kronrod 15-point nodes (positive half) and weights, Gauss 7-point weights.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b;
  CVec3 val;
  double err;
  int depth;
  bool operator<(const Piece& o) const { return err < o.err; }
};

template <class F>
Piece gk15(F& f, double a, double b, int depth) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  CVec3 k{}, g{};
  CVec3 fc = f(c);
  for (int j = 0; j < 3; ++j) {
    k[j] = fc[j] * kWgk[7];
    g[j] = fc[j] * kWg[3];
  }
  for (int i = 0; i < 7; ++i) {
    double dx = h * kXgk[i];
    CVec3 f1 = f(c - dx), f2 = f(c + dx);
    for (int j = 0; j < 3; ++j) {
      k[j] += kWgk[i] * (f1[j] + f2[j]);
      if (i % 2 == 1) g[j] += kWg[i / 2] * (f1[j] + f2[j]);
    }
  }
  Piece p{a, b, {}, 0, depth};
  for (int j = 0; j < 3; ++j) {
    p.val[j] = k[j] * h;
    p.err = std::max(p.err, std::abs((k[j] - g[j]) * h));
  }
  return p;
}

}  // namespace detail

struct QuadResult {
  CVec3 value{};
  double error = 0;
  int intervals = 0;
};

// Globally adaptive Gauss-Kronrod 15/7 for a C^3-valued integrand; absolute
// error target, bisection depth at most 40.
template <class F>
QuadResult integrate_gk(F f, double a, double b, double tol, int max_intervals = 20000) {
  std::priority_queue<detail::Piece> heap;
  heap.push(detail::gk15(f, a, b, 0));
  double total_err = heap.top().err;
  int count = 1;
  while (total_err > tol) {
    auto worst = heap.top();
    if (worst.depth >= 40 || count >= max_intervals)
      throw QuadratureStall("error estimate " + std::to_string(total_err) + " stays above " + std::to_string(tol));
    heap.pop();
    double m = 0.5 * (worst.a + worst.b);
    auto l = detail::gk15(f, worst.a, m, worst.depth + 1), r = detail::gk15(f, m, worst.b, worst.depth + 1);
    total_err += l.err + r.err - worst.err;
    heap.push(l);
    heap.push(r);
    ++count;
    if (total_err <= tol) break;
    // the running sum drifts; recompute now and then
    if (count % 64 == 0) {
      auto copy = heap;
      total_err = 0;
      while (!copy.empty()) {
        total_err += copy.top().err;
        copy.pop();
      }
    }
  }
  QuadResult res;
  res.intervals = count;
  while (!heap.empty()) {
    auto p = heap.top();
    heap.pop();
    for (int j = 0; j < 3; ++j) res.value[j] += p.val[j];
    res.error += p.err;
  }
  return res;
}

}  // namespace thetasurf

#endif
