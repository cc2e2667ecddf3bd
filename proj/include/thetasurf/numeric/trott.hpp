#ifndef THETASURF_NUMERIC_TROTT_HPP
#define THETASURF_NUMERIC_TROTT_HPP

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "periods.hpp"

namespace thetasurf::trott {

// 144(x^4 + y^4) - 225(x^2 + y^2) + 350 x^2 y^2 + 81
inline NumCurve curve() {
  return NumCurve({{4, 0, 144}, {0, 4, 144}, {2, 0, -225}, {0, 2, -225}, {2, 2, 350}, {0, 0, 81}});
}

inline cd disc(cd x) { return 39556.0 * x * x * x * x - 27900.0 * x * x + 3969.0; }

// the four branches y = so sqrt((225 - 350 x^2 + si sqrt(D)) / 288)
inline cd radical(cd x, int so, int si) {
  return double(so) * std::sqrt((225.0 - 350.0 * x * x + double(si) * std::sqrt(disc(x))) / 288.0);
}

// real branch points: s1 < s2 < 3/4 < 1 and their negatives
inline double s1() { return std::sqrt((27900 - std::sqrt(27900.0 * 27900 - 4 * 39556.0 * 3969)) / (2 * 39556)); }
inline double s2() { return std::sqrt((27900 + std::sqrt(27900.0 * 27900 - 4 * 39556.0 * 3969)) / (2 * 39556)); }

// segment between two ramification points, branch fixed by the radical at the middle
inline PathSegment ramified(double a, double b, int so, int si) {
  PathSegment s;
  s.x_from = a;
  s.x_to = b;
  s.ramified_from = s.ramified_to = true;
  s.y_mid = radical(0.5 * (a + b), so, si);
  return s;
}

constexpr double kRadius = 4.0;  // the ray [1, inf) is closed up by a half circle of this radius

struct Cycles {
  std::array<PathSpec, 3> alpha, beta;
};

inline PathSpec beta2(const NumCurve& q) {
  const double R = kRadius;
  auto out_sheet = [](cd x) { return cd(0, 1) * std::sqrt(-(225.0 - 350.0 * x * x + std::sqrt(disc(x))) / 288.0); };
  PathSegment a;  // 1 -> R
  a.x_from = 1;
  a.x_to = R;
  a.ramified_from = true;
  a.y_mid = -out_sheet(0.5 * (1 + R));
  PathSegment arc;  // upper half circle R -> -R
  arc.x_from = R;
  arc.x_to = -R;
  arc.arc_center = cd(0);
  arc.sweep = std::acos(-1.0);
  PathSegment b;  // -R -> -1
  b.x_from = -R;
  b.x_to = -1;
  b.ramified_to = true;
  // the sheet arriving over the midpoint of [-R, -1]
  cd y = nearest_branch(q, a.x_at(0.5), *a.y_mid).first;
  {
    auto t1 = track(q, [&](double t) { return a.x_at(t); }, y, 0.5, 1.0);
    auto t2 = track(q, [&](double t) { return arc.x_at(t); }, t1.back().y, 0.0, 1.0);
    auto t3 = track(q, [&](double t) { return b.x_at(t); }, t2.back().y, 0.0, 0.5);
    y = t3.back().y;
  }
  PathSegment c;  // -1 -> -R on the other sheet
  c.x_from = -1;
  c.x_to = -R;
  c.ramified_from = true;
  c.y_mid = -y;
  PathSegment arc2;
  arc2.x_from = -R;
  arc2.x_to = R;
  arc2.arc_center = cd(0);
  arc2.sweep = -std::acos(-1.0);
  PathSegment d;
  d.x_from = R;
  d.x_to = 1;
  d.ramified_to = true;
  return {{a, arc, b, c, arc2, d}};
}

// Cycle presets: alpha_1 (x in [-s1, s1], y > 0) and alpha_3 (y < 0) clockwise,
// alpha_2 (x in [-1, -3/4]) counterclockwise; beta_1, beta_3 over [s1, s2];
// beta_2 over the ray through infinity.
inline Cycles cycles(const NumCurve& q) {
  double a = s1(), b = s2();
  Cycles c;
  c.alpha[0] = {{ramified(-a, a, 1, 1), ramified(a, -a, 1, -1)}};
  c.alpha[1] = {{ramified(-1, -b, -1, 1), ramified(-b, -0.75, -1, -1), ramified(-0.75, -b, 1, -1),
                 ramified(-b, -1, 1, 1)}};
  c.alpha[2] = {{ramified(-a, a, -1, -1), ramified(a, -a, -1, 1)}};
  c.beta[0] = {{ramified(a, b, 1, -1), ramified(b, a, 1, 1)}};
  c.beta[1] = beta2(q);
  c.beta[2] = {{ramified(a, b, -1, 1), ramified(b, a, -1, -1)}};
  return c;
}

// horizontal bitangent y = s2 touches at (+-x0, s2)
inline double bitangent_x() {
  double t = s2();
  return std::sqrt((225 - 350 * t * t) / 288);
}

inline std::pair<CurvePoint, CurvePoint> base_points() {
  double x0 = bitangent_x(), y0 = s2();
  return {CurvePoint{x0, y0}, CurvePoint{-x0, y0}};
}

// n displacements of the second point along the real axis, first point fixed
inline std::vector<std::pair<cd, cd>> offsets(int n) {
  std::vector<std::pair<cd, cd>> out;
  const double pi = std::acos(-1.0);
  for (int k = 0; k < n; ++k) out.push_back({cd(0), cd((50 - k) * pi / 80000, 0)});
  return out;
}

// n x n grid of real displacements in [-r, r]^2, both points moving
inline std::vector<std::pair<cd, cd>> grid_offsets(int n, double r = 0.02) {
  std::vector<std::pair<cd, cd>> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double a = n > 1 ? -r + 2 * r * i / (n - 1) : 0, b = n > 1 ? -r + 2 * r * j / (n - 1) : 0;
      out.push_back({cd(a), cd(b)});
    }
  return out;
}

// published values, in units of 1e-5
inline std::vector<std::array<double, 3>> published_points() {
  return {{2.58293, -4.55191, -6.38839},
          {2.53203, -4.46200, -6.26220},
          {2.48111, -4.37204, -6.13596},
          {2.43015, -4.28204, -6.00964},
          {2.37916, -4.19200, -5.88327}};
}

constexpr double kA1 = -0.02498252478, kA2 = 0.03154914935;
constexpr double kB1 = 0.01384015941, kB2 = 0.02348847438;

}  // namespace thetasurf::trott

#endif
