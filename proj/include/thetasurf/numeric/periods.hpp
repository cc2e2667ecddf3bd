#ifndef THETASURF_NUMERIC_PERIODS_HPP
#define THETASURF_NUMERIC_PERIODS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "../linalg3.hpp"
#include "../theta.hpp"
#include "curve.hpp"
#include "quadrature.hpp"

namespace thetasurf {

// One piece of a path in the x-plane: a line segment, or an arc around
// arc_center sweeping `sweep` radians (0 means counterclockwise from x_from to x_to).
struct PathSegment {
  cd x_from, x_to;
  std::optional<cd> arc_center;
  double sweep = 0;
  std::optional<cd> y_start;  // branch above x_from; empty = continue from previous segment
  bool ramified_from = false, ramified_to = false;
  std::optional<cd> y_mid;  // branch hint at the middle, needed after a ramification point

  double arc_sweep() const {
    if (sweep != 0) return sweep;
    double a0 = std::arg(x_from - *arc_center), a1 = std::arg(x_to - *arc_center);
    double d = a1 - a0;
    const double tp = 2 * std::acos(-1.0);
    while (d <= 0) d += tp;
    return d;
  }
  cd x_at(double t) const {
    if (!arc_center) return x_from + (x_to - x_from) * t;
    double r = std::abs(x_from - *arc_center), a0 = std::arg(x_from - *arc_center);
    return *arc_center + std::polar(r, a0 + arc_sweep() * t);
  }
  cd dx_at(double t) const {
    if (!arc_center) return x_to - x_from;
    double sw = arc_sweep();
    return cd(0, sw) * (x_at(t) - *arc_center);
  }
  cd x_end() const { return arc_center ? x_at(1) : x_to; }
};

struct PathSpec {
  std::vector<PathSegment> segments;
};

struct PathIntegral {
  CVec3 value{};
  double error = 0;
  cd y_end = 0;
};

namespace detail {

// Half of a segment, from the midpoint (s = 0) out to one end (s = 1). At a
// ramified end t approaches the end quadratically, so y is analytic in s.
struct HalfPiece {
  const PathSegment* seg;
  double t_end;
  bool ramified;
  double t_of(double s) const {
    double phi = ramified ? 1 - (1 - s) * (1 - s) : s;
    return 0.5 + (t_end - 0.5) * phi;
  }
  double dt_ds(double s) const { return (t_end - 0.5) * (ramified ? 2 * (1 - s) : 1.0); }
};

inline CVec3 omega_at(const NumCurve& q, cd x, cd y) {
  cd qy = q.dy(x, y);
  return {x / qy, y / qy, cd(1) / qy};
}

inline PathIntegral integrate_half(const NumCurve& q, const HalfPiece& hp, cd y_mid, double tol) {
  auto xof = [&](double s) { return hp.seg->x_at(hp.t_of(s)); };
  double s_end = hp.ramified ? 1 - 1e-7 : 1.0;
  auto tr = track(q, xof, y_mid, 0.0, s_end);
  auto f = [&](double s) {
    double t = hp.t_of(s);
    cd x = hp.seg->x_at(t);
    cd y = trace_lookup(q, tr, s, x);
    cd w = hp.seg->dx_at(t) * hp.dt_ds(s);
    auto o = omega_at(q, x, y);
    return CVec3{o[0] * w, o[1] * w, o[2] * w};
  };
  auto r = integrate_gk(f, 0.0, 1.0, tol);
  PathIntegral out;
  out.value = r.value;
  out.error = r.error;
  out.y_end = tr.back().y;
  return out;
}

}  // namespace detail

inline PathIntegral integrate_segment(const NumCurve& q, const PathSegment& seg, std::optional<cd> y_in, double tol) {
  cd xm = seg.x_at(0.5);
  cd ym;
  if (seg.y_mid) {
    ym = nearest_branch(q, xm, *seg.y_mid).first;
  } else {
    if (seg.ramified_from) throw InputError("segment starting at a ramification point needs a y_mid hint");
    std::optional<cd> y0 = seg.y_start ? seg.y_start : y_in;
    if (!y0) throw InputError("segment has no starting branch");
    cd ys = nearest_branch(q, seg.x_from, *y0).first;
    auto tr = track(q, [&](double t) { return seg.x_at(t); }, ys, 0.0, 0.5);
    ym = tr.back().y;
  }
  detail::HalfPiece back{&seg, 0.0, seg.ramified_from}, fwd{&seg, 1.0, seg.ramified_to};
  auto a = detail::integrate_half(q, back, ym, tol / 2);
  auto b = detail::integrate_half(q, fwd, ym, tol / 2);
  PathIntegral out;
  for (int j = 0; j < 3; ++j) out.value[j] = b.value[j] - a.value[j];
  out.error = a.error + b.error;
  out.y_end = b.y_end;
  return out;
}

// (int omega_1, int omega_2, int omega_3) along the path; omega_j = (x, y, 1)_j / q_y dx.
inline PathIntegral path_integral(const NumCurve& q, const PathSpec& path, double tol) {
  if (path.segments.empty()) return {};
  PathIntegral out;
  std::optional<cd> y;
  double per = tol / path.segments.size();
  for (auto& s : path.segments) {
    auto r = integrate_segment(q, s, y, per);
    for (int j = 0; j < 3; ++j) out.value[j] += r.value[j];
    out.error += r.error;
    y = r.y_end;
  }
  out.y_end = *y;
  return out;
}

inline cd abelian_integral(const NumCurve& q, const PathSpec& path, int which, double tol) {
  if (which < 1 || which > 3) throw InputError("form index must be 1, 2 or 3");
  return path_integral(q, path, tol).value[which - 1];
}

struct BranchTrace {
  cd y_end;
  std::vector<TracePoint> trace;
};

// Analytic continuation of y along the whole path, starting from the first segment's y_start.
inline BranchTrace track_branch(const NumCurve& q, const PathSpec& path) {
  BranchTrace out;
  if (path.segments.empty() || !path.segments[0].y_start) throw InputError("path needs a starting branch");
  cd y = nearest_branch(q, path.segments[0].x_from, *path.segments[0].y_start).first;
  for (auto& s : path.segments) {
    if (s.ramified_from || s.ramified_to) throw InputError("tracking through ramification points is not supported");
    auto tr = track(q, [&](double t) { return s.x_at(t); }, y, 0.0, 1.0);
    out.trace.insert(out.trace.end(), tr.begin(), tr.end());
    y = tr.back().y;
  }
  out.y_end = y;
  return out;
}

struct PeriodMatrix {
  Mat3<cd> pi_alpha{}, pi_beta{};  // rows: forms, columns: cycles
  double error = 0;
  double cond_alpha = 0;
  double asymmetry = 0;  // of -i pi_alpha^-1 pi_beta
};

inline double cond_inf(const Mat3<cd>& m) {
  auto norm = [](const Mat3<cd>& a) {
    double n = 0;
    for (auto& r : a) n = std::max(n, std::abs(r[0]) + std::abs(r[1]) + std::abs(r[2]));
    return n;
  };
  return norm(m) * norm(inv3(m));
}

inline Mat3<cd> riemann_raw(const Mat3<cd>& pa, const Mat3<cd>& pb) {
  cd d = det3(pa);
  double scale = 0;
  for (auto& r : pa)
    for (auto v : r) scale = std::max(scale, std::abs(v));
  if (std::abs(d) <= 1e-12 * scale * scale * scale) throw SingularAlpha("pi_alpha is singular");
  Mat3<cd> b = mul3(inv3(pa), pb);
  for (auto& r : b)
    for (auto& v : r) v *= cd(0, -1);
  return b;
}

inline PeriodMatrix period_matrix(const NumCurve& q, const std::array<PathSpec, 3>& alpha,
                                  const std::array<PathSpec, 3>& beta, double tol) {
  PeriodMatrix pm;
  for (int k = 0; k < 3; ++k) {
    auto a = path_integral(q, alpha[k], tol), b = path_integral(q, beta[k], tol);
    for (int j = 0; j < 3; ++j) {
      pm.pi_alpha[j][k] = a.value[j];
      pm.pi_beta[j][k] = b.value[j];
    }
    pm.error = std::max({pm.error, a.error, b.error});
  }
  pm.cond_alpha = cond_inf(pm.pi_alpha);
  auto b = riemann_raw(pm.pi_alpha, pm.pi_beta);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) pm.asymmetry = std::max(pm.asymmetry, std::abs(b[i][j] - b[j][i]));
  return pm;
}

struct RiemannResult {
  RiemannMatrix B;
  double asymmetry;
};

// B = -i pi_alpha^-1 pi_beta, symmetrized.
inline RiemannResult riemann_matrix(const PeriodMatrix& pm) {
  auto b = riemann_raw(pm.pi_alpha, pm.pi_beta);
  double asym = 0;
  Mat3<cd> s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      asym = std::max(asym, std::abs(b[i][j] - b[j][i]));
      s[i][j] = 0.5 * (b[i][j] + b[j][i]);
    }
  return {RiemannMatrix(s), asym};
}

// ---- sampling (two base points, small displacements along x) ----

struct CurvePoint {
  cd x, y;
};

struct SurfaceSample {
  std::vector<CVec3> points;
  std::vector<std::pair<CurvePoint, CurvePoint>> ends;  // (p1', p2')
  double max_error = 0;
};

inline PathSpec straight(cd x0, cd x1, cd y0) {
  PathSegment s;
  s.x_from = x0;
  s.x_to = x1;
  s.y_start = y0;
  return {{s}};
}

inline SurfaceSample sample_surface(const NumCurve& q, const CurvePoint& p1, const CurvePoint& p2,
                                    const std::vector<std::pair<cd, cd>>& offsets, double tol) {
  double scale = std::max(1.0, q.scale());
  for (auto* p : {&p1, &p2})
    if (std::abs(q.eval(p->x, p->y)) > 1e-9 * scale) throw InputError("base point is not on the curve");
  SurfaceSample out;
  for (auto& [h1, h2] : offsets) {
    CVec3 c{};
    CurvePoint e1 = p1, e2 = p2;
    if (h1 != cd(0)) {
      auto r = path_integral(q, straight(p1.x, p1.x + h1, p1.y), tol / 2);
      for (int j = 0; j < 3; ++j) c[j] += r.value[j];
      out.max_error = std::max(out.max_error, r.error);
      e1 = {p1.x + h1, r.y_end};
    }
    if (h2 != cd(0)) {
      auto r = path_integral(q, straight(p2.x, p2.x + h2, p2.y), tol / 2);
      for (int j = 0; j < 3; ++j) c[j] += r.value[j];
      out.max_error = std::max(out.max_error, r.error);
      e2 = {p2.x + h2, r.y_end};
    }
    out.points.push_back(c);
    out.ends.push_back({e1, e2});
  }
  return out;
}

// ---- characteristic search ----

struct CharacteristicScore {
  ThetaCharacteristic chi;
  double m;        // max |theta[eps, delta](z_i, B)|
  double m_shift;  // max |theta(z_i + kappa, B)|, same zeros, different scale
};

struct CharacteristicSearch {
  ThetaCharacteristic best;
  std::vector<CharacteristicScore> table;  // 64 rows, lexicographic
};

// z_i = pi_alpha^-1 x_i; argmin over the 64 characteristics of m, first one wins ties.
inline CharacteristicSearch find_characteristic(const std::vector<CVec3>& samples, const Mat3<cd>& pi_alpha,
                                                const RiemannMatrix& B, double tol) {
  if (samples.empty()) throw InputError("no samples");
  Mat3<cd> inv = inv3(pi_alpha);
  std::vector<Vec3<cd>> z;
  for (auto& s : samples) z.push_back(mul3(inv, Vec3<cd>{s[0], s[1], s[2]}));
  CharacteristicSearch out;
  double best = 1e300;
  for (auto& chi : ThetaCharacteristic::all()) {
    auto k = half_period(B, chi);
    std::vector<Vec3<cd>> pts;
    for (auto& v : z) pts.push_back({v[0] + k[0], v[1] + k[1], v[2] + k[2]});
    CharacteristicScore row{chi, 0, 0};
    for (auto& v : theta_batch(z, B, chi, tol)) row.m = std::max(row.m, std::abs(v));
    for (auto& v : theta_batch(pts, B, ThetaCharacteristic{}, tol)) row.m_shift = std::max(row.m_shift, std::abs(v));
    out.table.push_back(row);
    if (row.m < best) {
      best = row.m;
      out.best = chi;
    }
  }
  return out;
}

// ---- Abel residual along a moving line y = m(tau) x + c(tau) ----

struct Line {
  cd m, c;
};

// Sum over the intersection points of the integrals of omega as the line moves
// from l0 to l1. Each point is tracked and integrated separately.
inline CVec3 abel_residual(const NumCurve& q, const Line& l0, const Line& l1, double tol,
                           std::vector<CVec3>* parts = nullptr) {
  auto line_at = [&](double t) { return Line{l0.m + (l1.m - l0.m) * t, l0.c + (l1.c - l0.c) * t}; };
  // restriction to the line, as a polynomial in x
  auto restricted = [&](double t) {
    Line l = line_at(t);
    std::vector<std::complex<long double>> c(5, 0);
    for (auto& term : q.terms()) {
      // x^i (m x + c)^j
      std::vector<cd> pw{cd(1)};
      for (int k = 0; k < term.j; ++k) {
        std::vector<cd> nx(pw.size() + 1, 0);
        for (std::size_t a = 0; a < pw.size(); ++a) {
          nx[a] += pw[a] * l.c;
          nx[a + 1] += pw[a] * l.m;
        }
        pw = nx;
      }
      for (std::size_t a = 0; a < pw.size(); ++a) {
        std::size_t deg = a + term.i;
        if (deg >= c.size()) c.resize(deg + 1, 0);
        cd v = term.c * pw[a];
        c[deg] += std::complex<long double>(v.real(), v.imag());
      }
    }
    return c;
  };
  auto roots_at = [&](double t) {
    auto r = aberth_roots(restricted(t));
    std::vector<cd> out;
    for (auto& z : r) out.push_back(cd((double)z.real(), (double)z.imag()));
    return out;
  };
  auto start = roots_at(0.0);
  if (parts) parts->clear();
  CVec3 total{};
  // follow each intersection by its x-coordinate, a root of the restriction
  for (cd x0 : start) {
    std::vector<TracePoint> tr{{0.0, x0, x0}};
    double h = 1.0 / 64;
    while (tr.back().s < 1) {
      double step = std::min(h, 1 - tr.back().s), sn = tr.back().s + step;
      cd pred = tr.back().y;
      if (tr.size() > 1) pred += (tr.back().y - tr[tr.size() - 2].y) * (step / (tr.back().s - tr[tr.size() - 2].s));
      auto r = roots_at(sn);
      std::sort(r.begin(), r.end(), [&](cd a, cd b) { return std::abs(a - pred) < std::abs(b - pred); });
      double miss = std::abs(r[0] - pred), sep = r.size() > 1 ? std::abs(r[1] - r[0]) : 1e300;
      if (miss <= 0.25 * sep) {
        tr.push_back({sn, r[0], r[0]});
        h = std::min(1.0 / 32, 2 * step);
      } else {
        h = step / 2;
        if (h < 1e-13) throw BranchCollision("intersection points collide along the moving line");
      }
    }
    auto f = [&](double t) {
      auto r = roots_at(t);
      cd guess = tr.back().y;
      auto it = std::lower_bound(tr.begin(), tr.end(), t, [](const TracePoint& p, double v) { return p.s < v; });
      if (it != tr.begin() && it != tr.end()) {
        auto a = it - 1;
        guess = a->y + (it->y - a->y) * ((t - a->s) / (it->s - a->s));
      } else if (it == tr.begin()) {
        guess = tr.front().y;
      }
      cd x = *std::min_element(r.begin(), r.end(), [&](cd a, cd b) { return std::abs(a - guess) < std::abs(b - guess); });
      Line l = line_at(t);
      cd y = l.m * x + l.c;
      cd dm = l1.m - l0.m, dc = l1.c - l0.c;
      // q(x, m x + c) = 0  =>  dx/dt = -q_y (m' x + c') / (q_x + m q_y)
      cd qx = q.dx(x, y), qy = q.dy(x, y);
      cd dxdt = -qy * (dm * x + dc) / (qx + l.m * qy);
      cd w = dxdt / qy;
      return CVec3{x * w, y * w, w};
    };
    auto r = integrate_gk(f, 0.0, 1.0, tol / 8);
    for (int j = 0; j < 3; ++j) total[j] += r.value[j];
    if (parts) parts->push_back(r.value);
  }
  return total;
}

}  // namespace thetasurf

#endif
