#ifndef THETASURF_TROPICAL_HPP
#define THETASURF_TROPICAL_HPP

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "theta.hpp"

namespace thetasurf {

using IVec3 = std::array<long, 3>;
using IMat3 = std::array<std::array<long, 3>, 3>;
using QVec3 = std::array<mpq_class, 3>;

// Dual graph of a rational nodal quartic. Edge k runs from edges[k].first to
// edges[k].second; omega rows are cycles in Z^E.
struct DualGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<long>> omega;  // 3 x |E|

  void validate() const {
    if (omega.size() != 3) throw InputError("cycle matrix must have 3 rows");
    int nv = (int)vertices.size();
    for (auto& [a, b] : edges)
      if (a < 0 || b < 0 || a >= nv || b >= nv) throw InputError("edge endpoint out of range");
    for (auto& row : omega) {
      if (row.size() != edges.size()) throw InputError("cycle row length differs from edge count");
      std::vector<long> bd(nv, 0);
      for (std::size_t k = 0; k < edges.size(); ++k) {
        bd[edges[k].first] -= row[k];
        bd[edges[k].second] += row[k];
      }
      for (long v : bd)
        if (v != 0) throw InputError("cycle row has nonzero boundary");
    }
  }
};

inline long det3i(const IMat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline IMat3 riemann_matrix_from_graph(const DualGraph& g) {
  g.validate();
  IMat3 b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < g.edges.size(); ++k) b[i][j] += g.omega[i][k] * g.omega[j][k];
  // Gram determinant vanishes exactly when the rows are dependent
  if (det3i(b) == 0) throw RankDeficient("cycle rows are linearly dependent");
  return b;
}

inline void check_positive_definite(const IMat3& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (b[i][j] != b[j][i]) throw InputError("tropical Riemann matrix is not symmetric");
  long m1 = b[0][0], m2 = b[0][0] * b[1][1] - b[0][1] * b[1][0];
  if (m1 <= 0 || m2 <= 0 || det3i(b) <= 0) throw NonPositiveDefinite("leading minors must be positive");
}

struct GraphPreset {
  std::string name;
  DualGraph graph;
};

// Cycle matrices as printed; vertices are the curve components.
inline const std::vector<GraphPreset>& graph_presets() {
  static const std::vector<GraphPreset> presets = {
      {"rational quartic", {{"Q"}, {{0, 0}, {0, 0}, {0, 0}}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}},
      {"cubic+line",
       {{"C", "L"}, {{0, 1}, {0, 1}, {0, 1}, {0, 0}}, {{1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 0, 1}}}},
      {"2 conics", {{"C1", "C2"}, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}, {{1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, -1}}}},
      {"conic+2lines",
       {{"C", "L1", "L2"},
        {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}},
        {{1, 0, 1, 0, 0}, {-1, 1, 0, -1, 0}, {0, -1, 0, 0, -1}}}},
      {"4 lines",
       {{"L1", "L2", "L3", "L4"},
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
        {{1, -1, 0, 1, 0, 0}, {-1, 0, 1, 0, -1, 0}, {0, 1, -1, 0, 0, 1}}}},
  };
  return presets;
}

inline const DualGraph& find_graph_preset(const std::string& name) {
  for (auto& p : graph_presets())
    if (p.name == name) return p.graph;
  // CLI spelling
  static const std::map<std::string, std::string> alias = {{"rational-quartic", "rational quartic"},
                                                            {"cubic-line", "cubic+line"},
                                                            {"2-conics", "2 conics"},
                                                            {"conic-2lines", "conic+2lines"},
                                                            {"four-lines", "4 lines"},
                                                            {"4-lines", "4 lines"}};
  auto it = alias.find(name);
  if (it != alias.end()) return find_graph_preset(it->second);
  throw InputError("unknown graph type '" + name + "'");
}

inline mpq_class quad_form(const IMat3& b, const QVec3& v) {
  mpq_class s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += mpq_class(b[i][j]) * v[i] * v[j];
  return s;
}

struct DelaunayData {
  QVec3 a;
  std::vector<IVec3> dset;  // lexicographic
  bool vertex = false;      // affine span is 3-dimensional
};

inline long affine_rank(const std::vector<IVec3>& pts) {
  if (pts.empty()) return -1;
  std::vector<std::array<mpq_class, 3>> rows;
  for (std::size_t k = 1; k < pts.size(); ++k)
    rows.push_back({mpq_class(pts[k][0] - pts[0][0]), mpq_class(pts[k][1] - pts[0][1]), mpq_class(pts[k][2] - pts[0][2])});
  long r = 0;
  for (int c = 0; c < 3 && r < (long)rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == (std::size_t)r || rows[i][c] == 0) continue;
      mpq_class f = rows[i][c] / rows[r][c];
      for (int j = 0; j < 3; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

// All n in Z^3 with (a-n)^T B (a-n) = a^T B a. The box comes from
// |v_i|^2 <= r (B^-1)_ii for v^T B v <= r, so nothing is missed.
inline DelaunayData delaunay_set(const IMat3& b, const QVec3& a) {
  check_positive_definite(b);
  mpq_class r = quad_form(b, a);
  long d = det3i(b);
  std::array<long, 3> box;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    long cof = b[j][j] * b[k][k] - b[j][k] * b[k][j];
    mpq_class bound = r * mpq_class(cof, d);  // |a_i - n_i|^2 <= bound
    mpz_class fl = bound.get_num() / bound.get_den();
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), fl.get_mpz_t());
    box[i] = s.get_si() + 2;  // around floor(a_i)
  }
  DelaunayData out;
  out.a = a;
  std::array<long, 3> base;
  for (int i = 0; i < 3; ++i) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), a[i].get_num_mpz_t(), a[i].get_den_mpz_t());
    base[i] = f.get_si();
  }
  for (long i = base[0] - box[0]; i <= base[0] + box[0]; ++i)
    for (long j = base[1] - box[1]; j <= base[1] + box[1]; ++j)
      for (long k = base[2] - box[2]; k <= base[2] + box[2]; ++k) {
        QVec3 v{a[0] - i, a[1] - j, a[2] - k};
        int c = cmp(quad_form(b, v), r);
        if (c < 0)
          throw NotInVoronoiCell("lattice point (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                 std::to_string(k) + ") is closer than the origin");
        if (c == 0) out.dset.push_back({i, j, k});
      }
  out.vertex = affine_rank(out.dset) == 3;
  return out;
}

// Exact volume of the convex hull of points in convex position (a Delaunay
// polytope: all points lie on one ellipsoid).
inline mpq_class hull_volume(const std::vector<IVec3>& pts) {
  int n = (int)pts.size();
  if (affine_rank(pts) < 3) return 0;
  using V = std::array<mpq_class, 3>;
  auto sub = [](const V& x, const V& y) { return V{x[0] - y[0], x[1] - y[1], x[2] - y[2]}; };
  auto cross = [](const V& x, const V& y) {
    return V{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
  };
  auto dot = [](const V& x, const V& y) { return mpq_class(x[0] * y[0] + x[1] * y[1] + x[2] * y[2]); };
  std::vector<V> p;
  for (auto& q : pts) p.push_back({mpq_class(q[0]), mpq_class(q[1]), mpq_class(q[2])});
  V c{0, 0, 0};
  for (auto& q : p)
    for (int i = 0; i < 3; ++i) c[i] += q[i] / n;
  std::vector<std::vector<int>> facets;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        V nrm = cross(sub(p[j], p[i]), sub(p[k], p[i]));
        if (nrm[0] == 0 && nrm[1] == 0 && nrm[2] == 0) continue;
        int pos = 0, neg = 0;
        std::vector<int> on;
        for (int m = 0; m < n; ++m) {
          int s = sgn(dot(nrm, sub(p[m], p[i])));
          if (s > 0) ++pos;
          else if (s < 0) ++neg;
          else on.push_back(m);
        }
        if (pos && neg) continue;
        if (std::find(facets.begin(), facets.end(), on) == facets.end()) facets.push_back(on);
      }
  mpq_class vol = 0;
  for (auto& f : facets) {
    // order the facet points cyclically around their centroid
    V g{0, 0, 0};
    for (int m : f)
      for (int i = 0; i < 3; ++i) g[i] += p[m][i] / (long)f.size();
    V nrm = cross(sub(p[f[1]], p[f[0]]), sub(p[f[2]], p[f[0]]));
    V ref = sub(p[f[0]], g);
    auto half = [&](const V& w) {
      int y = sgn(dot(nrm, cross(ref, w)));
      int x = sgn(dot(ref, w));
      return y < 0 || (y == 0 && x < 0);
    };
    std::vector<int> ord = f;
    std::sort(ord.begin(), ord.end(), [&](int u, int w) {
      V a1 = sub(p[u], g), a2 = sub(p[w], g);
      bool h1 = half(a1), h2 = half(a2);
      if (h1 != h2) return !h1;
      return sgn(dot(nrm, cross(a1, a2))) > 0;
    });
    for (std::size_t k = 1; k + 1 < ord.size(); ++k) {
      V e1 = sub(p[ord[0]], c), e2 = sub(p[ord[k]], c), e3 = sub(p[ord[k + 1]], c);
      vol += abs(dot(e1, cross(e2, e3))) / 6;
    }
  }
  return vol;
}

struct DegenerateTerm {
  IVec3 n;
  std::complex<double> A;
};

struct DegenerateTheta {
  std::vector<DegenerateTerm> terms;
  Mat3<std::complex<double>> B0{};
};

inline void check_symmetric(const Mat3<std::complex<double>>& m, const char* what) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (m[i][j] != m[j][i]) throw InputError(std::string(what) + " is not symmetric");
}

// A_n = e(-1/2 n^T B0 n) on the Delaunay set.
inline DegenerateTheta degenerate_theta(const IMat3& b, const QVec3& a, const Mat3<std::complex<double>>& b0) {
  check_symmetric(b0, "B0");
  auto del = delaunay_set(b, a);
  DegenerateTheta dt;
  dt.B0 = b0;
  for (auto& n : del.dset) {
    std::complex<double> q = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) q += double(n[i] * n[j]) * b0[i][j];
    dt.terms.push_back({n, e_of(std::complex<double>(-0.5 * q))});
  }
  return dt;
}

// sum_n A_n e(i n^T x)
template <class Real = double>
std::complex<Real> eval_degenerate(const DegenerateTheta& dt, const Vec3<std::complex<Real>>& x) {
  std::complex<Real> s(0, 0);
  for (auto& t : dt.terms) {
    std::complex<Real> nx(0, 0);
    for (int i = 0; i < 3; ++i) nx += Real(t.n[i]) * x[i];
    std::complex<Real> A(Real(t.A.real()), Real(t.A.imag()));
    s += A * e_of(std::complex<Real>(-nx.imag(), nx.real()));
  }
  return s;
}

// |theta(x - i t B a, t B + B0) - degenerate sum|, with the theta sum done in
// extended precision so the residual is not swamped by rounding.
inline double degeneration_residual(const IMat3& b, const QVec3& a, const Mat3<std::complex<double>>& b0,
                                    const Vec3<std::complex<double>>& x, double t, double tol) {
  if (!(t > 0)) throw InputError("t must be positive");
  auto dt = degenerate_theta(b, a, b0);
  using C = std::complex<Extended>;
  Mat3<C> bt;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      bt[i][j] = C(Extended(t * b[i][j]) + Extended(b0[i][j].real()), Extended(b0[i][j].imag()));
  RiemannMatrixT<Extended> B(bt);
  Vec3<C> xs;
  for (int i = 0; i < 3; ++i) {
    Extended ba = 0;
    for (int j = 0; j < 3; ++j) ba += Extended(b[i][j]) * Extended(a[j].get_d());
    xs[i] = C(Extended(x[i].real()), Extended(x[i].imag()) - Extended(t) * ba);
  }
  C th = theta_eval(xs, B, tol);
  Vec3<C> xe;
  for (int i = 0; i < 3; ++i) xe[i] = C(Extended(x[i].real()), Extended(x[i].imag()));
  // A_n recomputed in extended precision; the double values would set the floor
  C d(0, 0);
  const Extended pi = pi_v<Extended>();
  for (auto& term : dt.terms) {
    C q(0, 0), nx(0, 0);
    for (int i = 0; i < 3; ++i) {
      nx += Extended(term.n[i]) * xe[i];
      for (int j = 0; j < 3; ++j)
        q += Extended(term.n[i] * term.n[j]) * C(Extended(b0[i][j].real()), Extended(b0[i][j].imag()));
    }
    d += cexp(C(-pi * q.real() - 2 * pi * nx.imag(), -pi * q.imag() + 2 * pi * nx.real()));
  }
  C diff = th - d;
  using boost::multiprecision::sqrt;
  return static_cast<double>(sqrt(diff.real() * diff.real() + diff.imag() * diff.imag()));
}

struct DelaunayRow {
  std::string graph;
  IMat3 B;
  QVec3 a;
  std::vector<IVec3> dset;
  std::string polytope;
};

// Rows of the degeneration table: Riemann matrix, Voronoi vertex, support size.
inline std::vector<DelaunayRow> delaunay_table() {
  auto q = [](long p, long r) { return mpq_class(p, r); };
  IMat3 four{{{3, -1, -1}, {-1, 3, -1}, {-1, -1, 3}}};
  IMat3 c2l{{{2, -1, 0}, {-1, 3, -1}, {0, -1, 2}}};
  IMat3 cc{{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}};
  IMat3 cl{{{2, -1, 0}, {-1, 2, 0}, {0, 0, 1}}};
  IMat3 id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  std::vector<IVec3> tet{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}};
  return {
      {"4 lines", four, {q(3, 4), q(1, 2), q(1, 4)}, tet, "tetrahedron"},
      {"conic+2lines", c2l, {q(3, 4), q(1, 2), q(1, 4)}, tet, "tetrahedron"},
      {"conic+2lines", c2l, {q(5, 8), q(1, 4), q(5, 8)}, {{0, 0, 0}, {0, 0, 1}, {1, 0, 0}, {1, 0, 1}, {1, 1, 1}}, "pyramid"},
      {"2 conics", cc, {q(3, 4), q(1, 2), q(1, 4)}, tet, "tetrahedron"},
      {"2 conics", cc, {q(1, 2), q(1, 1), q(1, 2)},
       {{0, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 1, 0}, {1, 1, 1}, {1, 2, 1}}, "octahedron"},
      {"cubic+line", cl, {q(2, 3), q(1, 3), q(1, 2)},
       {{0, 0, 0}, {0, 0, 1}, {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}}, "prism"},
      {"rational quartic", id, {q(1, 2), q(1, 2), q(1, 2)},
       {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}}, "cube"},
  };
}

}  // namespace thetasurf

#endif
