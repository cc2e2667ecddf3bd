#ifndef THETASURF_IO_MESH_HPP
#define THETASURF_IO_MESH_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "../errors.hpp"
#include "../linalg3.hpp"

namespace thetasurf {

struct ScalarGrid {
  std::array<double, 3> lo{}, hi{};
  std::array<int, 3> n{};  // samples per axis, >= 2
  std::vector<double> values;  // x fastest, then y, then z

  double step(int k) const { return (hi[k] - lo[k]) / (n[k] - 1); }
  Vec3<double> point(int i, int j, int k) const {
    return {lo[0] + i * step(0), lo[1] + j * step(1), lo[2] + k * step(2)};
  }
  std::size_t index(int i, int j, int k) const { return ((std::size_t)k * n[1] + j) * n[0] + i; }
  double at(int i, int j, int k) const { return values[index(i, j, k)]; }
  // trilinear interpolant
  double interpolate(const Vec3<double>& p) const;
};

constexpr std::size_t kGridCap = std::size_t(1) << 26;

inline ScalarGrid grid_sample(const std::function<double(const Vec3<double>&)>& F, std::array<double, 3> lo,
                              std::array<double, 3> hi, std::array<int, 3> n, std::size_t cap = kGridCap) {
  for (int k = 0; k < 3; ++k) {
    if (n[k] < 2) throw InputError("resolution must be at least 2 per axis");
    if (!(hi[k] > lo[k])) throw InputError("bounds must satisfy lo < hi");
  }
  double total = double(n[0]) * n[1] * n[2];
  if (total > double(cap)) throw MemoryCap("grid of " + std::to_string((long long)total) + " values exceeds cap");
  ScalarGrid g{lo, hi, n, {}};
  g.values.resize((std::size_t)total);
  // z-slices are split across threads; each writes only its own slots
  std::atomic<int> next{0};
  std::atomic<bool> bad{false};
  auto work = [&] {
    for (int k; (k = next++) < n[2] && !bad;)
      for (int j = 0; j < n[1]; ++j)
        for (int i = 0; i < n[0]; ++i) {
          double v = F(g.point(i, j, k));
          if (!std::isfinite(v)) bad = true;
          g.values[g.index(i, j, k)] = v;
        }
  };
  unsigned nt = std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), (unsigned)n[2]);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nt; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (bad) throw NumericalError("non-finite value at grid point");
  return g;
}

inline double ScalarGrid::interpolate(const Vec3<double>& p) const {
  int c[3];
  double t[3];
  for (int k = 0; k < 3; ++k) {
    double u = (p[k] - lo[k]) / step(k);
    c[k] = std::min(std::max((int)std::floor(u), 0), n[k] - 2);
    t[k] = u - c[k];
  }
  double s = 0;
  for (int dz = 0; dz < 2; ++dz)
    for (int dy = 0; dy < 2; ++dy)
      for (int dx = 0; dx < 2; ++dx) {
        double w = (dx ? t[0] : 1 - t[0]) * (dy ? t[1] : 1 - t[1]) * (dz ? t[2] : 1 - t[2]);
        s += w * at(c[0] + dx, c[1] + dy, c[2] + dz);
      }
  return s;
}

struct TriangleMesh {
  std::vector<Vec3<double>> vertices;
  std::vector<std::array<int, 3>> triangles;
};

namespace detail {

inline Vec3<double> sub(const Vec3<double>& a, const Vec3<double>& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3<double> crossv(const Vec3<double>& a, const Vec3<double>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double dotv(const Vec3<double>& a, const Vec3<double>& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline double tri_area(const TriangleMesh& m, const std::array<int, 3>& t) {
  auto c = crossv(sub(m.vertices[t[1]], m.vertices[t[0]]), sub(m.vertices[t[2]], m.vertices[t[0]]));
  return 0.5 * std::sqrt(dotv(c, c));
}

// cube corners, bit 0 = x, bit 1 = y, bit 2 = z; six tetrahedra around the 0-7 diagonal
constexpr int kTets[6][4] = {{0, 1, 3, 7}, {0, 3, 2, 7}, {0, 2, 6, 7}, {0, 6, 4, 7}, {0, 4, 5, 7}, {0, 5, 1, 7}};

}  // namespace detail

// Isosurface by marching tetrahedra (each cell split into six tetrahedra
// along its main diagonal). Vertices sit on grid edges and are shared between
// neighbouring cells; value == level counts as positive.
inline TriangleMesh extract_isosurface(const ScalarGrid& g, double level = 0) {
  using namespace detail;
  TriangleMesh m;
  std::map<std::pair<std::size_t, std::size_t>, int> edge_vertex;
  auto vertex_on = [&](std::size_t a, std::size_t b, const Vec3<double>& pa, const Vec3<double>& pb) {
    if (a > b) return -1;  // caller orders
    auto key = std::make_pair(a, b);
    auto it = edge_vertex.find(key);
    if (it != edge_vertex.end()) return it->second;
    double fa = g.values[a] - level, fb = g.values[b] - level;
    if (fa == 0 || fb == 0) {
      // the surface passes through a grid node; share one vertex per node
      std::size_t n = fa == 0 ? a : b;
      auto nit = edge_vertex.find({n, n});
      if (nit == edge_vertex.end()) {
        m.vertices.push_back(fa == 0 ? pa : pb);
        nit = edge_vertex.emplace(std::make_pair(n, n), (int)m.vertices.size() - 1).first;
      }
      return edge_vertex[key] = nit->second;
    }
    auto at_t = [&](double t) {
      return Vec3<double>{pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1]), pa[2] + t * (pb[2] - pa[2])};
    };
    double t = fa / (fa - fb);
    int axes = (pa[0] != pb[0]) + (pa[1] != pb[1]) + (pa[2] != pb[2]);
    if (axes > 1) {
      // diagonal: the trilinear interpolant is cubic along it, so solve (Illinois)
      double t0 = 0, t1 = 1, f0 = fa, f1 = fb;
      int side = 0;
      for (int it = 0; it < 200; ++it) {
        t = (t0 * f1 - t1 * f0) / (f1 - f0);
        double ft = g.interpolate(at_t(t)) - level;
        if (std::abs(ft) <= 1e-14 * std::max(1.0, std::abs(level)) || t1 - t0 < 1e-15) break;
        if ((ft >= 0) == (f0 >= 0)) {
          t0 = t, f0 = ft;
          if (side == -1) f1 /= 2;
          side = -1;
        } else {
          t1 = t, f1 = ft;
          if (side == 1) f0 /= 2;
          side = 1;
        }
      }
    }
    Vec3<double> p = at_t(t);
    m.vertices.push_back(p);
    edge_vertex[key] = (int)m.vertices.size() - 1;
    return (int)m.vertices.size() - 1;
  };
  auto edge = [&](std::size_t a, std::size_t b, const Vec3<double>& pa, const Vec3<double>& pb) {
    return a < b ? vertex_on(a, b, pa, pb) : vertex_on(b, a, pb, pa);
  };
  auto emit = [&](int v0, int v1, int v2, const Vec3<double>& toward_pos) {
    std::array<int, 3> t{v0, v1, v2};
    if (v0 == v1 || v1 == v2 || v0 == v2) return;
    auto nrm = crossv(sub(m.vertices[v1], m.vertices[v0]), sub(m.vertices[v2], m.vertices[v0]));
    if (dotv(nrm, toward_pos) < 0) std::swap(t[1], t[2]);
    if (tri_area(m, t) <= 1e-12) return;
    m.triangles.push_back(t);
  };
  bool any_pos = false, any_neg = false;
  for (double v : g.values) (v >= level ? any_pos : any_neg) = true;
  if (!(any_pos && any_neg)) throw EmptySurface("no sign change in the grid");

  for (int k = 0; k + 1 < g.n[2]; ++k)
    for (int j = 0; j + 1 < g.n[1]; ++j)
      for (int i = 0; i + 1 < g.n[0]; ++i) {
        std::size_t idx[8];
        Vec3<double> pos[8];
        for (int c = 0; c < 8; ++c) {
          int di = c & 1, dj = (c >> 1) & 1, dk = (c >> 2) & 1;
          idx[c] = g.index(i + di, j + dj, k + dk);
          pos[c] = g.point(i + di, j + dj, k + dk);
        }
        for (auto& tet : kTets) {
          std::vector<int> in, out;
          for (int c : tet) (g.values[idx[c]] >= level ? in : out).push_back(c);
          if (in.empty() || out.empty()) continue;
          auto E = [&](int a, int b) { return edge(idx[a], idx[b], pos[a], pos[b]); };
          if (in.size() == 1 || out.size() == 1) {
            bool single_in = in.size() == 1;
            int apex = single_in ? in[0] : out[0];
            auto& rest = single_in ? out : in;
            auto dir = sub(pos[single_in ? apex : rest[0]], pos[single_in ? rest[0] : apex]);
            emit(E(apex, rest[0]), E(apex, rest[1]), E(apex, rest[2]), dir);
          } else {
            int a = E(in[0], out[0]), b = E(in[0], out[1]), c = E(in[1], out[1]), d = E(in[1], out[0]);
            auto dir = sub(pos[in[0]], pos[out[0]]);
            emit(a, b, c, dir);
            emit(a, c, d, dir);
          }
        }
      }
  if (m.triangles.empty()) throw EmptySurface("isosurface has no triangles");
  return m;
}

// ---- OBJ ----

inline std::string fmt_double(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

inline void write_obj(std::ostream& os, const TriangleMesh& m) {
  os << "# thetasurf mesh\n";
  for (auto& v : m.vertices) os << "v " << fmt_double(v[0]) << ' ' << fmt_double(v[1]) << ' ' << fmt_double(v[2]) << '\n';
  for (auto& t : m.triangles) os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

struct ObjLint {
  bool ok = true;
  int vertices = 0, faces = 0;
  std::vector<std::string> problems;
};

// Structural check: numeric vertices, triangular faces, indices in range, no degenerate faces.
inline ObjLint lint_obj(std::istream& is) {
  ObjLint r;
  std::vector<Vec3<double>> v;
  std::vector<std::array<long, 3>> faces;
  std::string line;
  int lineno = 0;
  auto bad = [&](const std::string& msg) {
    r.ok = false;
    r.problems.push_back("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      Vec3<double> p;
      if (!(ls >> p[0] >> p[1] >> p[2])) bad("bad vertex");
      v.push_back(p);
    } else if (tag == "f") {
      std::vector<long> idx;
      std::string tok;
      while (ls >> tok) idx.push_back(std::stol(tok.substr(0, tok.find('/'))));
      if (idx.size() != 3) {
        bad("face is not a triangle");
        continue;
      }
      faces.push_back({idx[0], idx[1], idx[2]});
    } else {
      bad("unknown record '" + tag + "'");
    }
  }
  r.vertices = (int)v.size();
  r.faces = (int)faces.size();
  for (auto& f : faces) {
    for (long i : f)
      if (i < 1 || i > (long)v.size()) {
        r.ok = false;
        r.problems.push_back("face index " + std::to_string(i) + " out of range");
      }
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
      r.ok = false;
      r.problems.push_back("repeated index in face");
    }
  }
  return r;
}

}  // namespace thetasurf

#endif
