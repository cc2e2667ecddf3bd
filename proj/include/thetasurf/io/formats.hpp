#ifndef THETASURF_IO_FORMATS_HPP
#define THETASURF_IO_FORMATS_HPP

#include <charconv>
#include <complex>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../errors.hpp"
#include "../exact/parse.hpp"
#include "../numeric/periods.hpp"
#include "../symbolic/implicit.hpp"
#include "../tetra.hpp"
#include "../theta.hpp"
#include "../tropical.hpp"
#include "mesh.hpp"

namespace thetasurf::io {

using json = nlohmann::ordered_json;

// ---- JSON: complex numbers are {"re": .., "im": ..} ----

inline json to_json(cd z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline cd complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0};
  if (!j.is_object() || !j.contains("re") || !j.contains("im")) throw InputError("expected {\"re\", \"im\"}: " + j.dump());
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

template <class F>
auto need(const json& j, const char* key, F&& f) {
  if (!j.contains(key)) throw InputError(std::string("missing key '") + key + "'");
  try {
    return f(j.at(key));
  } catch (const json::exception& e) {
    throw InputError(std::string("bad value for '") + key + "': " + e.what());
  }
}

inline json to_json(const Mat3<cd>& m) {
  json a = json::array();
  for (auto& r : m) {
    json row = json::array();
    for (auto v : r) row.push_back(to_json(v));
    a.push_back(row);
  }
  return a;
}

inline Mat3<cd> cmat_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw InputError("expected a 3x3 matrix");
  Mat3<cd> m;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_array() || j[i].size() != 3) throw InputError("expected a 3x3 matrix");
    for (int k = 0; k < 3; ++k) m[i][k] = complex_from(j[i][k]);
  }
  return m;
}

inline json to_json(const CVec3& v) { return {to_json(v[0]), to_json(v[1]), to_json(v[2])}; }
inline CVec3 cvec_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw InputError("expected a complex 3-vector");
  return {complex_from(j[0]), complex_from(j[1]), complex_from(j[2])};
}

// Riemann matrix
inline json riemann_to_json(const RiemannMatrix& B) { return {{"B", to_json(B.entries())}}; }
inline RiemannMatrix riemann_from_json(const json& j) {
  return RiemannMatrix(need(j, "B", [](const json& v) { return cmat_from(v); }));
}

inline json to_json(const ThetaCharacteristic& c) { return {{"eps", c.eps}, {"delta", c.delta}}; }
inline ThetaCharacteristic characteristic_from(const json& j) {
  return ThetaCharacteristic(need(j, "eps", [](const json& v) { return v.get<std::array<int, 3>>(); }),
                             need(j, "delta", [](const json& v) { return v.get<std::array<int, 3>>(); }));
}

// Degenerate theta
inline json to_json(const DegenerateTheta& dt) {
  json terms = json::array();
  for (auto& t : dt.terms) terms.push_back({{"n", t.n}, {"A", to_json(t.A)}});
  return {{"B0", to_json(dt.B0)}, {"terms", terms}};
}
inline DegenerateTheta degenerate_from_json(const json& j) {
  DegenerateTheta dt;
  dt.B0 = need(j, "B0", [](const json& v) { return cmat_from(v); });
  for (auto& t : need(j, "terms", [](const json& v) { return v; }))
    dt.terms.push_back({need(t, "n", [](const json& v) { return v.get<IVec3>(); }),
                        need(t, "A", [](const json& v) { return complex_from(v); })});
  return dt;
}

// Paths
inline json to_json(const PathSpec& p) {
  json segs = json::array();
  for (auto& s : p.segments) {
    json o{{"from", to_json(s.x_from)}, {"to", to_json(s.x_to)}};
    if (s.arc_center) o["center"] = to_json(*s.arc_center);
    if (s.sweep != 0) o["sweep"] = s.sweep;
    if (s.y_start) o["y_start"] = to_json(*s.y_start);
    if (s.ramified_from) o["ramified_from"] = true;
    if (s.ramified_to) o["ramified_to"] = true;
    if (s.y_mid) o["y_mid"] = to_json(*s.y_mid);
    segs.push_back(o);
  }
  return {{"segments", segs}};
}
inline PathSpec path_from_json(const json& j) {
  PathSpec p;
  for (auto& o : need(j, "segments", [](const json& v) { return v; })) {
    PathSegment s;
    s.x_from = need(o, "from", complex_from);
    s.x_to = need(o, "to", complex_from);
    if (o.contains("center")) s.arc_center = complex_from(o["center"]);
    s.sweep = o.value("sweep", 0.0);
    if (o.contains("y_start")) s.y_start = complex_from(o["y_start"]);
    s.ramified_from = o.value("ramified_from", false);
    s.ramified_to = o.value("ramified_to", false);
    if (o.contains("y_mid")) s.y_mid = complex_from(o["y_mid"]);
    p.segments.push_back(s);
  }
  if (p.segments.empty()) throw InputError("path has no segments");
  return p;
}

inline json to_json(const PeriodMatrix& pm) {
  return {{"pi_alpha", to_json(pm.pi_alpha)}, {"pi_beta", to_json(pm.pi_beta)}, {"error", pm.error},
          {"cond_alpha", pm.cond_alpha},      {"asymmetry", pm.asymmetry}};
}
inline PeriodMatrix period_matrix_from_json(const json& j) {
  PeriodMatrix pm;
  pm.pi_alpha = need(j, "pi_alpha", cmat_from);
  pm.pi_beta = need(j, "pi_beta", cmat_from);
  pm.error = j.value("error", 0.0);
  pm.cond_alpha = j.value("cond_alpha", 0.0);
  pm.asymmetry = j.value("asymmetry", 0.0);
  return pm;
}

inline json to_json(const CharacteristicSearch& cs) {
  json t = json::array();
  for (auto& r : cs.table) {
    json o = to_json(r.chi);
    o["m"] = r.m;
    o["m_shift"] = r.m_shift;
    t.push_back(o);
  }
  return {{"best", to_json(cs.best)}, {"table", t}};
}
inline CharacteristicSearch characteristic_search_from_json(const json& j) {
  CharacteristicSearch cs;
  cs.best = need(j, "best", characteristic_from);
  for (auto& o : need(j, "table", [](const json& v) { return v; }))
    cs.table.push_back({characteristic_from(o), need(o, "m", [](const json& v) { return v.get<double>(); }),
                        o.value("m_shift", 0.0)});
  return cs;
}

// Exact data: numbers as strings so nothing is rounded
inline QNum qnum_from(const json& j) {
  if (j.is_number_integer()) return QNum(j.get<long>());
  if (!j.is_string()) throw InputError("expected an exact number as a string: " + j.dump());
  return parse_qnum(j.get<std::string>());
}

inline json to_json(const TetraPlane& P) {
  return {{"alpha", P.alpha.str()}, {"beta", P.beta.str()}, {"gamma", P.gamma.str()}, {"delta", P.delta.str()}};
}
inline TetraPlane plane_from_json(const json& j) {
  return TetraPlane(need(j, "alpha", qnum_from), need(j, "beta", qnum_from), need(j, "gamma", qnum_from),
                    need(j, "delta", qnum_from));
}

inline json to_json(const LinePairParams& p) {
  return {{"a", p.a.str()}, {"b", p.b.str()}, {"c", p.c.str()}, {"d", p.d.str()}, {"e", p.e.str()}, {"f", p.f.str()}};
}
inline LinePairParams line_pair_from_json(const json& j) {
  return {need(j, "a", qnum_from), need(j, "b", qnum_from), need(j, "c", qnum_from),
          need(j, "d", qnum_from), need(j, "e", qnum_from), need(j, "f", qnum_from)};
}

// the family is written in the variable b
inline json to_json(const LineFamily& F) {
  return {{"a", F.a.str()},          {"f", F.f.str()},          {"b", F.b.str("b")},
          {"c", F.c.str("b")},       {"d", F.d.str("b")},       {"e", F.e.str("b")},
          {"excluded", F.excluded.str("b")}};
}
inline LineFamily family_from_json(const json& j) {
  auto rf = [](const json& v) { return parse_ratfn(v.get<std::string>(), "b"); };
  LineFamily F;
  F.a = need(j, "a", qnum_from);
  F.f = need(j, "f", qnum_from);
  F.b = need(j, "b", rf);
  F.c = need(j, "c", rf);
  F.d = need(j, "d", rf);
  F.e = need(j, "e", rf);
  RatFn ex = need(j, "excluded", rf);
  if (ex.den().degree() > 0) throw InputError("excluded must be a polynomial in b");
  F.excluded = ex.num();
  return F;
}

inline std::vector<std::string> equation_vars(const ImplicitEquation& e) {
  return e.exponential ? std::vector<std::string>{"u", "v", "w"} : std::vector<std::string>{"X", "Y", "Z"};
}
inline json to_json(const ImplicitEquation& e) {
  auto vars = equation_vars(e);
  return {{"psi", e.psi.str(vars)},
          {"vars", vars},
          {"exponents", {e.exps[0].str(), e.exps[1].str(), e.exps[2].str()}},
          {"exponential", e.exponential}};
}
inline ImplicitEquation equation_from_json(const json& j) {
  ImplicitEquation e;
  e.exponential = need(j, "exponential", [](const json& v) { return v.get<bool>(); });
  auto vars = equation_vars(e);
  e.psi = parse_mpoly(need(j, "psi", [](const json& v) { return v.get<std::string>(); }), vars);
  auto ex = need(j, "exponents", [](const json& v) { return v; });
  if (!ex.is_array() || ex.size() != 3) throw InputError("exponents must have three entries");
  for (int k = 0; k < 3; ++k) e.exps[k] = qnum_from(ex[k]);
  return e;
}

// Log parametrization: per coordinate an s part and a t part, each a list of
// coef * log(lead * (w - root)) plus a rational function of w
inline json to_json(const Antiderivative& a) {
  json logs = json::array();
  for (auto& l : a.logs) logs.push_back({{"coef", l.coef.str()}, {"root", l.root.str()}, {"lead", l.lead.str()}});
  return {{"logs", logs}, {"rational", a.rational.str("w")}};
}
inline Antiderivative antiderivative_from_json(const json& j) {
  Antiderivative a;
  for (auto& l : need(j, "logs", [](const json& v) { return v; }))
    a.logs.push_back({need(l, "coef", qnum_from), need(l, "root", qnum_from), need(l, "lead", qnum_from)});
  a.rational = parse_ratfn(need(j, "rational", [](const json& v) { return v.get<std::string>(); }), "w");
  return a;
}
inline json to_json(const LogParametrization& p) {
  json out = json::object();
  const char* n[3] = {"X", "Y", "Z"};
  for (int k = 0; k < 3; ++k) out[n[k]] = {{"s", to_json(p.coords[k].s_part)}, {"t", to_json(p.coords[k].t_part)}};
  return out;
}
inline LogParametrization parametrization_from_json(const json& j) {
  LogParametrization p;
  const char* n[3] = {"X", "Y", "Z"};
  for (int k = 0; k < 3; ++k) {
    auto c = need(j, n[k], [](const json& v) { return v; });
    p.coords[k].s_part = need(c, "s", antiderivative_from_json);
    p.coords[k].t_part = need(c, "t", antiderivative_from_json);
  }
  return p;
}

inline json to_json(const ScalarGrid& g) {
  return {{"lo", g.lo}, {"hi", g.hi}, {"n", g.n}, {"values", g.values}};
}
inline ScalarGrid grid_from_json(const json& j) {
  ScalarGrid g;
  g.lo = need(j, "lo", [](const json& v) { return v.get<std::array<double, 3>>(); });
  g.hi = need(j, "hi", [](const json& v) { return v.get<std::array<double, 3>>(); });
  g.n = need(j, "n", [](const json& v) { return v.get<std::array<int, 3>>(); });
  g.values = need(j, "values", [](const json& v) { return v.get<std::vector<double>>(); });
  for (int k = 0; k < 3; ++k)
    if (g.n[k] < 2 || !(g.hi[k] > g.lo[k])) throw InputError("bad grid bounds or resolution");
  if (g.values.size() != (std::size_t)g.n[0] * g.n[1] * g.n[2]) throw InputError("grid value count mismatch");
  return g;
}

// ---- CSV ('.' decimal point, shortest round-trip digits) ----

inline double parse_double(const std::string& s) {
  double v;
  auto first = s.data(), last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto r = std::from_chars(first, last, v);
  if (r.ec != std::errc() || r.ptr != last) throw InputError("bad number '" + s + "' in CSV");
  return v;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline void write_samples_csv(std::ostream& os, const std::vector<CVec3>& pts, bool real_only = false) {
  os << (real_only ? "X,Y,Z\n" : "reX,imX,reY,imY,reZ,imZ\n");
  for (auto& p : pts) {
    for (int k = 0; k < 3; ++k) {
      if (k) os << ',';
      os << fmt_double(p[k].real());
      if (!real_only) os << ',' << fmt_double(p[k].imag());
    }
    os << '\n';
  }
}

inline std::vector<CVec3> read_samples_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InputError("empty CSV");
  auto head = split_csv(line);
  bool real_only = head.size() == 3;
  if (!real_only && head.size() != 6) throw InputError("unexpected CSV header '" + line + "'");
  std::vector<CVec3> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != head.size()) throw InputError("row has " + std::to_string(f.size()) + " fields");
    CVec3 p;
    for (int k = 0; k < 3; ++k)
      p[k] = real_only ? cd(parse_double(f[k]), 0) : cd(parse_double(f[2 * k]), parse_double(f[2 * k + 1]));
    out.push_back(p);
  }
  return out;
}

inline std::string bits(const std::array<int, 3>& v) { return {char('0' + v[0]), char('0' + v[1]), char('0' + v[2])}; }
inline std::array<int, 3> from_bits(const std::string& s) {
  if (s.size() != 3) throw InputError("characteristic part must have three digits: '" + s + "'");
  std::array<int, 3> v;
  for (int k = 0; k < 3; ++k) v[k] = s[k] - '0';
  return v;
}

inline void write_characteristics_csv(std::ostream& os, const CharacteristicSearch& cs) {
  os << "eps,delta,m,m_shift\n";
  for (auto& r : cs.table)
    os << bits(r.chi.eps) << ',' << bits(r.chi.delta) << ',' << fmt_double(r.m) << ',' << fmt_double(r.m_shift) << '\n';
}

inline std::vector<CharacteristicScore> read_characteristics_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || split_csv(line).size() != 4) throw InputError("bad characteristic CSV header");
  std::vector<CharacteristicScore> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != 4) throw InputError("bad characteristic row '" + line + "'");
    out.push_back({ThetaCharacteristic(from_bits(f[0]), from_bits(f[1])), parse_double(f[2]), parse_double(f[3])});
  }
  return out;
}

}  // namespace thetasurf::io

#endif
