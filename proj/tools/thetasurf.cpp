// thetasurf: command-line front end.
//
// Exit codes: 0 ok, 2 bad input, 3 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "thetasurf/io/fields.hpp"
#include "thetasurf/io/formats.hpp"
#include "thetasurf/io/mesh.hpp"
#include "thetasurf/numeric/trott.hpp"
#include "thetasurf/symbolic/presets.hpp"
#include "thetasurf/tetra.hpp"
#include "thetasurf/tropical.hpp"

using namespace thetasurf;
using io::json;

namespace {

enum class Precision { Double, Extended };

Precision precision_from_env() {
  const char* p = std::getenv("THETASURF_PRECISION");
  if (!p || std::string(p).empty() || std::string(p) == "double") return Precision::Double;
  if (std::string(p) == "extended") return Precision::Extended;
  throw InputError("THETASURF_PRECISION must be 'double' or 'extended', got '" + std::string(p) + "'");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

void emit_json(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<double> doubles(const std::string& s, std::size_t n, const char* what) {
  auto parts = split(s, ',');
  if (parts.size() != n) throw InputError(std::string(what) + " needs " + std::to_string(n) + " comma-separated values");
  std::vector<double> out;
  for (auto& p : parts) out.push_back(io::parse_double(p));
  return out;
}

std::vector<QNum> exacts(const std::string& s, std::size_t n, const char* what) {
  auto parts = split(s, ',');
  if (parts.size() != n) throw InputError(std::string(what) + " needs " + std::to_string(n) + " comma-separated values");
  std::vector<QNum> out;
  for (auto& p : parts) out.push_back(parse_qnum(p));
  return out;
}

ThetaCharacteristic parse_char(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 2) throw InputError("characteristic is written eps,delta, e.g. 111,001");
  return ThetaCharacteristic(io::from_bits(parts[0]), io::from_bits(parts[1]));
}

json json_of(const IMat3& b) { return json(b); }
json json_of(const IVec3& n) { return json(n); }

// ---- theta-eval ----

json run_theta_eval(const std::string& input, const std::string& chi_s, double tol, Precision prec) {
  json in = read_json_file(input);
  auto B = io::riemann_from_json(in);
  ThetaCharacteristic chi = chi_s.empty() ? (in.contains("char") ? io::characteristic_from(in["char"])
                                                                 : ThetaCharacteristic{})
                                          : parse_char(chi_s);
  std::vector<Vec3<cd>> pts;
  for (auto& p : io::need(in, "points", [](const json& v) { return v; })) pts.push_back(io::cvec_from(p));
  json vals = json::array();
  if (prec == Precision::Extended) {
    using C = std::complex<Extended>;
    std::vector<Vec3<C>> xe;
    for (auto& p : pts) xe.push_back({C(p[0].real(), p[0].imag()), C(p[1].real(), p[1].imag()), C(p[2].real(), p[2].imag())});
    for (auto& v : theta_batch(xe, B.cast<Extended>(), chi, tol))
      vals.push_back(io::to_json(cd(static_cast<double>(v.real()), static_cast<double>(v.imag()))));
  } else {
    for (auto& v : theta_batch(pts, B, chi, tol)) vals.push_back(io::to_json(v));
  }
  return {{"char", io::to_json(chi)},
          {"radius", truncation_radius(B, tol)},
          {"precision", prec == Precision::Extended ? "extended" : "double"},
          {"values", vals}};
}

// ---- tropical / degenerate ----

IMat3 matrix_for_type(const std::string& type) {
  // the printed census rows take precedence over the graph-derived matrix
  const DualGraph& g = find_graph_preset(type);
  for (auto& p : graph_presets())
    if (&p.graph == &g)
      for (auto& row : delaunay_table())
        if (row.graph == p.name) return row.B;
  return riemann_matrix_from_graph(g);
}

QVec3 parse_a(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 3) throw InputError("--a needs three rationals, e.g. 3/4,1/2,1/4");
  QVec3 a;
  for (int i = 0; i < 3; ++i) {
    try {
      a[i] = mpq_class(parts[i]);
      a[i].canonicalize();
    } catch (const std::invalid_argument&) {
      throw InputError("bad rational '" + parts[i] + "'");
    }
  }
  return a;
}

json json_of(const QVec3& a) {
  json j = json::array();
  for (auto& v : a) j.push_back(v.get_str());
  return j;
}

Mat3<cd> parse_b0(const std::string& s) {
  Mat3<cd> m{};
  if (s == "zero") return m;
  if (s == "id") {
    for (int i = 0; i < 3; ++i) m[i][i] = 1;
    return m;
  }
  if (s == "scherk") {
    m[0][0] = cd(0, -1);
    m[1][1] = cd(0, 1);
    m[2][2] = cd(0, -1);
    return m;
  }
  return io::cmat_from(read_json_file(s));
}

json delaunay_json(const IMat3& b, const QVec3& a) {
  auto d = delaunay_set(b, a);
  json pts = json::array();
  for (auto& n : d.dset) pts.push_back(json_of(n));
  json out{{"B", json_of(b)}, {"a", json_of(a)}, {"dset", pts}, {"vertex", d.vertex}};
  if (d.vertex) out["volume"] = hull_volume(d.dset).get_str();
  return out;
}

json run_tropical(const std::string& type, const std::string& a_s, bool table) {
  if (table) {
    json rows = json::array();
    for (auto& row : delaunay_table()) {
      json r = delaunay_json(row.B, row.a);
      r["graph"] = row.graph;
      r["polytope"] = row.polytope;
      rows.push_back(r);
    }
    return {{"table", rows}};
  }
  if (type.empty()) throw InputError("tropical needs --type or --table");
  IMat3 b = riemann_matrix_from_graph(find_graph_preset(type));
  json out{{"type", type}, {"B_graph", json_of(b)}, {"B", json_of(matrix_for_type(type))}};
  if (!a_s.empty()) out["delaunay"] = delaunay_json(matrix_for_type(type), parse_a(a_s));
  return out;
}

json run_degenerate(const std::string& type, const std::string& a_s, const std::string& b0_s, const std::string& x_s,
                    Precision prec) {
  IMat3 b = matrix_for_type(type);
  QVec3 a = parse_a(a_s);
  auto dt = degenerate_theta(b, a, parse_b0(b0_s));
  json out = io::to_json(dt);
  out["type"] = type;
  out["B"] = json_of(b);
  out["a"] = json_of(a);
  if (!x_s.empty()) {
    // point given as X,Y,Z real log coordinates: x = X / (2 pi i)
    auto X = doubles(x_s, 3, "--x");
    const double tp = 2 * std::acos(-1.0);
    Vec3<cd> x{cd(0, -X[0] / tp), cd(0, -X[1] / tp), cd(0, -X[2] / tp)};
    cd v;
    if (prec == Precision::Extended) {
      using C = std::complex<Extended>;
      auto r = eval_degenerate<Extended>(dt, Vec3<C>{C(x[0].real(), x[0].imag()), C(x[1].real(), x[1].imag()),
                                                     C(x[2].real(), x[2].imag())});
      v = cd(static_cast<double>(r.real()), static_cast<double>(r.imag()));
    } else {
      v = eval_degenerate(dt, x);
    }
    out["value"] = io::to_json(v);
  }
  return out;
}

// ---- symbolic ----

struct SymbolicInput {
  std::string preset, lambda = "2", q, c1, c2;
};

PresetResult symbolic_run(const SymbolicInput& in) {
  if (!in.preset.empty()) return run_surface_preset(find_surface_preset(in.preset), in.lambda);
  if (in.q.empty() || in.c1.empty() || in.c2.empty()) throw InputError("give --preset or all of --q, --c1, --c2");
  auto c1 = split(in.c1, ';'), c2 = split(in.c2, ';');
  if (c1.size() != 2 || c2.size() != 2) throw InputError("components are written x(w);y(w)");
  MPoly q = parse_mpoly(in.q, {"x", "y"});
  auto par = parametrize_theta_surface(q, ComponentParam::parse(c1[0], c1[1], "first"),
                                       ComponentParam::parse(c2[0], c2[1], "second"));
  PresetResult r{q, par, {}, MPoly(3), true, std::nullopt};
  return r;
}

json run_parametrize(const SymbolicInput& in) {
  if (!in.preset.empty()) {
    auto& p = find_surface_preset(in.preset);
    MPoly q = parse_mpoly(substitute_lambda(p.q, in.lambda), {"x", "y"});
    return io::to_json(parametrize_theta_surface(q, ComponentParam::parse(p.c1x, p.c1y, "first"),
                                                 ComponentParam::parse(p.c2x, p.c2y, "second")));
  }
  return io::to_json(symbolic_run(in).param);
}

json run_implicitize(const SymbolicInput& in, const std::string& input, const std::string& exps_s, bool rational) {
  if (!in.preset.empty()) {
    auto r = run_surface_preset(find_surface_preset(in.preset), in.lambda);
    json out = io::to_json(r.eq);
    out["preset"] = in.preset;
    out["published"] = r.expected.str(io::equation_vars(r.eq));
    out["matches_published"] = r.matches;
    if (r.cofactor) out["published_cofactor"] = r.cofactor->str(io::equation_vars(r.eq));
    return out;
  }
  LogParametrization par = input.empty() ? symbolic_run(in).param : io::parametrization_from_json(read_json_file(input));
  if (rational || !par.has_logs()) return io::to_json(implicitize_rational(par));
  std::array<QNum, 3> ex;
  if (exps_s.empty()) {
    ex = auto_exponents(par);
  } else {
    auto e = exacts(exps_s, 3, "--exps");
    ex = {e[0], e[1], e[2]};
  }
  return io::to_json(implicitize(par, ex));
}

// ---- numeric ----

struct TrottRun {
  NumCurve q;
  PeriodMatrix pm;
  RiemannResult rr;
};

TrottRun trott_periods(double tol) {
  auto q = trott::curve();
  auto cyc = trott::cycles(q);
  auto pm = period_matrix(q, cyc.alpha, cyc.beta, tol);
  return {q, pm, riemann_matrix(pm)};
}

std::vector<std::pair<cd, cd>> square_offsets(int n) {
  int side = (int)std::ceil(std::sqrt((double)n));
  auto all = trott::grid_offsets(side);
  all.resize(n);
  return all;
}

std::string sibling(const std::string& path, const std::string& suffix) {
  auto dot = path.rfind('.');
  auto slash = path.rfind('/');
  std::string stem = (dot != std::string::npos && (slash == std::string::npos || dot > slash)) ? path.substr(0, dot) : path;
  return stem + suffix;
}

json run_trott(int points, const std::string& out, const std::string& chars_out, bool real_only, double tol) {
  if (points < 1) throw InputError("--points must be positive");
  auto t = trott_periods(tol);
  auto [p1, p2] = trott::base_points();
  auto s = sample_surface(t.q, p1, p2, square_offsets(points), tol);
  auto cs = find_characteristic(s.points, t.pm.pi_alpha, t.rr.B, tol);
  std::string cpath = chars_out.empty() ? sibling(out, "_characteristics.csv") : chars_out;
  {
    auto f = open_out(out);
    io::write_samples_csv(f, s.points, real_only);
    auto g = open_out(cpath);
    io::write_characteristics_csv(g, cs);
  }
  double m_best = 0, m_other = 1e300;
  for (auto& r : cs.table) (r.chi == cs.best ? m_best : m_other) = r.chi == cs.best ? r.m : std::min(m_other, r.m);
  return {{"period_matrix", io::to_json(t.pm)},
          {"riemann", io::riemann_to_json(t.rr.B)},
          {"samples", out},
          {"characteristics", cpath},
          {"best", io::to_json(cs.best)},
          {"m_best", m_best},
          {"m_others_min", m_other},
          {"quadrature_error", s.max_error}};
}

json run_sample(const std::string& input, const std::string& out, bool real_only, double tol) {
  json in = read_json_file(input);
  auto curve = io::need(in, "curve", [](const json& v) { return v.get<std::string>(); });
  auto q = NumCurve::from_mpoly(parse_mpoly(curve, {"x", "y"}));
  auto point = [](const json& v) { return CurvePoint{io::complex_from(v.at("x")), io::complex_from(v.at("y"))}; };
  CurvePoint p1 = io::need(in, "p1", point), p2 = io::need(in, "p2", point);
  std::vector<std::pair<cd, cd>> offs;
  for (auto& o : io::need(in, "offsets", [](const json& v) { return v; })) {
    if (!o.is_array() || o.size() != 2) throw InputError("each offset is a pair [h1, h2]");
    offs.push_back({io::complex_from(o[0]), io::complex_from(o[1])});
  }
  auto s = sample_surface(q, p1, p2, offs, tol);
  auto f = open_out(out);
  io::write_samples_csv(f, s.points, real_only);
  return {{"samples", out}, {"count", s.points.size()}, {"quadrature_error", s.max_error}};
}

// ---- tetrahedral ----

json run_tetra(const std::string& plane_s, const std::string& a_s, const std::string& f_s, const std::string& b_s) {
  auto pv = exacts(plane_s, 4, "--plane");
  TetraPlane P(pv[0], pv[1], pv[2], pv[3]);
  QNum a = parse_qnum(a_s), f = parse_qnum(f_s);
  std::optional<QNum> b;
  if (!b_s.empty()) b = parse_qnum(b_s);
  auto sol = solve_family(P, a, f, b);
  json out{{"plane", io::to_json(P)}};
  if (!sol.family) {
    out["constraint_on_b"] = sol.constraint->str("b");
    return out;
  }
  auto& F = *sol.family;
  out["family"] = io::to_json(F);
  json checks = json::array();
  std::optional<LinePairParams> first;
  for (long k = 1; k <= 10; ++k) {
    QNum bv = b ? *b : QNum(k);
    if (!F.excluded.is_zero() && F.excluded(bv).is_zero()) continue;
    auto p = F.at(bv);
    if (!first) first = p;
    checks.push_back({{"b", bv.str()},
                      {"tangency_det_zero", tangency_det(p).is_zero()},
                      {"hadamard", hadamard_check(p, P, 16, 0).exact_zero}});
    if (b) break;
  }
  out["checks"] = checks;
  if (first && hadamard_check(*first, P, 16, 0).exact_zero) {
    auto lp = generating_curves(P, *first);
    out["line_pair"] = io::to_json(*first);
    out["generating_curves"] = io::to_json(lp);
    out["equation"] = io::to_json(implicitize(lp, {QNum(1), QNum(1), QNum(1)}));
  }
  return out;
}

// ---- mesh ----

Field field_for(const std::string& eq, double tol, Precision prec) {
  if (eq == "scherk") return scherk_field();
  if (eq.rfind("poly:", 0) == 0) return polynomial_field(parse_mpoly(eq.substr(5), {"X", "Y", "Z"}));
  if (eq.rfind("degenerate:", 0) == 0) return degenerate_field(io::degenerate_from_json(read_json_file(eq.substr(11))));
  if (eq == "trott") {
    auto t = trott_periods(tol);
    auto inv = inv3(t.pm.pi_alpha);
    Mat3<double> A;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) A[i][j] = inv[i][j].real();
    Mat3<double> re = t.rr.B.re();
    ThetaCharacteristic chi({1, 1, 1}, {0, 0, 1});
    if (prec == Precision::Extended) {
      auto Be = RiemannMatrixT<Extended>::real(Mat3<Extended>{{{re[0][0], re[0][1], re[0][2]},
                                                               {re[1][0], re[1][1], re[1][2]},
                                                               {re[2][0], re[2][1], re[2][2]}}});
      return [A, Be, chi, tol](const Vec3<double>& X) {
        auto z = mul3(A, X);
        using C = std::complex<Extended>;
        Vec3<C> x{C(z[0]), C(z[1]), C(z[2])};
        return static_cast<double>(theta_char_eval(x, Be, chi, tol).real());
      };
    }
    return theta_field(A, RiemannMatrix::real(re), chi, tol);
  }
  throw InputError("unknown equation '" + eq + "' (scherk, trott, poly:<psi in X,Y,Z>, degenerate:<file.json>)");
}

json run_mesh(const std::string& eq, const std::string& bounds_s, const std::string& res_s, double level,
              const std::string& out, const std::string& grid_out, std::size_t cap, double tol, Precision prec) {
  std::array<double, 3> lo, hi;
  if (bounds_s.empty()) {
    double pi = std::acos(-1.0);
    lo = {-pi, -pi, -pi};
    hi = {pi, pi, pi};
  } else {
    auto b = doubles(bounds_s, 6, "--bounds");
    lo = {b[0], b[2], b[4]};
    hi = {b[1], b[3], b[5]};
  }
  std::array<int, 3> n;
  auto r = split(res_s, ',');
  if (r.size() == 1) r = {r[0], r[0], r[0]};
  if (r.size() != 3) throw InputError("--res is one or three integers");
  for (int k = 0; k < 3; ++k) {
    try {
      n[k] = std::stoi(r[k]);
    } catch (const std::exception&) {
      throw InputError("bad resolution '" + r[k] + "'");
    }
  }
  auto F = field_for(eq, tol, prec);
  auto g = grid_sample(F, lo, hi, n, cap);
  if (!grid_out.empty()) emit_json(io::to_json(g), grid_out);
  auto m = extract_isosurface(g, level);
  {
    auto f = open_out(out);
    write_obj(f, m);
  }
  std::ifstream back(out);
  auto lint = lint_obj(back);
  if (!lint.ok) throw NumericalError("written mesh fails the OBJ check: " + lint.problems.front());
  return {{"mesh", out}, {"vertices", m.vertices.size()}, {"triangles", m.triangles.size()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta surfaces of plane quartics: theta values, degenerations, implicit equations, samples, meshes"};
  app.require_subcommand(1);
  app.fallthrough();
  double tol = 1e-10;
  app.add_option("--tol", tol, "error tolerance")->check(CLI::PositiveNumber);

  std::string input, out, chi_s, type, a_s, b0_s = "zero", x_s, exps_s, chars_out, plane_s = "1,1,-3,-1",
                                             ta_s = "1", tf_s = "0", tb_s, eq_s, bounds_s, res_s = "32", grid_out;
  bool table = false, rational = false, real_only = false;
  int points = 100;
  double level = 0;
  std::size_t cap = kGridCap;
  SymbolicInput sym;

  auto* te = app.add_subcommand("theta-eval", "evaluate theta[eps,delta] at points from a JSON file");
  te->add_option("--input", input, "JSON with B and points")->required();
  te->add_option("--char", chi_s, "characteristic eps,delta, e.g. 111,001");
  te->add_option("--out", out, "output JSON (default stdout)");

  auto* dg = app.add_subcommand("degenerate", "degenerate theta sum of a nodal quartic type");
  dg->add_option("--type", type, "four-lines, conic-2lines, 2-conics, cubic-line, rational-quartic")->required();
  dg->add_option("--a", a_s, "Voronoi vertex, e.g. 3/4,1/2,1/4")->required();
  dg->add_option("--B0", b0_s, "zero, id, scherk, or a JSON matrix file");
  dg->add_option("--x", x_s, "evaluate at real log coordinates X,Y,Z");
  dg->add_option("--out", out, "output JSON (default stdout)");

  auto* tr = app.add_subcommand("tropical", "tropical Riemann matrix and Delaunay set");
  tr->add_option("--type", type, "graph type");
  tr->add_option("--a", a_s, "point whose Delaunay set is wanted");
  tr->add_flag("--table", table, "the full census");
  tr->add_option("--out", out, "output JSON (default stdout)");

  auto add_symbolic = [&](CLI::App* c) {
    c->add_option("--preset", sym.preset,
                  "scherk, pencil, hyperbola-lines, four-lines, cusp, concurrent, toric, node-cusp, sextic, cardioid, "
                  "deltoid");
    c->add_option("--lambda", sym.lambda, "pencil parameter");
    c->add_option("--q", sym.q, "quartic in x, y");
    c->add_option("--c1", sym.c1, "first component x(w);y(w)");
    c->add_option("--c2", sym.c2, "second component x(w);y(w)");
    c->add_option("--out", out, "output JSON (default stdout)");
  };
  auto* pa = app.add_subcommand("parametrize", "log parametrization by abelian integrals");
  add_symbolic(pa);
  auto* im = app.add_subcommand("implicitize", "implicit equation of a theta surface");
  add_symbolic(im);
  im->add_option("--input", input, "parametrization JSON written by parametrize");
  im->add_option("--exps", exps_s, "exponents alpha,beta,gamma");
  im->add_flag("--rational", rational, "coordinates are rational; eliminate directly");

  auto* sa = app.add_subcommand("sample", "sample a theta surface by abelian integrals");
  sa->add_option("--input", input, "JSON with curve, p1, p2, offsets")->required();
  sa->add_option("--out", out, "CSV of samples")->required();
  sa->add_flag("--real", real_only, "write real parts only");

  auto* tt = app.add_subcommand("trott", "periods, samples and characteristic search for the Trott curve");
  tt->add_option("--points", points, "number of samples");
  tt->add_option("--out", out, "CSV of samples")->required();
  tt->add_option("--chars", chars_out, "CSV of the characteristic table");
  tt->add_flag("--real", real_only, "write real parts only");

  auto* ta = app.add_subcommand("tetra", "line pairs whose product is a plane");
  ta->add_option("--plane", plane_s, "alpha,beta,gamma,delta");
  ta->add_option("--a", ta_s, "fixed a");
  ta->add_option("--f", tf_s, "fixed f");
  ta->add_option("--b", tb_s, "fixed b (default: free)");
  ta->add_option("--out", out, "output JSON (default stdout)");

  auto* me = app.add_subcommand("mesh", "triangle mesh of a surface");
  me->add_option("--equation", eq_s, "scherk, trott, poly:<psi>, degenerate:<file.json>")->required();
  me->add_option("--bounds", bounds_s, "xmin,xmax,ymin,ymax,zmin,zmax (default [-pi,pi]^3)");
  me->add_option("--res", res_s, "samples per axis, one or three integers");
  me->add_option("--level", level, "iso level");
  me->add_option("--cap", cap, "maximum number of grid values");
  me->add_option("--out", out, "OBJ file")->required();
  me->add_option("--grid", grid_out, "also write the sampled grid as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Precision prec = precision_from_env();
    if (*te) emit_json(run_theta_eval(input, chi_s, tol, prec), out);
    if (*dg) emit_json(run_degenerate(type, a_s, b0_s, x_s, prec), out);
    if (*tr) emit_json(run_tropical(type, a_s, table), out);
    if (*pa) emit_json(run_parametrize(sym), out);
    if (*im) emit_json(run_implicitize(sym, input, exps_s, rational), out);
    if (*sa) emit_json(run_sample(input, out, real_only, tol), "");
    if (*tt) emit_json(run_trott(points, out, chars_out, real_only, tol), "");
    if (*ta) emit_json(run_tetra(plane_s, ta_s, tf_s, tb_s), out);
    if (*me) emit_json(run_mesh(eq_s, bounds_s, res_s, level, out, grid_out, cap, tol, prec), "");
  } catch (const InputError& e) {
    std::cerr << "thetasurf: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "thetasurf: " << e.what() << '\n';
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "thetasurf: bad JSON: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
