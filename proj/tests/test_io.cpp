#include <gtest/gtest.h>

#include <clocale>
#include <random>
#include <sstream>

#include "thetasurf/io/fields.hpp"
#include "thetasurf/io/formats.hpp"
#include "thetasurf/io/mesh.hpp"
#include "thetasurf/numeric/trott.hpp"
#include "thetasurf/symbolic/presets.hpp"

using namespace thetasurf;
using cd = std::complex<double>;

namespace {

const double kPi = std::acos(-1.0);

DegenerateTheta pencil_terms() {
  // exp(X) + exp(Y) - exp(Z) + 1
  DegenerateTheta dt;
  dt.terms = {{{0, 0, 0}, 1}, {{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, -1}};
  return dt;
}

template <class T, class W, class R>
void expect_roundtrip(const T& v, W write, R read) {
  std::string a = write(v).dump();
  std::string b = write(read(io::json::parse(a))).dump();
  EXPECT_EQ(a, b);
}

}  // namespace

TEST(Grid, MinimalGridHasEightCorners) {
  auto g = grid_sample([](const Vec3<double>& p) { return p[0] + 10 * p[1] + 100 * p[2]; }, {0, 0, 0}, {1, 1, 1},
                       {2, 2, 2});
  ASSERT_EQ(g.values.size(), 8u);
  EXPECT_EQ(g.at(1, 0, 0), 1);
  EXPECT_EQ(g.at(0, 1, 0), 10);
  EXPECT_EQ(g.at(1, 1, 1), 111);
}

TEST(Grid, Validation) {
  auto F = scherk_field();
  EXPECT_THROW(grid_sample(F, {0, 0, 0}, {1, 1, 1}, {1, 2, 2}), InputError);
  EXPECT_THROW(grid_sample(F, {0, 0, 0}, {1, 0, 1}, {2, 2, 2}), InputError);
  EXPECT_THROW(grid_sample(F, {0, 0, 0}, {1, 1, 1}, {100, 100, 100}, 1000), MemoryCap);
  EXPECT_THROW(grid_sample([](const Vec3<double>&) { return NAN; }, {0, 0, 0}, {1, 1, 1}, {2, 2, 2}), NumericalError);
}

TEST(Grid, ScherkSignChangesInEverySlice) {
  auto g = grid_sample(scherk_field(), {-kPi, -kPi, -kPi}, {kPi, kPi, kPi}, {32, 32, 32});
  for (int k = 0; k < 32; ++k) {
    bool pos = false, neg = false;
    for (int j = 0; j < 32; ++j)
      for (int i = 0; i < 32; ++i) (g.at(i, j, k) > 0 ? pos : neg) = true;
    EXPECT_TRUE(pos && neg) << k;
  }
}

TEST(Grid, PencilDegenerateMatchesFormula) {
  auto dt = pencil_terms();
  auto g = grid_sample(degenerate_field(dt), {-1, -1, -1}, {1, 1, 1}, {9, 7, 5});
  for (int k = 0; k < 5; ++k)
    for (int j = 0; j < 7; ++j)
      for (int i = 0; i < 9; ++i) {
        auto p = g.point(i, j, k);
        double want = std::exp(p[0]) + std::exp(p[1]) - std::exp(p[2]) + 1;
        EXPECT_NEAR(g.at(i, j, k), want, 1e-12);
        // same as the theta sum at x = X / (2 pi i)
        Vec3<cd> x;
        for (int c = 0; c < 3; ++c) x[c] = cd(0, -p[c] / (2 * kPi));
        EXPECT_NEAR(eval_degenerate(dt, x).real(), want, 1e-12);
      }
}

TEST(Grid, ParallelMatchesSerial) {
  auto F = scherk_field();
  auto g = grid_sample(F, {-1, -2, -1}, {1, 2, 0.5}, {11, 13, 17});
  for (int k = 0; k < 17; ++k)
    for (int j = 0; j < 13; ++j)
      for (int i = 0; i < 11; ++i) EXPECT_EQ(g.at(i, j, k), F(g.point(i, j, k)));
}

TEST(Grid, PolynomialField) {
  auto F = polynomial_field(parse_mpoly("3*X*Y - Z", {"X", "Y", "Z"}));
  EXPECT_DOUBLE_EQ(F({2, 5, 1}), 29);
  EXPECT_THROW(polynomial_field(parse_mpoly("x", {"x", "y"})), InputError);
}

TEST(Isosurface, FlatForLinearField) {
  for (int n : {4, 5}) {
    auto g = grid_sample([](const Vec3<double>& p) { return p[2]; }, {-1, -1, -1}, {1, 1, 1}, {n, n, n});
    auto m = extract_isosurface(g);
    ASSERT_FALSE(m.triangles.empty());
    for (auto& v : m.vertices) EXPECT_LE(std::abs(v[2]), 1e-12);
    // the plane is covered: total area 4
    double area = 0;
    for (auto& t : m.triangles) area += detail::tri_area(m, t);
    EXPECT_NEAR(area, 4, 1e-9) << n;
  }
}

TEST(Isosurface, ScherkAfterNewtonPolish) {
  auto F = scherk_field();
  auto g = grid_sample(F, {-kPi, -kPi, -kPi}, {kPi, kPi, kPi}, {32, 32, 32});
  auto m = extract_isosurface(g);
  ASSERT_GT(m.triangles.size(), 100u);
  auto sf = scherk_function();
  double worst = 0;
  for (auto v : m.vertices) {
    EXPECT_LE(std::abs(g.interpolate(v)), 1e-9);
    auto gr = sf.gradient(v);
    double gg = gr[0] * gr[0] + gr[1] * gr[1] + gr[2] * gr[2];
    if (gg < 1e-12) continue;
    double f = F(v);
    for (int c = 0; c < 3; ++c) v[c] -= f / gg * gr[c];
    worst = std::max(worst, std::abs(F(v)));
  }
  EXPECT_LE(worst, 1e-3);
}

TEST(Isosurface, NoDegenerateTriangles) {
  auto g = grid_sample([](const Vec3<double>& p) { return p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - 0.5; },
                       {-1, -1, -1}, {1, 1, 1}, {9, 9, 9});
  auto m = extract_isosurface(g);
  for (auto& t : m.triangles) {
    EXPECT_GT(detail::tri_area(m, t), 1e-12);
    for (int v : t) EXPECT_LT(v, (int)m.vertices.size());
  }
  // closed surface: every edge is shared by exactly two triangles
  std::map<std::pair<int, int>, int> uses;
  for (auto& t : m.triangles)
    for (int e = 0; e < 3; ++e) uses[{std::min(t[e], t[(e + 1) % 3]), std::max(t[e], t[(e + 1) % 3])}]++;
  for (auto& [e, c] : uses) EXPECT_EQ(c, 2);
}

TEST(Isosurface, AllPositiveIsEmpty) {
  auto g = grid_sample([](const Vec3<double>& p) { return 1 + p[0] * p[0]; }, {-1, -1, -1}, {1, 1, 1}, {4, 4, 4});
  EXPECT_THROW(extract_isosurface(g), EmptySurface);
}

TEST(Isosurface, LevelEqualCountsPositive) {
  // zero on the corner only: no negative value, so no surface
  auto g = grid_sample([](const Vec3<double>& p) { return p[0] + p[1] + p[2]; }, {0, 0, 0}, {1, 1, 1}, {2, 2, 2});
  EXPECT_THROW(extract_isosurface(g), EmptySurface);
}

TEST(Obj, WriteAndLint) {
  auto g = grid_sample(scherk_field(), {-1, -1, -1}, {1, 1, 1}, {8, 8, 8});
  auto m = extract_isosurface(g);
  std::stringstream ss;
  write_obj(ss, m);
  auto r = lint_obj(ss);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.vertices, (int)m.vertices.size());
  EXPECT_EQ(r.faces, (int)m.triangles.size());
}

TEST(Obj, LintCatchesBadFiles) {
  std::stringstream a("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 4\n");
  EXPECT_FALSE(lint_obj(a).ok);
  std::stringstream b("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 2\n");
  EXPECT_FALSE(lint_obj(b).ok);
  std::stringstream c("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0\nf 1 2 3 4\n");
  EXPECT_FALSE(lint_obj(c).ok);
  std::stringstream d("v 0 0\n");
  EXPECT_FALSE(lint_obj(d).ok);
}

TEST(Json, ComplexAndMatrixRoundTrip) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  Mat3<cd> m;
  for (auto& r : m)
    for (auto& v : r) v = cd(u(rng), u(rng) * 1e-7);
  auto back = io::cmat_from(io::json::parse(io::to_json(m).dump()));
  EXPECT_EQ(back, m);  // exact
  EXPECT_THROW(io::complex_from(io::json::parse("{\"re\": 1}")), InputError);
}

TEST(Json, RiemannMatrixRoundTrip) {
  Mat3<cd> b{{{cd(2, 0.1), 0.3, 0}, {0.3, cd(1.5, -0.2), 0.1}, {0, 0.1, 1}}};
  expect_roundtrip(RiemannMatrix(b), io::riemann_to_json, io::riemann_from_json);
  auto bad = io::json::parse(R"({"B": [[{"re":1,"im":0},{"re":2,"im":0},{"re":0,"im":0}],
    [{"re":2,"im":0},{"re":1,"im":0},{"re":0,"im":0}],[{"re":0,"im":0},{"re":0,"im":0},{"re":1,"im":0}]]})");
  EXPECT_THROW(io::riemann_from_json(bad), NonPositiveDefinite);
}

TEST(Json, DegenerateRoundTrip) {
  auto dt = pencil_terms();
  dt.B0[0][0] = cd(0, -1);
  expect_roundtrip(dt, [](const auto& d) { return io::to_json(d); }, io::degenerate_from_json);
}

TEST(Json, PathRoundTrip) {
  auto q = trott::curve();
  for (auto& p : trott::cycles(q).beta)
    expect_roundtrip(p, [](const auto& d) { return io::to_json(d); }, io::path_from_json);
  EXPECT_THROW(io::path_from_json(io::json::parse(R"({"segments": []})")), InputError);
}

TEST(Json, PeriodAndCharacteristicRoundTrip) {
  PeriodMatrix pm;
  pm.pi_alpha[0][1] = cd(-0.02498252478, 1e-17);
  pm.pi_beta[2][2] = cd(0, 0.02348847438);
  pm.error = 3e-14;
  expect_roundtrip(pm, [](const auto& d) { return io::to_json(d); }, io::period_matrix_from_json);
  CharacteristicSearch cs;
  cs.best = ThetaCharacteristic({1, 1, 1}, {0, 0, 1});
  for (auto& c : ThetaCharacteristic::all()) cs.table.push_back({c, 0.1 + c.eps[0], 1.0 / 3});
  expect_roundtrip(cs, [](const auto& d) { return io::to_json(d); }, io::characteristic_search_from_json);
}

TEST(Json, TetraRoundTrip) {
  auto P = TetraPlane(1, 1, -3, -1);
  expect_roundtrip(P, [](const auto& d) { return io::to_json(d); }, io::plane_from_json);
  auto F = *solve_family(P, 1, 1).family;
  expect_roundtrip(F, [](const auto& d) { return io::to_json(d); }, io::family_from_json);
  auto back = io::family_from_json(io::json::parse(io::to_json(F).dump()));
  EXPECT_TRUE(back.e == F.e);
  EXPECT_TRUE(back.excluded == F.excluded);
  expect_roundtrip(F.at(5), [](const auto& d) { return io::to_json(d); }, io::line_pair_from_json);
  EXPECT_THROW(io::plane_from_json(io::json::parse(R"({"alpha":"1","beta":"1","gamma":"1","delta":"2"})")),
               InputError);
}

TEST(Json, EquationRoundTrip) {
  auto r = run_surface_preset(find_surface_preset("scherk"));
  expect_roundtrip(r.eq, [](const auto& d) { return io::to_json(d); }, io::equation_from_json);
  auto c = run_surface_preset(find_surface_preset("cardioid"));
  expect_roundtrip(c.eq, [](const auto& d) { return io::to_json(d); }, io::equation_from_json);
}

TEST(Csv, SamplesRoundTripExactly) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<CVec3> pts;
  for (int k = 0; k < 20; ++k) pts.push_back({cd(u(rng), u(rng)), cd(u(rng) * 1e-30, 0), cd(1.0 / 3, -u(rng))});
  std::stringstream ss;
  io::write_samples_csv(ss, pts);
  auto back = io::read_samples_csv(ss);
  ASSERT_EQ(back.size(), pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) EXPECT_EQ(back[k], pts[k]);
  std::stringstream rs;
  io::write_samples_csv(rs, pts, true);
  auto re = io::read_samples_csv(rs);
  EXPECT_EQ(re[3][0], cd(pts[3][0].real(), 0));
}

TEST(Csv, IgnoresLocale) {
  // decimal comma locales must not leak into the output
  const char* prev = std::setlocale(LC_NUMERIC, nullptr);
  std::string saved = prev ? prev : "C";
  std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
  std::stringstream ss;
  io::write_samples_csv(ss, {{cd(0.5, 0), cd(1.25, 0), cd(-2.5, 0)}}, true);
  std::setlocale(LC_NUMERIC, saved.c_str());
  EXPECT_EQ(ss.str(), "X,Y,Z\n0.5,1.25,-2.5\n");
}

TEST(Csv, CharacteristicTable) {
  CharacteristicSearch cs;
  for (auto& c : ThetaCharacteristic::all()) cs.table.push_back({c, 1e-13 * (1 + c.delta[2]), 0.25});
  std::stringstream ss;
  io::write_characteristics_csv(ss, cs);
  auto back = io::read_characteristics_csv(ss);
  ASSERT_EQ(back.size(), 64u);
  for (int k = 0; k < 64; ++k) {
    EXPECT_EQ(back[k].chi, cs.table[k].chi);
    EXPECT_EQ(back[k].m, cs.table[k].m);
  }
}

TEST(Csv, RejectsMalformed) {
  std::stringstream a("reX,imX\n1,2\n");
  EXPECT_THROW(io::read_samples_csv(a), InputError);
  std::stringstream b("X,Y,Z\n1,2,abc\n");
  EXPECT_THROW(io::read_samples_csv(b), InputError);
  std::stringstream c("X,Y,Z\n1,2\n");
  EXPECT_THROW(io::read_samples_csv(c), InputError);
}

TEST(Json, ParametrizationAndGridRoundTrip) {
  auto r = run_surface_preset(find_surface_preset("four-lines"));
  expect_roundtrip(r.param, [](const auto& d) { return io::to_json(d); }, io::parametrization_from_json);
  auto back = io::parametrization_from_json(io::json::parse(io::to_json(r.param).dump()));
  EXPECT_TRUE(equal_up_to_scalar(implicitize(back, auto_exponents(back)).psi, r.eq.psi));
  auto g = grid_sample(scherk_field(), {-1, -1, -1}, {1, 1, 1}, {3, 4, 5});
  expect_roundtrip(g, [](const auto& d) { return io::to_json(d); }, io::grid_from_json);
  auto j = io::to_json(g);
  j["values"].erase(0);
  EXPECT_THROW(io::grid_from_json(j), InputError);
}
