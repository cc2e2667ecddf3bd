#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "thetasurf/exact/parse.hpp"
#include "thetasurf/numeric/asymptotic.hpp"
#include "thetasurf/numeric/trott.hpp"
#include "thetasurf/symbolic/implicit.hpp"

using namespace thetasurf;

namespace {

NumCurve curve_of(const std::string& s) { return NumCurve::from_mpoly(parse_mpoly(s, {"x", "y"})); }

// Trott periods are the slow part; compute once.
struct TrottData {
  NumCurve q = trott::curve();
  trott::Cycles cyc = trott::cycles(q);
  PeriodMatrix pm = period_matrix(q, cyc.alpha, cyc.beta, 1e-12);
  RiemannResult rr = riemann_matrix(pm);
};
const TrottData& trott_data() {
  static TrottData d;
  return d;
}

PathSegment line_seg(cd a, cd b) {
  PathSegment s;
  s.x_from = a;
  s.x_to = b;
  return s;
}

PathSpec circle(cd center, double r, cd y0) {
  PathSegment s;
  s.x_from = center + r;
  s.x_to = center + r;
  s.arc_center = center;
  s.sweep = 2 * std::acos(-1.0);
  s.y_start = y0;
  return {{s}};
}

}  // namespace

TEST(Branches, TrottAtZero) {
  auto r = curve_branches(trott::curve(), 0);
  ASSERT_EQ(r.size(), 4u);
  double want[] = {-1, -0.75, 0.75, 1};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(r[i] - want[i]), 0, 1e-14);
}

TEST(Branches, FourthRootsOfUnity) {
  auto r = curve_branches(curve_of("y^4 - 1"), cd(0.3, 0.2));
  std::vector<cd> want{{-1, 0}, {0, -1}, {0, 1}, {1, 0}};
  for (int i = 0; i < 4; ++i) EXPECT_LT(std::abs(r[i] - want[i]), 1e-14);
}

TEST(Branches, VietaOracle) {
  // expanding prod (y - y_k) must give back the coefficients of q(x0, y)
  auto q = curve_of("3*y^4 + x*y^3 - 2*x^2*y^2 + (x-5)*y + x^4 + 1");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 20; ++t) {
    cd x(u(rng), u(rng));
    auto r = curve_branches(q, x);
    std::vector<cd> p{1};
    for (auto y : r) {
      std::vector<cd> n(p.size() + 1, 0);
      for (std::size_t k = 0; k < p.size(); ++k) {
        n[k + 1] += p[k];
        n[k] -= y * p[k];
      }
      p = n;
    }
    auto c = q.y_coeffs(x);
    for (int k = 0; k <= 4; ++k) {
      cd want((double)c[k].real(), (double)c[k].imag());
      EXPECT_LT(std::abs(3.0 * p[k] - want), 1e-11 * (1 + std::abs(want)));
    }
  }
}

TEST(Branches, DegenerateFiber) {
  EXPECT_THROW(curve_branches(curve_of("x*y^2 - 1"), 0), DegenerateFiber);
}

TEST(Track, TrivialMonodromy) {
  auto q = trott::curve();
  for (double y0 : {-1.0, -0.75, 0.75, 1.0}) {
    auto p = circle(0.2, 0.05, trott::radical(0.25, y0 > 0 ? 1 : -1, std::abs(y0) == 1 ? 1 : -1));
    auto t = track_branch(q, p);
    cd start = nearest_branch(q, 0.25, t.trace.front().y).first;
    EXPECT_LT(std::abs(t.y_end - start), 1e-10);
  }
}

TEST(Track, SquareRootSheetSwap) {
  auto q = curve_of("y^2 - x");
  auto t = track_branch(q, circle(0, 1, 1));
  EXPECT_LT(std::abs(t.y_end + 1.0), 1e-12);
  t = track_branch(q, circle(3, 1, 2));  // does not enclose 0
  EXPECT_LT(std::abs(t.y_end - 2.0), 1e-12);
}

TEST(Track, MatchesRadicalBetweenS1S2) {
  auto q = trott::curve();
  double a = trott::s1(), b = trott::s2();
  PathSegment s = line_seg(a + 1e-3, b - 1e-3);
  s.y_start = trott::radical(a + 1e-3, 1, -1);
  auto t = track_branch(q, {{s}});
  for (auto& p : t.trace) EXPECT_LT(std::abs(p.y - trott::radical(p.x, 1, -1)), 1e-10);
}

TEST(Track, CollisionWithoutRamificationHandling) {
  auto q = curve_of("y^2 - x");
  PathSegment s = line_seg(1, -1);
  s.y_start = 1;
  EXPECT_THROW(track_branch(q, {{s}}), BranchCollision);
}

TEST(Quadrature, GaussKronrodPolynomialExact) {
  auto f = [](double t) { return CVec3{cd(t * t * t), cd(std::exp(t)), cd(0, std::cos(t))}; };
  auto r = integrate_gk(f, 0, 2, 1e-14);
  EXPECT_NEAR(r.value[0].real(), 4, 1e-14);
  EXPECT_NEAR(r.value[1].real(), std::exp(2.0) - 1, 1e-13);
  EXPECT_NEAR(r.value[2].imag(), std::sin(2.0), 1e-14);
}

TEST(Quadrature, StallOnNonIntegrable) {
  auto f = [](double t) { return CVec3{cd(1 / t), 0, 0}; };
  EXPECT_THROW(integrate_gk(f, 0, 1, 1e-10), QuadratureStall);
}

TEST(AbelianIntegral, ScherkLineArctan) {
  auto q = curve_of("x*y*(x^2+y^2+1)");
  PathSegment s = line_seg(1, 2);
  s.y_start = 0;
  cd v = abelian_integral(q, {{s}}, 1, 1e-13);
  EXPECT_NEAR(v.real(), std::atan(2.0) - std::atan(1.0), 1e-12);
  EXPECT_NEAR(v.imag(), 0, 1e-12);
  PathSegment r = line_seg(2, 1);
  r.y_start = 0;
  cd w = abelian_integral(q, {{r}}, 1, 1e-13);
  EXPECT_LT(std::abs(v + w), 1e-12);
}

TEST(AbelianIntegral, RealOnRealComponent) {
  auto q = trott::curve();
  auto p = trott::cycles(q).alpha[0];
  for (int k = 1; k <= 3; ++k) EXPECT_LT(std::abs(abelian_integral(q, p, k, 1e-12).imag()), 1e-12);
}

TEST(AbelianIntegral, ContractibleLoopVanishes) {
  auto q = trott::curve();
  auto r = path_integral(q, circle(cd(0.1, 0.3), 0.1, trott::radical(cd(0.2, 0.3), 1, 1)), 1e-12);
  for (auto v : r.value) EXPECT_LT(std::abs(v), 1e-12);
}

TEST(AbelianIntegral, RejectsBadIndex) {
  auto q = trott::curve();
  EXPECT_THROW(abelian_integral(q, trott::cycles(q).alpha[0], 4, 1e-10), InputError);
}

TEST(AbelianIntegral, HalvingTolStaysWithinEstimate) {
  auto q = trott::curve();
  auto p = trott::cycles(q).beta[0];
  auto a = path_integral(q, p, 1e-8), b = path_integral(q, p, 5e-9);
  for (int j = 0; j < 3; ++j) EXPECT_LE(std::abs(a.value[j] - b.value[j]), std::max(a.error, 1e-15) + 1e-15);
}

TEST(Periods, TrottBlocks) {
  auto& d = trott_data();
  auto& A = d.pm.pi_alpha;
  auto& P = d.pm.pi_beta;
  const double a1 = trott::kA1, a2 = trott::kA2, b1 = trott::kB1, b2 = trott::kB2;
  double wantA[3][3] = {{0, -a1, 0}, {-a1, 0, a1}, {a2, -a2, a2}};
  double wantB[3][3] = {{b1, 2 * b1, b1}, {b1, 0, -b1}, {b2, 0, b2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(A[i][j].real(), wantA[i][j], 1e-8) << i << j;
      EXPECT_NEAR(A[i][j].imag(), 0, 1e-8);
      EXPECT_NEAR(P[i][j].real(), 0, 1e-8);
      EXPECT_NEAR(P[i][j].imag(), wantB[i][j], 1e-8) << i << j;
    }
  EXPECT_LT(d.pm.asymmetry, 1e-8);
}

TEST(Periods, TrottRiemannMatrix) {
  auto& B = trott_data().rr.B;
  EXPECT_NEAR(B(0, 0).real(), 0.926246, 5e-5);
  EXPECT_NEAR(B(0, 1).real(), 0.553994, 5e-5);
  EXPECT_NEAR(B(0, 2).real(), 0.372252, 5e-5);
  EXPECT_NEAR(B(1, 1).real(), 1.10799, 5e-5);
  for (auto& r : B.entries())
    for (auto v : r) EXPECT_LT(std::abs(v.imag()), 1e-8);
  EXPECT_GT(B.min_eigenvalue(), 0);
}

TEST(Periods, IdentityWhenBetaIsIAlpha) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  PeriodMatrix pm;
  for (auto& r : pm.pi_alpha)
    for (auto& v : r) v = cd(u(rng), u(rng));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) pm.pi_beta[i][j] = cd(0, 1) * pm.pi_alpha[i][j];
  auto B = riemann_matrix(pm).B;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_LT(std::abs(B(i, j) - cd(i == j)), 1e-13);
}

TEST(Periods, RoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 10; ++t) {
    auto B0 = oracle::random_pd(rng, true);
    PeriodMatrix pm;
    for (auto& r : pm.pi_alpha)
      for (auto& v : r) v = cd(u(rng), u(rng));
    pm.pi_beta = mul3(pm.pi_alpha, B0);
    for (auto& r : pm.pi_beta)
      for (auto& v : r) v *= cd(0, 1);
    auto rr = riemann_matrix(pm);
    EXPECT_LT(rr.asymmetry, 1e-12);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_LT(std::abs(rr.B(i, j) - B0[i][j]), 1e-12);
  }
}

TEST(Periods, SingularAlpha) {
  PeriodMatrix pm;
  pm.pi_alpha = {{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}};
  pm.pi_beta = pm.pi_alpha;
  EXPECT_THROW(riemann_matrix(pm), SingularAlpha);
}

TEST(Sample, ZeroOffsetsGiveOrigin) {
  auto q = trott::curve();
  auto [p1, p2] = trott::base_points();
  auto s = sample_surface(q, p1, p2, {{0, 0}}, 1e-12);
  for (auto v : s.points[0]) EXPECT_EQ(v, cd(0));
}

TEST(Sample, BasePointsOnBitangent) {
  auto q = trott::curve();
  auto [p1, p2] = trott::base_points();
  for (auto p : {p1, p2}) {
    EXPECT_LT(std::abs(q.eval(p.x, p.y)), 1e-11);
    EXPECT_LT(std::abs(q.dx(p.x, p.y)), 1e-10);  // horizontal tangent
  }
  EXPECT_NEAR(p1.y.real(), p2.y.real(), 0);
}

TEST(Sample, RejectsPointOffCurve) {
  auto q = trott::curve();
  EXPECT_THROW(sample_surface(q, {0, 0}, {0, 1}, {{0.01, 0.01}}, 1e-10), InputError);
}

TEST(Sample, TrottPublishedPoints) {
  auto q = trott::curve();
  auto [p1, p2] = trott::base_points();
  auto s = sample_surface(q, p1, p2, trott::offsets(5), 1e-13);
  auto pub = trott::published_points();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(s.points[i][j].real(), pub[i][j] * 1e-5, 1e-9);
      EXPECT_NEAR(s.points[i][j].imag(), 0, 1e-12);
    }
}

TEST(Abel, CollinearPointsSumToZero) {
  auto q = trott::curve();
  std::vector<CVec3> parts;
  auto r = abel_residual(q, {cd(0.1, 0.05), 0.2}, {0.3, cd(0.5, -0.1)}, 1e-12, &parts);
  ASSERT_EQ(parts.size(), 4u);
  double scale = 0;
  for (auto& p : parts) scale = std::max(scale, std::abs(p[0]));
  EXPECT_GT(scale, 1e-4);
  for (auto v : r) EXPECT_LT(std::abs(v), 1e-8);
}

TEST(Characteristic, TrottBest) {
  auto& d = trott_data();
  auto [p1, p2] = trott::base_points();
  auto s = sample_surface(d.q, p1, p2, trott::grid_offsets(10), 1e-13);
  ASSERT_GE(s.points.size(), 100u);
  auto cs = find_characteristic(s.points, d.pm.pi_alpha, d.rr.B, 1e-13);
  ASSERT_EQ(cs.table.size(), 64u);
  EXPECT_EQ(cs.best, ThetaCharacteristic({1, 1, 1}, {0, 0, 1}));
  for (auto& row : cs.table) {
    if (row.chi == cs.best) {
      EXPECT_LE(row.m, 1e-9);
      EXPECT_LE(row.m_shift, 1e-9);
    } else {
      EXPECT_GE(row.m, 1e-4) << row.chi.str();
      EXPECT_LE(row.m, 10) << row.chi.str();
    }
  }
}

TEST(Characteristic, PlantAndRecover) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  auto Bm = oracle::random_pd(rng, false);
  RiemannMatrix B(Bm);
  ThetaCharacteristic planted({0, 1, 1}, {1, 0, 1});
  std::vector<CVec3> samples;
  auto th = [&](const Vec3<cd>& z) { return theta_char_eval(z, B, planted, 1e-13); };
  auto grad = [&](const Vec3<cd>& z) {
    Vec3<cd> g;
    for (int i = 0; i < 3; ++i) {
      auto zp = z, zm = z;
      zp[i] += 1e-6;
      zm[i] -= 1e-6;
      g[i] = (th(zp) - th(zm)) / 2e-6;
    }
    return g;
  };
  for (int tries = 0; samples.size() < 12 && tries < 200; ++tries) {
    // Newton along the conjugate gradient from a random small start
    Vec3<cd> z{cd(u(rng), 0.1 * u(rng)), cd(u(rng), 0.1 * u(rng)), cd(u(rng), 0.1 * u(rng))};
    auto g = grad(z);
    Vec3<cd> v{std::conj(g[0]), std::conj(g[1]), std::conj(g[2])};
    bool ok = false;
    for (int it = 0; it < 40; ++it) {
      cd f = th(z);
      if (std::abs(f) < 1e-12) {
        ok = true;
        break;
      }
      auto gz = grad(z);
      cd df = gz[0] * v[0] + gz[1] * v[1] + gz[2] * v[2];
      cd t = f / df;
      for (int i = 0; i < 3; ++i) z[i] -= t * v[i];
      if (std::abs(z[0].imag()) + std::abs(z[1].imag()) + std::abs(z[2].imag()) > 1) break;
    }
    if (ok) samples.push_back({z[0], z[1], z[2]});
  }
  ASSERT_EQ(samples.size(), 12u);
  Mat3<cd> I{};
  for (int i = 0; i < 3; ++i) I[i][i] = 1;
  auto cs = find_characteristic(samples, I, B, 1e-13);
  EXPECT_EQ(cs.best, planted);
}

TEST(Asymptotic, ScherkCOneFifthIsDoubledCurve) {
  auto f = scherk_function();
  for (int dir : {1, -1}) {
    auto c = asymptotic_curve(f, {0, 0, -std::log(5.0)}, 1000, 0.005, {double(dir), 5.0 * dir, 0});
    int checked = 0;
    double reach = 0;
    for (auto& p : c.points) {
      if (std::abs(p[0]) > std::acos(-1.0) / 2) break;
      double t = std::tan(p[0] / 2);
      ++checked;
      reach = std::max(reach, std::abs(t));
      EXPECT_NEAR(p[1], 2 * std::atan(5 * t), 1e-6);
      EXPECT_NEAR(p[2], std::log((1 + 25 * t * t) / (5 * (1 + t * t))), 1e-6);
    }
    EXPECT_GT(checked, 100);
    EXPECT_GT(reach, 0.99);
  }
}

TEST(Asymptotic, ScherkFamilyThroughOrigin) {
  // from (0,0,0) the asymptotic lines are X = Y, Z = 0 and the Z axis
  auto f = scherk_function();
  auto c = asymptotic_curve(f, {0, 0, 0}, 50, 0.02, {1, 1, 0});
  for (auto& p : c.points) {
    EXPECT_NEAR(p[0], p[1], 1e-9);
    EXPECT_NEAR(p[2], 0, 1e-9);
  }
  auto z = asymptotic_curve(f, {0, 0, 0}, 50, 0.02, {1, 1, 0}, -1);
  for (auto& p : z.points) EXPECT_NEAR(std::hypot(p[0], p[1]), 0, 1e-9);
}

TEST(Asymptotic, OdeResidual) {
  // along tan(X/2) = c tan(Y/2): X'/sin X = Y'/sin Y
  auto f = scherk_function();
  auto c = asymptotic_curve(f, {0.6, std::asin(std::sin(0.6) / std::exp(0.2)), 0.2}, 200, 0.005, {1, 0, 0});
  for (std::size_t k = 1; k + 1 < c.points.size(); ++k) {
    auto &a = c.points[k - 1], &b = c.points[k + 1], &p = c.points[k];
    double xd = (b[0] - a[0]) / 0.01, yd = (b[1] - a[1]) / 0.01;
    double r1 = std::abs(xd / std::sin(p[0]) - yd / std::sin(p[1]));
    double r2 = std::abs(xd / std::sin(p[0]) + yd / std::sin(p[1]));
    EXPECT_LT(std::min(r1, r2), 1e-4);
  }
}

TEST(Asymptotic, PlaneIsParabolic) {
  SurfaceFunction plane{[](const RVec3& p) { return p[2]; }, [](const RVec3&) { return RVec3{0, 0, 1}; },
                        [](const RVec3&) { return Mat3<double>{}; }};
  EXPECT_THROW(asymptotic_curve(plane, {0, 0, 0}, 10, 0.1, {1, 0, 0}), ParabolicPoint);
}

TEST(Asymptotic, NumericDerivativesAgree) {
  auto f = scherk_function();
  auto g = numeric_derivatives(f.value);
  RVec3 p{0.3, 0.4, std::log(std::sin(0.3) / std::sin(0.4))};
  auto a = asymptotic_directions(f, p), b = asymptotic_directions(g, p);
  for (int k = 0; k < 2; ++k) {
    double d = std::abs(a[k][0] * b[k][0] + a[k][1] * b[k][1] + a[k][2] * b[k][2]);
    EXPECT_NEAR(d, 1, 1e-6);
  }
}

TEST(Asymptotic, RejectsStartOffSurface) {
  EXPECT_THROW(asymptotic_curve(scherk_function(), {0.1, 0, 0}, 1, 0.1, {1, 0, 0}), InputError);
}

TEST(Asymptotic, TrottThetaSurface) {
  auto& d = trott_data();
  Mat3<double> A;
  auto inv = inv3(d.pm.pi_alpha);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A[i][j] = inv[i][j].real();
  auto f = theta_function(A, d.rr.B, ThetaCharacteristic({1, 1, 1}, {0, 0, 1}));
  auto [p1, p2] = trott::base_points();
  auto s = sample_surface(d.q, p1, p2, {{0.01, -0.01}}, 1e-13);
  RVec3 X{s.points[0][0].real(), s.points[0][1].real(), s.points[0][2].real()};
  EXPECT_LT(std::abs(f.value(X)), 1e-10);
  // a short asymptotic arc stays on the surface
  auto g = f.gradient(X);
  RVec3 hint{g[1], -g[0], 0};
  try {
    auto c = asymptotic_curve(f, X, 5, 1e-4, hint);
    for (auto& p : c.points) EXPECT_LT(std::abs(f.value(p)), 1e-10);
  } catch (const ParabolicPoint&) {
    SUCCEED();  // elliptic there: no real asymptotic direction
  }
}

TEST(Bridge, SecondScherkRepresentation) {
  // the c = 1/5 trajectory doubled: X = atan s + atan t, Y = atan 5s + atan 5t,
  // Z = 1/2 log((1+25s^2)/(5(1+s^2))) + same in t
  QNum I = QNum::i(), h = QNum::frac(1, 2), i5 = QNum::i() * QNum::frac(1, 5);
  auto atan_part = [&](QNum r) {
    Antiderivative a;
    a.logs.push_back({-I * h, r, 1});
    a.logs.push_back({I * h, -r, 1});
    return a;
  };
  Antiderivative z;
  z.logs = {{h, i5, 5}, {h, -i5, 5}, {-h, I, 5}, {-h, -I, 1}};
  LogParametrization p;
  p.coords[0] = {atan_part(I), atan_part(I)};
  p.coords[1] = {atan_part(i5), atan_part(i5)};
  p.coords[2] = {z, z};
  // (i, i, 1) needs two square roots on one side; doubling makes it rational
  EXPECT_THROW(implicitize(p, {I, I, QNum(1)}), NotImplicitizable);
  auto psi2 = implicitize(p, {I * 2, I * 2, QNum(2)}).psi;
  auto uvw = [](const std::string& s) { return parse_mpoly(s, {"u", "v", "w"}); };
  auto lifted = psi2.substitute({uvw("u^2"), uvw("v^2"), uvw("w^2")});
  MPoly scherk = uvw("u*v^2*w - u^2*v - u*w + v");
  EXPECT_NO_THROW(lifted.exact_div(scherk));
  EXPECT_TRUE(lifted.exact_div(scherk).total_degree() == lifted.total_degree() - scherk.total_degree());
  // and the numeric trajectory lies on it
  auto f = scherk_function();
  auto c = asymptotic_curve(f, {0, 0, -std::log(5.0)}, 200, 0.005, {1, 5, 0});
  for (auto& q : c.points) {
    std::vector<std::complex<double>> x{std::exp(cd(0, 2 * q[0])), std::exp(cd(0, 2 * q[1])), std::exp(2 * q[2])};
    EXPECT_LT(std::abs(psi2.eval_c(x)), 1e-9);
  }
}
