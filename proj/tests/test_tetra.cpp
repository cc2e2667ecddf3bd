#include <gtest/gtest.h>

#include <random>

#include "thetasurf/exact/parse.hpp"
#include "thetasurf/tetra.hpp"

using namespace thetasurf;

namespace {

TetraPlane ex_plane() { return TetraPlane(1, 1, -3, -1); }  // U + V - 3W + T = 0

MPoly uvw(const std::string& s) { return parse_mpoly(s, {"u", "v", "w"}); }

// Leibniz expansion, independent of tangency_det
QNum leibniz(const LinePairParams& p) {
  QNum m[3][3] = {{p.a, p.b, p.a * p.b}, {p.c, p.d, p.c * p.d}, {p.e, p.f, p.e * p.f}};
  const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  QNum s(0);
  for (int k = 0; k < 6; ++k) {
    QNum t = m[0][perm[k][0]] * m[1][perm[k][1]] * m[2][perm[k][2]];
    s = k < 3 ? s + t : s - t;
  }
  return s;
}

QNum rnd(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> n(-9, 9), d(1, 5);
  long v = 0;
  while (v == 0) v = n(rng);
  return QNum::frac(v, d(rng));
}

}  // namespace

TEST(TetraPlane, Validation) {
  EXPECT_NO_THROW(ex_plane());
  EXPECT_THROW(TetraPlane(1, 1, -3, 1), InputError);
  EXPECT_THROW(TetraPlane(0, 1, 1, 2), InputError);
  EXPECT_TRUE(TetraPlane::through_one(2, 3, 5).delta == QNum(10));
}

TEST(SolveFamily, WorkedExample) {
  auto sol = solve_family(ex_plane(), 1, 0);
  ASSERT_TRUE(sol.family);
  auto& F = *sol.family;
  EXPECT_TRUE(F.c == RatFn(1));
  EXPECT_TRUE(F.d == -RatFn::var());
  EXPECT_TRUE(F.e == RatFn(QNum::frac(2, 3)));
  EXPECT_TRUE(F.det().is_zero());
  EXPECT_TRUE(F.excluded.is_zero());
}

TEST(SolveFamily, EqualColumnsTrivial) {
  // rows (x, x, x^2): the first two columns agree, so the determinant vanishes
  LinePairParams p{2, 2, QNum::frac(1, 3), QNum::frac(1, 3), 5, 5};
  EXPECT_TRUE(tangency_det(p).is_zero());
}

TEST(SolveFamily, RandomPlanesPassHadamard) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 30; ++k) {
    QNum al = rnd(rng), be = rnd(rng), ga = rnd(rng);
    if ((al + be + ga).is_zero()) continue;
    auto P = TetraPlane::through_one(al, be, ga);
    auto sol = solve_family(P, rnd(rng), rnd(rng));
    ASSERT_TRUE(sol.family);
    EXPECT_TRUE(sol.family->det().is_zero());
    QNum b = rnd(rng);
    if (!sol.family->excluded.is_zero() && sol.family->excluded(b).is_zero()) continue;
    auto p = sol.family->at(b);
    EXPECT_TRUE(hadamard_check(p, P, 25, 0).exact_zero);
  }
}

TEST(SolveFamily, ConstraintOnB) {
  // alpha b + (beta + gamma) f = 0 pins b; here b = 2 with a = f = 1
  auto P = ex_plane();
  auto sol = solve_family(P, 1, 1, QNum(2));
  EXPECT_FALSE(sol.family);
  ASSERT_TRUE(sol.constraint);
  EXPECT_LE(sol.constraint->degree(), 2);
  EXPECT_FALSE((*sol.constraint)(QNum(2)).is_zero());  // b = 2 is not a solution
  // with b free the family exists for all b but a finite set
  auto free = solve_family(P, 1, 1);
  ASSERT_TRUE(free.family);
  EXPECT_TRUE(free.family->det().is_zero());
  EXPECT_LE(free.family->excluded.degree(), 2);
}

TEST(SolveFamily, PointDegeneration) {
  // b = f = 0 makes the second line a point; e is then free
  EXPECT_THROW(solve_family(ex_plane(), 1, 0, QNum(0)), DegenerateConfiguration);
}

TEST(TangencyDet, Values) {
  EXPECT_TRUE(tangency_det({1, 0, 0, 1, 1, 1}) == QNum(1));
  for (long b : {-3L, 1L, 7L}) EXPECT_TRUE(tangency_det({1, b, 1, -b, QNum::frac(2, 3), 0}).is_zero());
}

TEST(TangencyDet, LeibnizOracle) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    LinePairParams p{rnd(rng), rnd(rng), rnd(rng), rnd(rng), rnd(rng), rnd(rng)};
    EXPECT_TRUE(tangency_det(p) == leibniz(p));
  }
}

TEST(Hadamard, WorkedExample) {
  auto p = solve_family(ex_plane(), 1, 0).family->at(2);
  auto r = hadamard_check(p, ex_plane(), 16, 0);
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(r.exact_zero);
  EXPECT_EQ(r.max_defect, 0);
}

TEST(Hadamard, PerturbedFails) {
  auto p = solve_family(ex_plane(), 1, 0).family->at(2);
  p.e = p.e + QNum::frac(1, 100);
  auto r = hadamard_check(p, ex_plane(), 16, 1e-9);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.exact_zero);
}

TEST(Hadamard, BZeroBoundary) {
  auto p = solve_family(ex_plane(), 1, 0).family->at(0);
  EXPECT_TRUE(hadamard_check(p, ex_plane(), 10, 0).exact_zero);
}

TEST(Hadamard, RejectsFewSamples) {
  EXPECT_THROW(hadamard_check({1, 1, 1, 1, 1, 1}, ex_plane(), 9, 0), InputError);
}

TEST(Hadamard, EquivalenceWithDeterminant) {
  // lines in the plane: hadamard exact <=> det = 0, away from parallel lines (a f = b e)
  std::mt19937_64 rng(3);
  int on = 0, off = 0;
  for (int k = 0; k < 100; ++k) {
    QNum al = rnd(rng), be = rnd(rng), ga = rnd(rng);
    if ((al + be + ga).is_zero()) continue;
    auto P = TetraPlane::through_one(al, be, ga);
    QNum a = rnd(rng), b = rnd(rng), f = rnd(rng);
    QNum e = rnd(rng);
    if (k % 2 == 0) {
      auto sol = solve_family(P, a, f, b);
      if (!sol.family) continue;
      e = sol.family->e(QNum(0));
    }
    if ((a * f - b * e).is_zero()) continue;
    LinePairParams p{a, b, -(al * a + ga * e) / be, -(al * b + ga * f) / be, e, f};
    bool det0 = tangency_det(p).is_zero();
    EXPECT_EQ(hadamard_check(p, P, 16, 0).exact_zero, det0);
    (det0 ? on : off)++;
  }
  EXPECT_GT(on, 20);
  EXPECT_GT(off, 20);
}

TEST(Hadamard, ParallelLinesBreakEquivalence) {
  // e = a f / b: det vanishes but the product is not the plane
  auto P = ex_plane();
  QNum a = 1, b = 2, f = 3, e = a * f / b;
  LinePairParams p{a, b, -(P.alpha * a + P.gamma * e) / P.beta, -(P.alpha * b + P.gamma * f) / P.beta, e, f};
  EXPECT_TRUE(tangency_det(p).is_zero());
  EXPECT_FALSE(hadamard_check(p, P, 16, 0).exact_zero);
}

TEST(GeneratingCurves, WorkedExample) {
  auto P = ex_plane();
  auto p = solve_family(P, 1, 0).family->at(2);
  auto lp = generating_curves(P, p);
  // Z has no t part, and its s part is log(1 + 2/3 s)
  EXPECT_TRUE(lp.coords[2].t_part.logs.empty());
  ASSERT_EQ(lp.coords[2].s_part.logs.size(), 1u);
  EXPECT_TRUE(lp.coords[2].s_part.logs[0].root == QNum::frac(-3, 2));
  EXPECT_TRUE(lp.coords[2].s_part.logs[0].lead == QNum::frac(2, 3));
  auto eq = implicitize(lp, {QNum(1), QNum(1), QNum(1)});
  EXPECT_TRUE(equal_up_to_scalar(eq.psi, uvw("u + v - 3*w + 1")));
}

TEST(GeneratingCurves, IndependentOfB) {
  auto P = ex_plane();
  auto F = *solve_family(P, 1, 0).family;
  for (long b : {1L, -4L, 9L}) {
    auto eq = implicitize(generating_curves(P, F.at(b)), {QNum(1), QNum(1), QNum(1)});
    EXPECT_TRUE(equal_up_to_scalar(eq.psi, uvw("u + v - 3*w + 1")));
  }
}

TEST(GeneratingCurves, SymmetricPlane) {
  auto P = TetraPlane::through_one(1, 1, -1);  // U + V - W = 1
  auto p = solve_family(P, 2, 1).family->at(3);
  auto psi = implicitize(generating_curves(P, p), {QNum(1), QNum(1), QNum(1)}).psi;
  auto swapped = psi.substitute({MPoly::var(3, 1), MPoly::var(3, 0), MPoly::var(3, 2)});
  EXPECT_TRUE(equal_up_to_scalar(psi, swapped));
}

TEST(GeneratingCurves, RejectsNonHadamard) {
  EXPECT_THROW(generating_curves(ex_plane(), {1, 1, 1, 1, 1, 1}), InputError);
}
