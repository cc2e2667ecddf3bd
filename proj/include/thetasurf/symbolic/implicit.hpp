#ifndef THETASURF_SYMBOLIC_IMPLICIT_HPP
#define THETASURF_SYMBOLIC_IMPLICIT_HPP

#include <array>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "../exact/linsolve.hpp"
#include "../exact/modular.hpp"
#include "integrate.hpp"

namespace thetasurf {

// X = s_part(s) + t_part(t), and likewise for Y, Z.
struct LogCoordinate {
  Antiderivative s_part, t_part;
};

struct LogParametrization {
  std::array<LogCoordinate, 3> coords;

  bool has_logs() const {
    for (auto& c : coords)
      if (c.s_part.has_logs() || c.t_part.has_logs()) return true;
    return false;
  }
  std::string str() const {
    std::string out;
    const char* n[3] = {"X", "Y", "Z"};
    for (int k = 0; k < 3; ++k)
      out += std::string(n[k]) + " = " + coords[k].s_part.str("s") + "  +  " + coords[k].t_part.str("t") + "\n";
    return out;
  }
};

struct ImplicitEquation {
  MPoly psi;                 // in (u, v, w) or (X, Y, Z)
  std::array<QNum, 3> exps;  // (alpha, beta, gamma); all 1 for the rational case
  bool exponential = true;   // false: psi is directly in X, Y, Z
};

inline LogParametrization parametrize_theta_surface(const MPoly& q, const ComponentParam& c1,
                                                    const ComponentParam& c2) {
  LogParametrization p;
  for (int j = 0; j < 3; ++j) {
    p.coords[j].s_part = integrate_on_component(q, c1, j + 1);
    p.coords[j].t_part = integrate_on_component(q, c2, j + 1);
  }
  return p;
}

namespace detail {

inline bool is_integer(const mpq_class& q) { return q.get_den() == 1; }
inline bool is_half(const mpq_class& q) { return q.get_den() == 2; }

// Exponent alpha*c of every log term on one side, or nullopt if some is not rational.
struct SideExps {
  std::vector<std::pair<QNum, mpq_class>> root_exp;  // (root, alpha*coef)
};

inline std::optional<SideExps> side_exponents(const Antiderivative& a, const QNum& alpha) {
  SideExps out;
  for (auto& l : a.logs) {
    QNum e = alpha * l.coef;
    if (!e.is_rational()) return std::nullopt;
    out.root_exp.push_back({l.root, e.a()});
  }
  return out;
}

// Per side: the half-integer roots must be exactly one pair whose exponents
// add up to an integer in each coordinate. Returns the pair (or nothing if all
// exponents are integers). Throws the reason otherwise.
struct HalfPair {
  bool present = false;
  QNum r1, r2;
};

inline std::optional<HalfPair> half_pair(const std::vector<SideExps>& sides) {
  std::vector<QNum> roots;
  for (auto& s : sides)
    for (auto& [r, e] : s.root_exp) {
      if (!is_integer(e) && !is_half(e)) return std::nullopt;
      if (is_half(e)) {
        bool seen = false;
        for (auto& x : roots) seen = seen || x == r;
        if (!seen) roots.push_back(r);
      }
    }
  HalfPair hp;
  if (roots.empty()) return hp;
  if (roots.size() != 2) return std::nullopt;
  for (auto& s : sides) {
    mpq_class sum = 0;
    for (auto& [r, e] : s.root_exp)
      if (r == roots[0] || r == roots[1]) sum += e;
    if (!is_integer(sum)) return std::nullopt;
  }
  hp.present = true;
  hp.r1 = roots[0];
  hp.r2 = roots[1];
  return hp;
}

// Unit u in {1, i} and the rational multipliers q with coef = q*u.
inline std::optional<QNum> common_unit(const std::vector<QNum>& coefs) {
  std::optional<QNum> unit;
  for (auto& c : coefs) {
    QNum u;
    if (c.is_rational())
      u = QNum(1);
    else if (c.d() == -1 && sgn(c.a()) == 0)
      u = QNum::i();
    else
      return std::nullopt;
    if (unit && !(*unit == u)) return std::nullopt;
    unit = u;
  }
  return unit ? unit : std::optional<QNum>(QNum(1));
}

inline mpz_class lcm_den(const std::vector<mpq_class>& v) {
  mpz_class l = 1;
  for (auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

}  // namespace detail

// Smallest positive multiples k*unit making every exp rational after at most
// one square-root substitution per parameter; ties prefer smaller |alpha|+|beta|+|gamma|.
inline std::array<QNum, 3> auto_exponents(const LogParametrization& p) {
  std::array<std::array<QNum, 2>, 3> cand;  // [coordinate][half allowed?]
  std::array<bool, 3> half_ok{};
  for (int j = 0; j < 3; ++j) {
    const auto& c = p.coords[j];
    if (!c.s_part.rational.is_zero() || !c.t_part.rational.is_zero())
      throw NotUnitCommensurable("coordinate " + std::to_string(j + 1) + " has a non-logarithmic part");
    std::vector<QNum> coefs;
    for (auto* a : {&c.s_part, &c.t_part})
      for (auto& l : a->logs) coefs.push_back(l.coef);
    auto unit = detail::common_unit(coefs);
    if (!unit) throw NotUnitCommensurable("coordinate " + std::to_string(j + 1) + " mixes real and imaginary log coefficients");
    std::vector<mpq_class> qs;
    for (auto& cf : coefs) qs.push_back(cf.is_rational() ? cf.a() : cf.b());
    mpz_class L = detail::lcm_den(qs);
    // alpha = k / unit so that alpha*coef = k*q
    QNum inv_unit = QNum(1) / *unit;
    cand[j][0] = QNum(mpq_class(L)) * inv_unit;
    half_ok[j] = L % 2 == 0;
    cand[j][1] = half_ok[j] ? QNum(mpq_class(L / 2)) * inv_unit : cand[j][0];
    // k/unit with unit = i gives -k i; flip to the positive leading convention
    for (auto& a : cand[j]) {
      int sign = a.is_rational() ? sgn(a.a()) : sgn(a.b());
      if (sign < 0) a = -a;
    }
  }
  std::optional<std::array<QNum, 3>> best;
  double best_size = 0;
  for (int mask = 7; mask >= 0; --mask) {
    std::array<QNum, 3> ex;
    for (int j = 0; j < 3; ++j) ex[j] = cand[j][(mask >> (2 - j)) & 1];
    bool ok = true;
    for (int side = 0; side < 2 && ok; ++side) {
      std::vector<detail::SideExps> sides;
      for (int j = 0; j < 3; ++j) {
        auto s = detail::side_exponents(side == 0 ? p.coords[j].s_part : p.coords[j].t_part, ex[j]);
        if (!s) {
          ok = false;
          break;
        }
        sides.push_back(*s);
      }
      auto hp = detail::half_pair(sides);
      // half-integer exponents only across a conjugate pair of non-real roots
      ok = ok && hp && (!hp->present || (hp->r1.to_complex().imag() != 0 && hp->r1.conj() == hp->r2));
    }
    if (!ok) continue;
    double size = 0;
    for (auto& a : ex) size += std::abs(a.to_complex());
    if (!best || size < best_size - 1e-12) {
      best = ex;
      best_size = size;
    }
  }
  if (!best) throw NotUnitCommensurable("no exponent choice makes the parametrization rational");
  return *best;
}

namespace detail {

// One coordinate as a function of (sigma, tau): a(sigma) op b(tau), op = * or +.
struct SplitCoord {
  RatFn a, b;
  bool product;
};

struct CoordValue {
  QNum num, den;
};

inline CoordValue eval_split(const SplitCoord& c, const QNum& s, const QNum& t) {
  QNum an = c.a.num()(s), ad = c.a.den()(s), bn = c.b.num()(t), bd = c.b.den()(t);
  if (c.product) return {an * bn, ad * bd};
  return {an * bd + bn * ad, ad * bd};
}

inline int split_degree(const RatFn& f) { return std::max(f.num().degree(), f.den().degree()); }

inline std::vector<Exps> monomials_upto(int d) {
  std::vector<Exps> out;
  for (int t = 0; t <= d; ++t)
    for (int a = t; a >= 0; --a)
      for (int b = t - a; b >= 0; --b) out.push_back({a, b, t - a - b});
  return out;
}

// Psi(c0, c1, c2) == 0 identically: the cleared numerator is a polynomial in
// (sigma, tau) of bounded bidegree, so vanishing on a large enough grid proves it.
inline bool certify(const MPoly& psi, const std::array<SplitCoord, 3>& c) {
  int ds = 0, dt = 0;
  std::array<int, 3> deg;
  for (int k = 0; k < 3; ++k) {
    deg[k] = std::max(0, psi.degree_in(k));
    ds += deg[k] * split_degree(c[k].a);
    dt += deg[k] * split_degree(c[k].b);
  }
  for (int i = 0; i <= ds; ++i)
    for (int j = 0; j <= dt; ++j) {
      QNum s((long)i - ds / 2), t((long)j - dt / 2);
      std::array<CoordValue, 3> v;
      for (int k = 0; k < 3; ++k) v[k] = eval_split(c[k], s, t);
      QNum acc(0);
      for (auto& [e, cf] : psi.terms()) {
        QNum m = cf;
        for (int k = 0; k < 3; ++k) m *= v[k].num.pow(e[k]) * v[k].den.pow(deg[k] - e[k]);
        acc += m;
      }
      if (!acc.is_zero()) return false;
    }
  return true;
}

constexpr int kMaxImplicitDegree = 8;

inline bool all_rational(const std::array<SplitCoord, 3>& c) {
  for (auto& sc : c)
    for (auto* f : {&sc.a, &sc.b})
      for (auto* p : {&f->num(), &f->den()})
        for (auto& q : p->coeffs())
          if (!q.is_rational()) return false;
  return true;
}

// Coordinate values (num, den) at distinct sample points with nonzero denominators.
inline std::vector<std::array<CoordValue, 3>> sample_values(const std::array<SplitCoord, 3>& c, int count, int seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 3);
  std::set<std::pair<std::string, std::string>> used;
  std::vector<std::array<CoordValue, 3>> out;
  int attempts = 0;
  while ((int)out.size() < count) {
    if (++attempts > 200 * count) throw NotImplicitizable("could not find regular sample points");
    QNum s = QNum(mpq_class(num(rng), den(rng))), t = QNum(mpq_class(num(rng), den(rng)));
    if (!used.insert({s.str(), t.str()}).second) continue;
    std::array<CoordValue, 3> v;
    bool bad = false;
    for (int k = 0; k < 3; ++k) {
      v[k] = eval_split(c[k], s, t);
      if (v[k].den.is_zero()) bad = true;
    }
    if (!bad) out.push_back(v);
  }
  return out;
}

// Row of cleared monomials N^e D^(d-e) for one sample point.
template <class T, class Mul>
std::vector<T> monomial_row(const std::array<std::array<T, 2>, 3>& nd, const std::vector<Exps>& mons, int d, T one,
                            Mul mul) {
  std::array<std::vector<T>, 3> np, dp;
  for (int k = 0; k < 3; ++k) {
    np[k].push_back(one);
    dp[k].push_back(one);
    for (int e = 1; e <= d; ++e) {
      np[k].push_back(mul(np[k].back(), nd[k][0]));
      dp[k].push_back(mul(dp[k].back(), nd[k][1]));
    }
  }
  std::vector<T> row;
  row.reserve(mons.size());
  for (auto& e : mons) {
    T m = one;
    for (int k = 0; k < 3; ++k) m = mul(m, mul(np[k][e[k]], dp[k][d - e[k]]));
    row.push_back(m);
  }
  return row;
}

// Kernel over Q by reduction modulo several primes and rational reconstruction.
// Returns nullopt when the degree has no relation; throws when it is not unique.
inline std::optional<MPoly> modular_relation(const std::vector<std::array<CoordValue, 3>>& pts,
                                             const std::vector<Exps>& mons, int d) {
  int n = (int)mons.size();
  mpz_class modulus = 1;
  std::vector<mpz_class> acc(n, 0);
  std::optional<std::vector<mpq_class>> prev;
  for (int pi = 0; pi < 60; ++pi) {
    u64 p = nth_prime(pi);
    std::vector<std::vector<u64>> rows;
    bool bad = false;
    for (auto& v : pts) {
      std::array<std::array<u64, 2>, 3> nd;
      for (int k = 0; k < 3 && !bad; ++k) {
        auto a = mod_of(v[k].num.a(), p), b = mod_of(v[k].den.a(), p);
        if (!a || !b) bad = true;
        else nd[k] = {*a, *b};
      }
      if (bad) break;
      rows.push_back(monomial_row<u64>(nd, mons, d, 1, [p](u64 x, u64 y) { return mulmod(x, y, p); }));
    }
    if (bad) continue;
    std::vector<u64> vec;
    int dim = kernel_mod_p(rows, n, p, vec);
    if (dim == 0) return std::nullopt;
    if (dim > 1) {
      if (pi < 2) continue;  // unlucky prime, retry
      throw NotImplicitizable("relation is not unique at degree " + std::to_string(d));
    }
    // CRT update
    mpz_class mp((unsigned long)p), inv;
    mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), mp.get_mpz_t());
    for (int k = 0; k < n; ++k) {
      mpz_class ak = acc[k] % mp;
      if (ak < 0) ak += mp;
      mpz_class diff = (mpz_class((unsigned long)vec[k]) - ak) % mp;
      if (diff < 0) diff += mp;
      mpz_class h = (diff * inv) % mp;
      acc[k] += modulus * h;
    }
    modulus *= mp;
    std::vector<mpq_class> rec;
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      auto r = rational_reconstruct(acc[k], modulus);
      if (!r) ok = false;
      else rec.push_back(*r);
    }
    if (!ok) continue;
    if (prev && *prev == rec) {
      MPoly psi(3);
      for (int k = 0; k < n; ++k) psi.add_term(mons[k], QNum(rec[k]));
      return psi;
    }
    prev = rec;
  }
  throw EliminationOverflow("modular reconstruction did not stabilize");
}

inline std::optional<MPoly> exact_relation(const std::vector<std::array<CoordValue, 3>>& pts,
                                           const std::vector<Exps>& mons, int d) {
  int n = (int)mons.size();
  QMatrix rows;
  for (auto& v : pts) {
    std::array<std::array<QNum, 2>, 3> nd;
    for (int k = 0; k < 3; ++k) nd[k] = {v[k].num, v[k].den};
    rows.push_back(monomial_row<QNum>(nd, mons, d, QNum(1), [](const QNum& x, const QNum& y) { return x * y; }));
  }
  auto ker = nullspace(rows, n);
  if (ker.empty()) return std::nullopt;
  if (ker.size() > 1) throw NotImplicitizable("relation is not unique at degree " + std::to_string(d));
  MPoly psi(3);
  for (int k = 0; k < n; ++k) psi.add_term(mons[k], ker[0][k]);
  return psi;
}

// Minimal-degree polynomial relation among three split coordinates, by exact
// interpolation at sample points followed by certification.
inline MPoly find_relation(const std::array<SplitCoord, 3>& c) {
  bool rational = all_rational(c);
  for (int d = 1; d <= kMaxImplicitDegree; ++d) {
    auto mons = monomials_upto(d);
    auto pts = sample_values(c, (int)mons.size() + 6, 2024 + d);
    auto psi = rational ? modular_relation(pts, mons, d) : exact_relation(pts, mons, d);
    if (!psi) continue;
    MPoly out = psi->normalized();
    if (!certify(out, c))
      throw NotImplicitizable("interpolated relation failed certification: " + out.str({"u", "v", "w"}));
    return out;
  }
  throw EliminationOverflow("no relation up to degree " + std::to_string(kMaxImplicitDegree));
}

// exp(alpha * side) as a rational function after the optional substitution
// s = (r1 - r2 sigma^2) / (1 - sigma^2).
inline RatFn exp_side(const Antiderivative& a, const QNum& alpha, const HalfPair& hp, const RatFn& s_of_sigma) {
  RatFn out(1);
  mpq_class pair_sum = 0;
  QNum e1(0);
  for (auto& l : a.logs) {
    QNum ec = alpha * l.coef;
    mpq_class e = ec.a();
    if (!l.lead.is_one()) {
      if (is_integer(e))
        out *= RatFn(l.lead.pow(e.get_num().get_si()));
      else {
        if (!l.lead.is_rational()) throw NotImplicitizable("irrational lead under a square root");
        QNum r = sqrt_rational(l.lead.a());
        out *= RatFn(r.pow(mpq_class(2 * e).get_num().get_si()));
      }
    }
    bool in_pair = hp.present && (l.root == hp.r1 || l.root == hp.r2);
    if (!in_pair) {
      out *= (s_of_sigma - RatFn(l.root)).pow(e.get_num().get_si());
      continue;
    }
    pair_sum += e;
    if (l.root == hp.r1) e1 = QNum(e);
  }
  if (hp.present) {
    // (s-r1)^e1 (s-r2)^e2 = sigma^(2 e1) (s-r2)^(e1+e2)
    long twice = mpq_class(2 * e1.a()).get_num().get_si();
    out *= RatFn::var().pow((int)twice);
    out *= (s_of_sigma - RatFn(hp.r2)).pow((int)pair_sum.get_num().get_si());
  }
  return out;
}

}  // namespace detail

inline ImplicitEquation implicitize(const LogParametrization& p, const std::array<QNum, 3>& exps) {
  for (int j = 0; j < 3; ++j) {
    if (!p.coords[j].s_part.rational.is_zero() || !p.coords[j].t_part.rational.is_zero())
      throw NotImplicitizable("exp of a coordinate with a rational part is not rational");
    if (exps[j].is_zero()) throw InputError("exponents must be nonzero");
  }
  std::array<detail::SplitCoord, 3> sc;
  std::array<RatFn, 2> subst;
  std::array<detail::HalfPair, 2> pairs;
  for (int side = 0; side < 2; ++side) {
    std::vector<detail::SideExps> sides;
    for (int j = 0; j < 3; ++j) {
      auto s = detail::side_exponents(side == 0 ? p.coords[j].s_part : p.coords[j].t_part, exps[j]);
      if (!s) throw NotImplicitizable("exponent times log coefficient is not rational");
      sides.push_back(*s);
    }
    auto hp = detail::half_pair(sides);
    if (!hp) throw NotImplicitizable("exponents do not make the coordinates single-valued");
    pairs[side] = *hp;
    if (hp->present) {
      RatFn sg = RatFn::var();
      subst[side] = (RatFn(hp->r1) - RatFn(hp->r2) * sg * sg) / (RatFn(1) - sg * sg);
    } else {
      subst[side] = RatFn::var();
    }
  }
  for (int j = 0; j < 3; ++j) {
    sc[j].a = detail::exp_side(p.coords[j].s_part, exps[j], pairs[0], subst[0]);
    sc[j].b = detail::exp_side(p.coords[j].t_part, exps[j], pairs[1], subst[1]);
    sc[j].product = true;
  }
  return {detail::find_relation(sc), exps, true};
}

inline ImplicitEquation implicitize_rational(const LogParametrization& p) {
  if (p.has_logs()) throw NotImplicitizable("parametrization has logarithmic terms");
  std::array<detail::SplitCoord, 3> sc;
  for (int j = 0; j < 3; ++j) sc[j] = {p.coords[j].s_part.rational, p.coords[j].t_part.rational, false};
  return {detail::find_relation(sc), {QNum(1), QNum(1), QNum(1)}, false};
}

// Same surface after rescaling u, v, w by fourth roots of unity (the effect of
// shifting X, Y, Z by integration constants) and multiplying by a scalar.
inline bool equal_up_to_torus_units(const MPoly& a, const MPoly& b) {
  const QNum units[4] = {QNum(1), QNum::i(), QNum(-1), -QNum::i()};
  for (auto& cu : units)
    for (auto& cv : units)
      for (auto& cw : units) {
        std::vector<MPoly> sub{MPoly::var(3, 0).scaled(cu), MPoly::var(3, 1).scaled(cv), MPoly::var(3, 2).scaled(cw)};
        if (equal_up_to_scalar(a.substitute(sub), b)) return true;
      }
  return false;
}

}  // namespace thetasurf

#endif
