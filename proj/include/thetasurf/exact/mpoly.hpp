#ifndef THETASURF_EXACT_MPOLY_HPP
#define THETASURF_EXACT_MPOLY_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "qnum.hpp"
#include "upoly.hpp"

namespace thetasurf {

using Exps = std::vector<int>;

// graded lex, ascending; the last key in a map is the leading monomial
struct GrLex {
  bool operator()(const Exps& a, const Exps& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0), db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a < b;
  }
};

// Sparse multivariate polynomial over QNum in a fixed number of variables.
class MPoly {
 public:
  using Terms = std::map<Exps, QNum, GrLex>;

  MPoly() = default;
  explicit MPoly(int nvars) : n_(nvars) {}
  MPoly(int nvars, const QNum& c) : n_(nvars) {
    if (!c.is_zero()) t_[Exps(nvars, 0)] = c;
  }
  static MPoly var(int nvars, int k) {
    MPoly p(nvars);
    Exps e(nvars, 0);
    e[k] = 1;
    p.t_[e] = QNum(1);
    return p;
  }
  static MPoly monomial(const Exps& e, const QNum& c) {
    MPoly p((int)e.size());
    if (!c.is_zero()) p.t_[e] = c;
    return p;
  }

  int nvars() const { return n_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  int total_degree() const {
    int d = -1;
    for (auto& [e, c] : t_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
  }
  int degree_in(int k) const {
    int d = -1;
    for (auto& [e, c] : t_) d = std::max(d, e[k]);
    return d;
  }
  QNum coeff(const Exps& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? QNum(0) : it->second;
  }
  const Exps& lead_exps() const { return t_.rbegin()->first; }
  const QNum& lead_coeff() const { return t_.rbegin()->second; }

  void add_term(const Exps& e, const QNum& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& [e, c] : r.t_) c = -c;
    return r;
  }
  MPoly& operator+=(const MPoly& o) {
    adopt(o);
    for (auto& [e, c] : o.t_) add_term(widen(e), c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    adopt(o);
    for (auto& [e, c] : o.t_) add_term(widen(e), -c);
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.n_ != b.n_) {
      MPoly wa(std::max(a.n_, b.n_)), wb(wa.n_);
      wa += a;
      wb += b;
      return wa * wb;
    }
    MPoly r(a.n_);
    Exps e(r.n_);
    for (auto& [ea, ca] : a.t_)
      for (auto& [eb, cb] : b.t_) {
        for (int k = 0; k < r.n_; ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }

  MPoly scaled(const QNum& s) const {
    if (s.is_zero()) return MPoly(n_);
    MPoly r = *this;
    for (auto& [e, c] : r.t_) c *= s;
    return r;
  }
  MPoly pow(int k) const {
    MPoly r(n_, QNum(1)), b = *this;
    while (k) {
      if (k & 1) r *= b;
      b *= b;
      k >>= 1;
    }
    return r;
  }
  MPoly derivative(int k) const {
    MPoly r(n_);
    for (auto& [e, c] : t_)
      if (e[k] > 0) {
        Exps f = e;
        f[k] -= 1;
        r.add_term(f, c * QNum((long)e[k]));
      }
    return r;
  }

  QNum eval(const std::vector<QNum>& x) const {
    // Horner would be nicer; sizes here are small
    std::vector<std::vector<QNum>> pw(n_);
    QNum s(0);
    for (auto& [e, c] : t_) {
      QNum m = c;
      for (int k = 0; k < n_; ++k) {
        if (e[k] == 0) continue;
        auto& cache = pw[k];
        if (cache.empty()) cache.push_back(QNum(1));
        while ((int)cache.size() <= e[k]) cache.push_back(cache.back() * x[k]);
        m *= cache[e[k]];
      }
      s += m;
    }
    return s;
  }
  template <class T>
  std::complex<T> eval_c(const std::vector<std::complex<T>>& x) const {
    std::complex<T> s(0);
    for (auto& [e, c] : t_) {
      auto z = c.to_complex_ld();
      std::complex<T> m(T(z.real()), T(z.imag()));
      for (int k = 0; k < n_; ++k)
        for (int j = 0; j < e[k]; ++j) m *= x[k];
      s += m;
    }
    return s;
  }

  // Replace each variable k by subs[k] (all in a common ring of subs[0].nvars() variables).
  MPoly substitute(const std::vector<MPoly>& subs) const {
    int m = subs.empty() ? 0 : subs[0].nvars();
    MPoly r(m);
    std::vector<std::vector<MPoly>> pw(n_);
    for (auto& [e, c] : t_) {
      MPoly term(m, c);
      for (int k = 0; k < n_; ++k) {
        if (e[k] == 0) continue;
        auto& cache = pw[k];
        if (cache.empty()) cache.push_back(MPoly(m, QNum(1)));
        while ((int)cache.size() <= e[k]) cache.push_back(cache.back() * subs[k]);
        term *= cache[e[k]];
      }
      r += term;
    }
    return r;
  }

  // Univariate view when only variable k occurs.
  UPoly to_upoly(int k) const {
    std::vector<QNum> c(std::max(0, degree_in(k) + 1));
    for (auto& [e, v] : t_) {
      for (int j = 0; j < n_; ++j)
        if (j != k && e[j] != 0) throw InputError("polynomial is not univariate");
      c[e[k]] = v;
    }
    return UPoly(std::move(c));
  }
  static MPoly from_upoly(const UPoly& p, int nvars, int k) {
    MPoly r(nvars);
    for (int j = 0; j <= p.degree(); ++j) {
      Exps e(nvars, 0);
      e[k] = j;
      r.add_term(e, p.coeff(j));
    }
    return r;
  }

  // Coefficients with respect to variable k: result[j] has x_k^j stripped.
  std::vector<MPoly> coeffs_in(int k) const {
    std::vector<MPoly> out(std::max(0, degree_in(k) + 1), MPoly(n_));
    for (auto& [e, c] : t_) {
      Exps f = e;
      f[k] = 0;
      out[e[k]].add_term(f, c);
    }
    return out;
  }

  // Exact quotient; throws if b does not divide *this.
  MPoly exact_div(const MPoly& b) const {
    if (b.is_zero()) throw NumericalError("polynomial division by zero");
    MPoly q(n_), r = *this;
    const Exps& lb = b.lead_exps();
    QNum inv = QNum(1) / b.lead_coeff();
    while (!r.is_zero()) {
      Exps e = r.lead_exps();
      for (int k = 0; k < n_; ++k) {
        e[k] -= lb[k];
        if (e[k] < 0) throw NumericalError("inexact multivariate division");
      }
      MPoly t = monomial(e, r.lead_coeff() * inv);
      q += t;
      r -= t * b;
    }
    return q;
  }

  // Make the leading coefficient 1, then clear denominators and strip the integer content.
  MPoly normalized() const {
    if (is_zero()) return *this;
    MPoly r = scaled(QNum(1) / lead_coeff());
    mpz_class l = 1;
    for (auto& [e, c] : r.t_) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.a().get_den_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.b().get_den_mpz_t());
    }
    r = r.scaled(QNum(mpq_class(l)));
    mpz_class g = 0;
    for (auto& [e, c] : r.t_) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.a().get_num_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.b().get_num_mpz_t());
    }
    if (g > 1) r = r.scaled(QNum(mpq_class(1, g)));
    return r;
  }

  std::string str(const std::vector<std::string>& names) const {
    if (is_zero()) return "0";
    std::string s;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string cs = c.str();
      if (!c.is_rational() && sgn(c.a()) != 0) cs = "(" + cs + ")";
      bool neg = cs[0] == '-';
      if (neg) cs = cs.substr(1);
      if (s.empty())
        s += neg ? "-" : "";
      else
        s += neg ? " - " : " + ";
      std::string mono;
      for (int k = 0; k < n_; ++k) {
        if (e[k] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names[k];
        if (e[k] > 1) mono += "^" + std::to_string(e[k]);
      }
      if (mono.empty())
        s += cs;
      else if (cs == "1")
        s += mono;
      else
        s += cs + "*" + mono;
    }
    return s;
  }

 private:
  Exps widen(const Exps& e) const {
    if ((int)e.size() == n_) return e;
    Exps f = e;
    f.resize(n_, 0);
    return f;
  }
  void adopt(const MPoly& o) {
    if (o.n_ > n_) {
      Terms t;
      for (auto& [e, c] : t_) {
        Exps f = e;
        f.resize(o.n_, 0);
        t[f] = c;
      }
      t_ = std::move(t);
      n_ = o.n_;
    }
  }
  int n_ = 0;
  Terms t_;
};

// a = c * b for some nonzero scalar c
inline bool equal_up_to_scalar(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.normalized() == b.normalized();
}

// Determinant of a square matrix of polynomials by fraction-free (Bareiss) elimination.
inline MPoly bareiss_det(std::vector<std::vector<MPoly>> m, int nvars) {
  int n = (int)m.size();
  if (n == 0) return MPoly(nvars, QNum(1));
  MPoly prev(nvars, QNum(1));
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k].is_zero()) {
      int p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return MPoly(nvars);
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev);
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

// Sylvester resultant of f and g with respect to variable k.
inline MPoly resultant(const MPoly& f, const MPoly& g, int k) {
  int nv = std::max(f.nvars(), g.nvars());
  auto a = f.coeffs_in(k), b = g.coeffs_in(k);
  int m = (int)a.size() - 1, n = (int)b.size() - 1;
  if (m < 0 || n < 0) return MPoly(nv);
  if (m == 0) return a[0].pow(n);
  if (n == 0) return b[0].pow(m);
  int N = m + n;
  std::vector<std::vector<MPoly>> S(N, std::vector<MPoly>(N, MPoly(nv)));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) S[r][r + j] = a[m - j];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) S[n + r][r + j] = b[n - j];
  return bareiss_det(std::move(S), nv);
}

}  // namespace thetasurf

#endif
