#ifndef THETASURF_EXACT_UPOLY_HPP
#define THETASURF_EXACT_UPOLY_HPP

#include <algorithm>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "qnum.hpp"

namespace thetasurf {

// Dense univariate polynomial over QNum, coefficients low degree first.
class UPoly {
 public:
  UPoly() = default;
  UPoly(QNum c) {  // NOLINT
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  UPoly(long c) : UPoly(QNum(c)) {}  // NOLINT
  explicit UPoly(std::vector<QNum> c) : c_(std::move(c)) { trim(); }
  static UPoly var() { return UPoly(std::vector<QNum>{QNum(0), QNum(1)}); }
  // w - r
  static UPoly linear(const QNum& r) { return UPoly(std::vector<QNum>{-r, QNum(1)}); }
  static UPoly monomial(const QNum& c, int k) {
    std::vector<QNum> v(k + 1);
    v[k] = c;
    return UPoly(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<QNum>& coeffs() const { return c_; }
  QNum coeff(int k) const { return k >= 0 && k < (int)c_.size() ? c_[k] : QNum(0); }
  QNum lead() const { return c_.empty() ? QNum(0) : c_.back(); }
  bool is_constant() const { return c_.size() <= 1; }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) { return *this += -o; }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<QNum> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  UPoly scaled(const QNum& s) const {
    UPoly r = *this;
    for (auto& v : r.c_) v *= s;
    r.trim();
    return r;
  }
  UPoly monic() const { return is_zero() ? *this : scaled(QNum(1) / lead()); }
  UPoly pow(int e) const {
    UPoly r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  // quotient and remainder
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw NumericalError("polynomial division by zero");
    UPoly r = *this;
    if (r.degree() < d.degree()) return {UPoly(), r};
    std::vector<QNum> q(r.degree() - d.degree() + 1);
    QNum inv = QNum(1) / d.lead();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      int k = r.degree() - d.degree();
      QNum f = r.lead() * inv;
      q[k] = f;
      for (int j = 0; j <= d.degree(); ++j) r.c_[j + k] -= f * d.c_[j];
      r.c_.pop_back();
      r.trim();
    }
    return {UPoly(std::move(q)), r};
  }
  friend UPoly operator/(const UPoly& a, const UPoly& b) { return a.divmod(b).first; }
  friend UPoly operator%(const UPoly& a, const UPoly& b) { return a.divmod(b).second; }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<QNum> r(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * QNum((long)k);
    return UPoly(std::move(r));
  }
  // antiderivative with zero constant term
  UPoly integral() const {
    std::vector<QNum> r(c_.size() + 1);
    for (std::size_t k = 0; k < c_.size(); ++k) r[k + 1] = c_[k] / QNum((long)(k + 1));
    return UPoly(std::move(r));
  }

  QNum operator()(const QNum& x) const {
    QNum r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }
  template <class T>
  std::complex<T> eval_c(const std::complex<T>& x) const {
    std::complex<T> r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      auto z = it->to_complex_ld();
      r = r * x + std::complex<T>(T(z.real()), T(z.imag()));
    }
    return r;
  }
  // composition p(g)
  UPoly compose(const UPoly& g) const {
    UPoly r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * g + UPoly(*it);
    return r;
  }
  // p(w + h) as polynomial in h
  UPoly shift(const QNum& h) const { return compose(UPoly(std::vector<QNum>{h, QNum(1)})); }

  std::string str(const std::string& v = "w") const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      if (c_[k].is_zero()) continue;
      std::string cs = c_[k].str();
      bool compound = !c_[k].is_rational() && sgn(c_[k].a()) != 0;
      if (compound) cs = "(" + cs + ")";
      if (!s.empty()) s += (cs[0] == '-' ? " - " : " + ");
      else if (cs[0] == '-') s += "-";
      if (cs[0] == '-') cs = cs.substr(1);
      if (k == 0)
        s += cs;
      else {
        if (cs != "1") s += cs + "*";
        s += v;
        if (k > 1) s += "^" + std::to_string(k);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<QNum> c_;
};

inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Product of the distinct irreducible factors.
inline UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p.monic();
  return (p / gcd(p, p.derivative())).monic();
}

// Multiplicity of r as a root of p.
inline int root_multiplicity(UPoly p, const QNum& r) {
  int m = 0;
  UPoly lin = UPoly::linear(r);
  while (!p.is_zero() && p(r).is_zero()) {
    p = p / lin;
    ++m;
  }
  return m;
}

// Univariate rational function num/den, reduced with monic denominator.
class RatFn {
 public:
  RatFn() : num_(), den_(1) {}
  RatFn(UPoly n) : num_(std::move(n)), den_(1) {}  // NOLINT
  RatFn(QNum c) : num_(std::move(c)), den_(1) {}   // NOLINT
  RatFn(long c) : RatFn(QNum(c)) {}                // NOLINT
  RatFn(UPoly n, UPoly d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }
  static RatFn var() { return RatFn(UPoly::var()); }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RatFn operator-() const { return RatFn(-num_, den_, true); }
  friend RatFn operator+(const RatFn& a, const RatFn& b) {
    if (a.den_ == b.den_) return RatFn(a.num_ + b.num_, a.den_);
    return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }
  friend RatFn operator*(const RatFn& a, const RatFn& b) {
    return RatFn(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFn operator/(const RatFn& a, const RatFn& b) {
    if (b.is_zero()) throw NumericalError("rational function division by zero");
    return RatFn(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
  friend bool operator==(const RatFn& a, const RatFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  RatFn pow(int e) const {
    if (e < 0) return RatFn(1) / pow(-e);
    return RatFn(num_.pow(e), den_.pow(e));
  }
  RatFn derivative() const {
    return RatFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }
  // f(g)
  RatFn compose(const RatFn& g) const {
    // homogenize: sum c_k g^k = sum c_k n^k d^(D-k) / d^D
    int D = std::max(num_.degree(), den_.degree());
    if (D < 0) return *this;
    auto hom = [&](const UPoly& p) {
      UPoly r;
      for (int k = 0; k <= p.degree(); ++k)
        if (!p.coeff(k).is_zero()) r += (g.num_.pow(k) * g.den_.pow(D - k)).scaled(p.coeff(k));
      return r;
    };
    return RatFn(hom(num_), hom(den_));
  }
  QNum operator()(const QNum& x) const {
    QNum d = den_(x);
    if (d.is_zero()) throw NumericalError("rational function evaluated at a pole");
    return num_(x) / d;
  }
  template <class T>
  std::complex<T> eval_c(const std::complex<T>& x) const {
    return num_.eval_c(x) / den_.eval_c(x);
  }
  std::string str(const std::string& v = "w") const {
    if (is_polynomial()) return num_.scaled(QNum(1) / den_.lead()).str(v);
    return "(" + num_.str(v) + ")/(" + den_.str(v) + ")";
  }

 private:
  RatFn(UPoly n, UPoly d, bool) : num_(std::move(n)), den_(std::move(d)) {}
  void reduce() {
    if (den_.is_zero()) throw NumericalError("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = UPoly(1);
      return;
    }
    UPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    QNum l = den_.lead();
    if (!l.is_one()) {
      num_ = num_.scaled(QNum(1) / l);
      den_ = den_.scaled(QNum(1) / l);
    }
  }
  UPoly num_, den_;
};

}  // namespace thetasurf

#endif
