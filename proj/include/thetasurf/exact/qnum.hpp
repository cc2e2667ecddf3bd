#ifndef THETASURF_EXACT_QNUM_HPP
#define THETASURF_EXACT_QNUM_HPP

#include <gmpxx.h>

#include <complex>
#include <cstdlib>
#include <ostream>
#include <string>

#include "../errors.hpp"

namespace thetasurf {

// Element a + b*sqrt(d) of a quadratic field over Q; d squarefree, d != 1.
// d = -1 is Q(i). A value with b = 0 is a plain rational and mixes with anything.
class QNum {
 public:
  QNum() = default;
  QNum(long v) : a_(v) {}                 // NOLINT
  QNum(const mpq_class& v) : a_(v) { a_.canonicalize(); }  // NOLINT
  QNum(mpq_class a, mpq_class b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    a_.canonicalize();
    b_.canonicalize();
    if (d_ == 1 || d_ == 0) {
      a_ += b_;
      b_ = 0;
    }
    norm();
  }
  static QNum i() { return QNum(0, 1, -1); }
  static QNum frac(long p, long q) { return QNum(mpq_class(p, q)); }

  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }
  long d() const { return d_; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_one() const { return is_rational() && a_ == 1; }

  QNum conj() const { return QNum(a_, -b_, d_); }
  // a^2 - d b^2, the field norm
  mpq_class norm_q() const { return a_ * a_ - mpq_class(d_) * b_ * b_; }

  QNum operator-() const { return QNum(-a_, -b_, d_); }
  QNum& operator+=(const QNum& o) {
    long d = join(o);
    a_ += o.a_;
    b_ += o.b_;
    d_ = d;
    norm();
    return *this;
  }
  QNum& operator-=(const QNum& o) { return *this += -o; }
  QNum& operator*=(const QNum& o) {
    long d = join(o);
    mpq_class na = a_ * o.a_ + mpq_class(d) * b_ * o.b_;
    mpq_class nb = a_ * o.b_ + b_ * o.a_;
    a_ = na;
    b_ = nb;
    d_ = d;
    norm();
    return *this;
  }
  QNum& operator/=(const QNum& o) {
    if (o.is_zero()) throw NumericalError("division by zero in exact arithmetic");
    if (o.is_rational()) {
      a_ /= o.a_;
      b_ /= o.a_;
      norm();
      return *this;
    }
    mpq_class n = o.norm_q();
    *this *= o.conj();
    a_ /= n;
    b_ /= n;
    norm();
    return *this;
  }
  friend QNum operator+(QNum x, const QNum& y) { return x += y; }
  friend QNum operator-(QNum x, const QNum& y) { return x -= y; }
  friend QNum operator*(QNum x, const QNum& y) { return x *= y; }
  friend QNum operator/(QNum x, const QNum& y) { return x /= y; }
  friend bool operator==(const QNum& x, const QNum& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (sgn(x.b_) == 0 || x.d_ == y.d_);
  }
  friend bool operator!=(const QNum& x, const QNum& y) { return !(x == y); }

  // Integer power, negative allowed.
  QNum pow(long e) const {
    if (e < 0) return QNum(1) / pow(-e);
    QNum r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  std::complex<double> to_complex() const {
    double s = std::sqrt(std::abs(static_cast<double>(d_)));
    double bb = b_.get_d() * s;
    if (d_ < 0) return {a_.get_d(), bb};
    return {a_.get_d() + bb, 0.0};
  }
  std::complex<long double> to_complex_ld() const {
    long double s = std::sqrt(std::abs(static_cast<long double>(d_)));
    long double aa = static_cast<long double>(a_.get_num().get_d()) / a_.get_den().get_d();
    long double bb = static_cast<long double>(b_.get_num().get_d()) / b_.get_den().get_d() * s;
    if (d_ < 0) return {aa, bb};
    return {aa + bb, 0.0L};
  }

  std::string str() const {
    if (is_rational()) return a_.get_str();
    std::string unit = d_ == -1 ? "i" : "sqrt(" + std::to_string(d_) + ")";
    std::string bs;
    if (b_ == 1)
      bs = unit;
    else if (b_ == -1)
      bs = "-" + unit;
    else
      bs = b_.get_str() + "*" + unit;
    if (sgn(a_) == 0) return bs;
    return a_.get_str() + (sgn(b_) > 0 ? "+" : "") + bs;
  }
  friend std::ostream& operator<<(std::ostream& os, const QNum& q) { return os << q.str(); }

 private:
  long join(const QNum& o) const {
    if (sgn(b_) == 0) return o.d_;
    if (sgn(o.b_) == 0 || o.d_ == d_) return d_;
    throw UnsupportedFieldExtension("cannot mix sqrt(" + std::to_string(d_) + ") and sqrt(" +
                                    std::to_string(o.d_) + ")");
  }
  void norm() {
    if (sgn(b_) == 0) d_ = 0;
  }
  mpq_class a_{0}, b_{0};
  long d_ = 0;
};

// Squarefree part of a nonzero integer (sign kept) together with the square root
// of what was removed: n = sf * r^2.
inline std::pair<long, mpz_class> squarefree_split(const mpz_class& n) {
  mpz_class m = abs(n), r = 1, sf = 1;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (p > 1000000) throw UnsupportedFieldExtension("discriminant too large to factor");
    while (m % (p * p) == 0) {
      m /= p * p;
      r *= p;
    }
    if (m % p == 0) {
      m /= p;
      sf *= p;
    }
  }
  sf *= m;
  if (!sf.fits_slong_p()) throw UnsupportedFieldExtension("discriminant too large");
  long s = sf.get_si();
  return {sgn(n) < 0 ? -s : s, r};
}

// Exact square root of a rational in Q(sqrt(d)) form, d chosen from the number itself.
inline QNum sqrt_rational(const mpq_class& q) {
  if (sgn(q) == 0) return QNum(0);
  // q = n/m = n*m / m^2
  mpz_class nm = q.get_num() * q.get_den();
  auto [sf, r] = squarefree_split(nm);
  mpq_class coef(r, q.get_den());
  if (sf == 1) return QNum(coef);
  return QNum(0, coef, sf);
}

}  // namespace thetasurf

#endif
