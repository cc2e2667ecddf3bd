#ifndef THETASURF_EXACT_PARSE_HPP
#define THETASURF_EXACT_PARSE_HPP

// Expression grammar:
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary | unary)*      juxtaposition multiplies: 2w, 3i
//   unary := ('+' | '-') unary | power
//   power := atom ('^' ['-'] integer)?
//   atom  := integer | decimal | name | 'i' | '(' expr ')'

#include <cctype>
#include <functional>
#include <string>
#include <vector>

#include "mpoly.hpp"
#include "qnum.hpp"
#include "upoly.hpp"

namespace thetasurf {

namespace detail {

template <class T>
class ExprParser {
 public:
  using VarFn = std::function<bool(const std::string&, T&)>;
  ExprParser(const std::string& s, VarFn var, std::function<T(const T&, const T&)> div)
      : s_(s), var_(std::move(var)), div_(std::move(div)) {}

  T parse() {
    T v = expr();
    skip();
    if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& m) const {
    throw ParseError(m + " at position " + std::to_string(p_) + " in \"" + s_ + "\"");
  }
  void skip() {
    while (p_ < s_.size() && std::isspace((unsigned char)s_[p_])) ++p_;
  }
  bool eat(char c) {
    skip();
    if (p_ < s_.size() && s_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }
  bool starts_atom() {
    skip();
    if (p_ >= s_.size()) return false;
    char c = s_[p_];
    return std::isalnum((unsigned char)c) || c == '(' || c == '.' || c == '_';
  }
  T expr() {
    T v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }
  T term() {
    T v = unary();
    for (;;) {
      if (eat('*'))
        v = v * unary();
      else if (eat('/'))
        v = div_(v, unary());
      else if (starts_atom())
        v = v * power();
      else
        return v;
    }
  }
  T unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  T power() {
    T b = atom();
    if (eat('^')) {
      bool neg = eat('-');
      skip();
      std::size_t st = p_;
      while (p_ < s_.size() && std::isdigit((unsigned char)s_[p_])) ++p_;
      if (st == p_) fail("integer exponent expected");
      int e = std::stoi(s_.substr(st, p_ - st));
      if (e > 64) fail("exponent too large");
      T r = T(QNum(1));
      for (int k = 0; k < e; ++k) r = r * b;
      if (neg) r = div_(T(QNum(1)), r);
      return r;
    }
    return b;
  }
  T atom() {
    skip();
    if (p_ >= s_.size()) fail("unexpected end");
    char c = s_[p_];
    if (c == '(') {
      ++p_;
      T v = expr();
      if (!eat(')')) fail("')' expected");
      return v;
    }
    if (std::isdigit((unsigned char)c) || c == '.') {
      std::size_t st = p_;
      while (p_ < s_.size() && (std::isdigit((unsigned char)s_[p_]) || s_[p_] == '.')) ++p_;
      std::string tok = s_.substr(st, p_ - st);
      auto dot = tok.find('.');
      if (dot == std::string::npos) return T(QNum(mpq_class(mpz_class(tok))));
      if (tok.find('.', dot + 1) != std::string::npos) fail("bad number");
      std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
      if (digits.empty()) fail("bad number");
      mpz_class den = 1;
      for (std::size_t k = dot + 1; k < tok.size(); ++k) den *= 10;
      return T(QNum(mpq_class(mpz_class(digits), den)));
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      std::size_t st = p_;
      while (p_ < s_.size() && (std::isalnum((unsigned char)s_[p_]) || s_[p_] == '_')) ++p_;
      std::string name = s_.substr(st, p_ - st);
      T v;
      if (var_(name, v)) return v;
      if (name == "i") return T(QNum::i());
      p_ = st;
      fail("unknown name '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  std::size_t p_ = 0;
  VarFn var_;
  std::function<T(const T&, const T&)> div_;
};

// MPoly wrapper constructible from a constant, for the parser.
struct PolyAcc {
  MPoly p;
  PolyAcc() = default;
  PolyAcc(MPoly q) : p(std::move(q)) {}  // NOLINT
  PolyAcc(QNum c) : p(0, c) {}           // NOLINT
  PolyAcc operator-() const { return PolyAcc(-p); }
  friend PolyAcc operator+(const PolyAcc& a, const PolyAcc& b) { return PolyAcc(a.p + b.p); }
  friend PolyAcc operator-(const PolyAcc& a, const PolyAcc& b) { return PolyAcc(a.p - b.p); }
  friend PolyAcc operator*(const PolyAcc& a, const PolyAcc& b) { return PolyAcc(a.p * b.p); }
};

}  // namespace detail

inline QNum parse_qnum(const std::string& s) {
  return detail::ExprParser<QNum>(
             s, [](const std::string&, QNum&) { return false; },
             [](const QNum& a, const QNum& b) { return a / b; })
      .parse();
}

inline RatFn parse_ratfn(const std::string& s, const std::string& var = "w") {
  return detail::ExprParser<RatFn>(
             s,
             [&](const std::string& n, RatFn& out) {
               if (n != var) return false;
               out = RatFn::var();
               return true;
             },
             [](const RatFn& a, const RatFn& b) { return a / b; })
      .parse();
}

// Polynomial in the named variables; division only by nonzero constants.
inline MPoly parse_mpoly(const std::string& s, const std::vector<std::string>& names) {
  int n = (int)names.size();
  using P = detail::PolyAcc;
  P r = detail::ExprParser<P>(
            s,
            [&](const std::string& name, P& out) {
              for (int k = 0; k < n; ++k)
                if (names[k] == name) {
                  out = P(MPoly::var(n, k));
                  return true;
                }
              return false;
            },
            [](const P& a, const P& b) {
              if (b.p.is_zero()) throw ParseError("division by zero");
              if (b.p.total_degree() != 0) throw ParseError("division by a non-constant");
              return P(a.p.scaled(QNum(1) / b.p.lead_coeff()));
            })
            .parse();
  MPoly out(n);
  out += r.p;
  return out;
}

}  // namespace thetasurf

#endif
