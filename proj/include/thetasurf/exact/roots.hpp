#ifndef THETASURF_EXACT_ROOTS_HPP
#define THETASURF_EXACT_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qnum.hpp"
#include "upoly.hpp"

namespace thetasurf {

using cld = std::complex<long double>;

// All complex roots of a polynomial by Aberth-Ehrlich iteration.
inline std::vector<cld> aberth_roots(std::vector<cld> c) {
  while (!c.empty() && std::abs(c.back()) == 0) c.pop_back();
  int n = (int)c.size() - 1;
  std::vector<cld> z;
  if (n < 1) return z;
  cld lead = c.back();
  for (auto& v : c) v /= lead;
  long double bound = 0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[k]));
  bound = 1 + bound;
  long double r0 = 0;
  for (int k = 0; k < n; ++k) r0 = std::max(r0, std::pow(std::abs(c[k]), 1.0L / (n - k)));
  r0 = std::min(bound, std::max(r0, 1e-3L));
  for (int k = 0; k < n; ++k) z.push_back(std::polar(r0, 2 * M_PIl * (k + 0.25L) / n));
  auto eval = [&](cld x, cld& d) {
    cld p = c[n];
    d = 0;
    for (int k = n - 1; k >= 0; --k) {
      d = d * x + p;
      p = p * x + c[k];
    }
    return p;
  };
  for (int it = 0; it < 500; ++it) {
    long double moved = 0;
    for (int k = 0; k < n; ++k) {
      cld d;
      cld p = eval(z[k], d);
      if (p == cld(0)) continue;
      cld ratio = p / d;
      cld s = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) s += cld(1) / (z[k] - z[j]);
      cld step = ratio / (cld(1) - ratio * s);
      z[k] -= step;
      moved = std::max(moved, std::abs(step) / (1 + std::abs(z[k])));
    }
    if (moved < 1e-19L) break;
  }
  std::sort(z.begin(), z.end(), [](const cld& a, const cld& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return z;
}

inline std::vector<cld> aberth_roots(const UPoly& p) {
  std::vector<cld> c;
  for (const auto& v : p.coeffs()) c.push_back(v.to_complex_ld());
  return aberth_roots(std::move(c));
}

// Best rational approximation with bounded denominator (continued fractions).
inline mpq_class rational_approx(long double x, long max_den = 1000000) {
  long double a = x;
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int it = 0; it < 40; ++it) {
    long double fl = std::floor(a);
    mpz_class ai(static_cast<double>(fl));
    mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    long double frac = a - fl;
    if (std::fabs(frac) < 1e-15L) break;
    a = 1 / frac;
  }
  return mpq_class(h1, k1);
}

struct ExactRoot {
  QNum value;
  int multiplicity;
};

// Exact roots of p in Q, Q(i) or one Q(sqrt d); throws UnsupportedFieldExtension
// when some root needs a larger field.
inline std::vector<ExactRoot> exact_roots(const UPoly& p) {
  std::vector<ExactRoot> out;
  if (p.degree() <= 0) return out;
  UPoly sf = squarefree_part(p);
  auto approx = aberth_roots(sf);
  std::vector<bool> done(approx.size(), false);
  auto accept = [&](const QNum& r) {
    if (!sf(r).is_zero()) return false;
    for (auto& e : out)
      if (e.value == r) return true;
    out.push_back({r, root_multiplicity(p, r)});
    return true;
  };
  for (std::size_t k = 0; k < approx.size(); ++k) {
    cld z = approx[k];
    long double scale = 1 + std::abs(z);
    if (std::fabs(z.imag()) < 1e-9L * scale && accept(QNum(rational_approx(z.real())))) {
      done[k] = true;
      continue;
    }
    if (accept(QNum(rational_approx(z.real()), rational_approx(z.imag()), -1))) {
      done[k] = true;
      continue;
    }
  }
  for (std::size_t k = 0; k < approx.size(); ++k) {
    if (done[k]) continue;
    for (std::size_t j = 0; j < approx.size() && !done[k]; ++j) {
      if (j == k) continue;
      cld s = approx[k] + approx[j], m = approx[k] * approx[j];
      long double scale = 1 + std::abs(s) + std::abs(m);
      if (std::fabs(s.imag()) > 1e-9L * scale || std::fabs(m.imag()) > 1e-9L * scale) continue;
      mpq_class sq = rational_approx(s.real()), mq = rational_approx(m.real());
      mpq_class disc = sq * sq - 4 * mq;
      QNum root = sqrt_rational(disc);
      QNum r1 = (QNum(sq) + root) / QNum(2), r2 = (QNum(sq) - root) / QNum(2);
      auto near = [&](const QNum& r) { return std::abs(r.to_complex_ld() - approx[k]) < 1e-6L * scale; };
      const QNum& r = near(r1) ? r1 : r2;
      if (!near(r)) continue;
      if (accept(r)) done[k] = true;
    }
  }
  int total = 0;
  for (auto& e : out) total += e.multiplicity;
  if (total != p.degree())
    throw UnsupportedFieldExtension("polynomial " + p.str() + " has roots outside Q(sqrt d)");
  std::sort(out.begin(), out.end(), [](const ExactRoot& a, const ExactRoot& b) {
    auto za = a.value.to_complex(), zb = b.value.to_complex();
    return za.real() != zb.real() ? za.real() < zb.real() : za.imag() < zb.imag();
  });
  return out;
}

}  // namespace thetasurf

#endif
