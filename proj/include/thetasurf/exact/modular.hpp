#ifndef THETASURF_EXACT_MODULAR_HPP
#define THETASURF_EXACT_MODULAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace thetasurf {

using u64 = std::uint64_t;

inline u64 mulmod(u64 a, u64 b, u64 p) { return (a * b) % p; }  // p < 2^32

inline u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}
inline u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

// n-th prime above 2^30, deterministic.
inline u64 nth_prime(int n) {
  static std::vector<u64> cache;
  mpz_class x = cache.empty() ? mpz_class(1u << 30) : mpz_class((unsigned long)cache.back());
  while ((int)cache.size() <= n) {
    mpz_nextprime(x.get_mpz_t(), x.get_mpz_t());
    cache.push_back(x.get_ui());
  }
  return cache[n];
}

// q mod p, or nullopt if p divides the denominator.
inline std::optional<u64> mod_of(const mpq_class& q, u64 p) {
  u64 d = mpz_fdiv_ui(q.get_den_mpz_t(), p);
  if (d == 0) return std::nullopt;
  u64 n = mpz_fdiv_ui(q.get_num_mpz_t(), p);
  return mulmod(n, invmod(d, p), p);
}

// Kernel dimension of a over F_p; when it is 1, `vec` is the kernel vector
// scaled so its last nonzero entry is 1.
inline int kernel_mod_p(std::vector<std::vector<u64>> a, int cols, u64 p, std::vector<u64>& vec) {
  int rows = (int)a.size(), r = 0;
  std::vector<int> piv;
  for (int c = 0; c < cols && r < rows; ++c) {
    int s = r;
    while (s < rows && a[s][c] == 0) ++s;
    if (s == rows) continue;
    std::swap(a[s], a[r]);
    u64 inv = invmod(a[r][c], p);
    for (int j = c; j < cols; ++j) a[r][j] = mulmod(a[r][j], inv, p);
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      u64 f = a[i][c];
      for (int j = c; j < cols; ++j)
        if (a[r][j]) a[i][j] = (a[i][j] + p - mulmod(f, a[r][j], p)) % p;
    }
    piv.push_back(c);
    ++r;
  }
  int dim = cols - (int)piv.size();
  if (dim != 1) return dim;
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[c] = true;
  int f = 0;
  while (is_piv[f]) ++f;
  vec.assign(cols, 0);
  vec[f] = 1;
  for (std::size_t k = 0; k < piv.size(); ++k) vec[piv[k]] = (p - a[k][f]) % p;
  int last = cols - 1;
  while (vec[last] == 0) --last;
  u64 inv = invmod(vec[last], p);
  for (auto& v : vec) v = mulmod(v, inv, p);
  return 1;
}

// n/d with |n|, d <= sqrt(m/2) and n = a d mod m.
inline std::optional<mpq_class> rational_reconstruct(const mpz_class& a, const mpz_class& m) {
  mpz_class bound;
  mpz_sqrt(bound.get_mpz_t(), mpz_class(m / 2).get_mpz_t());
  mpz_class r0 = m, r1 = a % m, t0 = 0, t1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  mpq_class out(r1, t1);
  out.canonicalize();
  return out;
}

}  // namespace thetasurf

#endif
