#pragma once

// Reference computations used only by the tests.  None of these touch the
// library's arithmetic tables: fields are handled as raw coefficient vectors
// reduced modulo the defining polynomial.

#include <cstdint>
#include <random>
#include <vector>

#include "ql/gf.hpp"

namespace oracle {

using Coeffs = std::vector<unsigned>;

// Schoolbook product of two residues modulo a monic modulus.
inline Coeffs polymul_mod(const Coeffs& a, const Coeffs& b, const std::vector<unsigned>& mod, unsigned p) {
  const std::size_t n = mod.size() - 1;
  std::vector<unsigned> prod(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (std::size_t d = 2 * n - 1; d >= n; --d) {
    const unsigned c = prod[d];
    if (!c) continue;
    prod[d] = 0;
    for (std::size_t i = 0; i < n; ++i) prod[d - n + i] = (prod[d - n + i] + p * p - c * mod[i] % p) % p;
  }
  prod.resize(n);
  return prod;
}

inline Coeffs polyadd(const Coeffs& a, const Coeffs& b, unsigned p) {
  Coeffs r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
  return r;
}

// Element of F (as the library packs it) -> coefficient vector, by digits.
inline Coeffs digits(ql::Elem a, unsigned p, unsigned n) {
  Coeffs c(n);
  for (unsigned i = 0; i < n; ++i) {
    c[i] = a % p;
    a /= p;
  }
  return c;
}

inline ql::Elem undigits(const Coeffs& c, unsigned p) {
  ql::Elem v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return v;
}

// Determinant by Gaussian elimination, written directly on the field's
// public operations.
inline ql::Elem det(const ql::FieldCtx& F, std::vector<std::vector<ql::Elem>> m) {
  const std::size_t n = m.size();
  ql::Elem d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      d = F.neg(d);
    }
    d = F.mul(d, m[c][c]);
    const ql::Elem inv = F.inv(m[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const ql::Elem fct = F.mul(m[r][c], inv);
      if (!fct) continue;
      for (std::size_t k = c; k < n; ++k) m[r][k] = F.sub(m[r][k], F.mul(fct, m[c][k]));
    }
  }
  return d;
}

// Sylvester determinant of binary forms given by coefficients of
// s^{d-i} t^i at declared degrees.
inline ql::Elem sylvester(const ql::FieldCtx& F, std::vector<ql::Elem> a, int da, std::vector<ql::Elem> b, int db) {
  a.resize(da + 1, 0);
  b.resize(db + 1, 0);
  const int n = da + db;
  std::vector<std::vector<ql::Elem>> m(n, std::vector<ql::Elem>(n, 0));
  for (int r = 0; r < db; ++r)
    for (int i = 0; i <= da; ++i) m[r][r + i] = a[i];
  for (int r = 0; r < da; ++r)
    for (int i = 0; i <= db; ++i) m[db + r][r + i] = b[i];
  return det(F, m);
}

inline unsigned mobius(unsigned n) {
  unsigned k = 0;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 2;  // sentinel for zero
    ++k;
  }
  if (n > 1) ++k;
  return k % 2;  // 0 -> +1, 1 -> -1
}

// Number of monic irreducible polynomials of degree n over F_p.
inline long irreducible_count(unsigned p, unsigned n) {
  long total = 0;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d) continue;
    const unsigned mu = mobius(d);
    if (mu == 2) continue;
    long pw = 1;
    for (unsigned i = 0; i < n / d; ++i) pw *= p;
    total += mu == 0 ? pw : -pw;
  }
  return total / n;
}

inline ql::Elem random_elem(const ql::FieldCtx& F, std::mt19937_64& rng) {
  return static_cast<ql::Elem>(rng() % F.order());
}

}  // namespace oracle
