// orthomf: exact arithmetic kernel.
//
// Int/Rat are GMP-backed; everything downstream (Gram forms, Fourier
// coefficients, Hecke eigenvalues) is computed without floating point.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace orthomf {

using Int = mpz_class;
using Rat = mpq_class;

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

inline Int to_int(const Rat& x) {
  if (!is_integer(x)) throw std::invalid_argument("to_int: not an integer: " + x.get_str());
  return x.get_num();
}

// "p/q", or "p" when the denominator is 1.  This is the wire format for
// every rational the library emits.
inline std::string rat_str(const Rat& x) {
  return x.get_den() == 1 ? x.get_num().get_str() : x.get_str();
}

inline Rat parse_rat(const std::string& s) {
  Rat x;
  if (x.set_str(s, 10) != 0) throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
  x.canonicalize();
  return x;
}

// Bernoulli numbers, convention B1 = -1/2, fixed by the recurrence
// sum_{j=0}^{m} binom(m+1,j) B_j = 0 for m >= 1.  With this convention
// -2k/B_k gives the classical Eisenstein normalization (240, -504, ...).
// Only even indices are ever requested by callers.
inline Rat bernoulli(long k) {
  if (k < 0 || k % 2 != 0) throw std::invalid_argument("bernoulli: index must be even and >= 0");
  static std::vector<Rat> cache{Rat(1)};  // B_0 = 1
  if ((long)cache.size() <= k) {
    for (long m = (long)cache.size(); m <= k; ++m) {
      // B_m = -1/(m+1) * sum_{j=0}^{m-1} binom(m+1,j) B_j
      Rat acc(0);
      Int binom(1);  // binom(m+1, 0)
      for (long j = 0; j < m; ++j) {
        acc += Rat(binom) * cache[j];
        binom = binom * (m + 1 - j) / (j + 1);
      }
      cache.push_back(-acc / (m + 1));
    }
  }
  return cache[k];
}

// sigma_m(x) = sum of d^m over positive divisors of x when x is a positive
// integer; 0 otherwise (non-integral and non-positive arguments drop out of
// every divisor sum silently -- the formulas rely on this).
inline Int sigma(long m, const Rat& x) {
  if (!is_integer(x)) return 0;
  Int n = x.get_num();
  if (n <= 0) return 0;
  Int acc(0), d(1);
  for (; d * d <= n; ++d) {
    if (n % d == 0) {
      Int dm, em;
      mpz_pow_ui(dm.get_mpz_t(), d.get_mpz_t(), (unsigned long)m);
      acc += dm;
      Int e = n / d;
      if (e != d) {
        mpz_pow_ui(em.get_mpz_t(), e.get_mpz_t(), (unsigned long)m);
        acc += em;
      }
    }
  }
  return acc;
}

inline Int pow_int(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// q^e as a rational, e may be negative.
inline Rat pow_rat(const Int& q, long e) {
  if (e >= 0) return Rat(pow_int(q, (unsigned long)e));
  return Rat(1) / Rat(pow_int(q, (unsigned long)(-e)));
}

// Nonnegative gcd of a vector; gcd of the empty/zero vector is 0.
inline Int gcd_vec(const std::vector<Int>& v) {
  Int g(0);
  for (const auto& x : v) {
    Int gg;
    mpz_gcd(gg.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    g = gg;
  }
  return g;
}

inline std::vector<Int> divisors(const Int& n) {
  std::vector<Int> lo, hi;
  for (Int d(1); d * d <= n; ++d) {
    if (n % d == 0) {
      lo.push_back(d);
      if (d * d != n) hi.push_back(n / d);
    }
  }
  for (auto it = hi.rbegin(); it != hi.rend(); ++it) lo.push_back(*it);
  return lo;
}

inline bool is_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

}  // namespace orthomf
