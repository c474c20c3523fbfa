// Concrete series: elliptic Eisenstein q-expansions, the orthogonal
// Eisenstein/Maass series F_{k,S} for unimodular S, and the squared-series
// divisor identity checker.

#pragma once

#include "orthomf/fourier.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <utility>

namespace orthomf {

// 1 - (2 kappa / B_kappa) sum sigma_{kappa-1}(n) q^n; kappa = 0 gives the
// constant series 1 (the convention that keeps the singular weight k = n/2
// case meaningful).
inline EllSeries ell_eisenstein(long kappa, long N) {
  if (kappa % 2 != 0) throw std::invalid_argument("ell_eisenstein: odd weight");
  if (kappa == 2) throw std::invalid_argument("ell_eisenstein: weight 2 is not modular");
  if (kappa < 0) throw std::invalid_argument("ell_eisenstein: negative weight");
  EllSeries g;
  g.weight = kappa;
  if (kappa == 0) {
    g.gen = [](long n) { return Rat(n == 0 ? 1 : 0); };
  } else {
    Rat fac = Rat(-2 * kappa) / bernoulli(kappa);
    g.gen = [kappa, fac](long n) {
      if (n == 0) return Rat(1);
      return Rat(fac * Rat(sigma(kappa - 1, Rat(n))));
    };
  }
  for (long n = 0; n <= N; ++n) g.c.push_back(g.gen(n));
  return g;
}

// Which argument the inner sigma of the positive-norm coefficient receives.
// DSquared is the value consistent with the Maass relation; Linear is kept
// only so tests can demonstrate that the other reading fails it.
enum class DivisorVariant { DSquared, Linear };

// Coefficient of the weight-k series on a rank-n unimodular space at any
// nonzero index with invariants (eps, norm); the coefficients depend on the
// index only through this pair.
inline Rat F_value(long k, long n, const Int& e, const Int& nrm,
                   DivisorVariant variant = DivisorVariant::DSquared) {
  if (nrm == 0) return Rat(-2 * k) / bernoulli(k) * Rat(sigma(k - 1, Rat(e)));
  if (k == n / 2) return 0;
  Rat acc(0);
  for (const auto& d : divisors(e)) {
    Rat arg = variant == DivisorVariant::DSquared ? Rat(nrm) / Rat(2 * d * d)
                                                  : Rat(nrm) / Rat(2 * d);
    acc += pow_rat(d, k - 1) * Rat(sigma(k - 1 - n / 2, arg));
  }
  return Rat(2 * k * (2 * k - n)) / (bernoulli(k) * bernoulli(k - n / 2)) * acc;
}

// F_{k,S}: the Maass series with star image -(2k/B_k) E_{k-n/2}, weight k,
// via its closed coefficient formula
//   1                                         at lambda = 0,
//   -(2k/B_k) sigma_{k-1}(eps)                on nonzero isotropic lambda,
//   (2k(2k-n))/(B_k B_{k-n/2}) *
//       sum_{d | eps} d^{k-1} sigma_{k-1-n/2}(S0[lambda]/(2d^2))
//                                             on positive norm (0 if k = n/2).
inline FourierSeries F_series(const QSpace& sp, long k, long B,
                              DivisorVariant variant = DivisorVariant::DSquared) {
  if (!sp.unimodular()) throw std::invalid_argument("F_series: requires det S = 1");
  if (k % 2 != 0) throw std::invalid_argument("F_series: k must be even");
  long n = sp.n;
  if (!(k == n / 2 || k > n / 2 + 2))
    throw std::invalid_argument("F_series: k must equal n/2 or exceed n/2 + 2");
  FourierSeries f = zero_series(sp, k, B);
  // Coefficients depend on lambda only through (eps, norm); memoize on that.
  auto cache = std::make_shared<std::map<std::pair<Int, Int>, Rat>>();
  QSpace spc = sp;
  f.gen = [spc, k, n, variant, cache](const Index& lam) -> Rat {
    if (lam.is_zero()) return 1;
    Int e = eps(spc, lam);
    Int nrm = to_int(norm2(spc, lam));
    auto it = cache->find({e, nrm});
    if (it != cache->end()) return it->second;
    Rat v = F_value(k, n, e, nrm, variant);
    (*cache)[{e, nrm}] = v;
    return v;
  };
  return f;
}

// Independent construction of the same series through the star-map inverse.
inline FourierSeries F_series_via_maass(const QSpace& sp, long k, long B) {
  Rat fac = Rat(-2 * k) / bernoulli(k);
  return maass_extend(sp, k, ell_scale(ell_eisenstein(k - sp.n / 2, B), fac), B);
}

// Both sides of the isotropic pair-decomposition identity
//   2 sigma_3(S0[lambda]/2) = sum_{nu + mu = lambda, both isotropic, nonzero}
//                               sigma_3(eps(nu)) sigma_3(eps(mu)).
inline std::pair<Rat, Rat> remark3d_check(const QSpace& sp, const Index& lam) {
  if (sp.n != 8 || !sp.unimodular())
    throw std::invalid_argument("remark3d_check: requires an n = 8 unimodular space");
  if (!in_cone(sp, lam) || norm2(sp, lam) <= 0)
    throw std::invalid_argument("remark3d_check: lambda must have positive norm");
  Rat lhs = 2 * Rat(sigma(3, norm2(sp, lam) / 2));
  Rat rhs(0);
  for (const auto& [nu, mu] : isotropic_pairs(sp, lam))
    rhs += Rat(sigma(3, Rat(eps(sp, nu)))) * Rat(sigma(3, Rat(eps(sp, mu))));
  return {lhs, rhs};
}

}  // namespace orthomf
