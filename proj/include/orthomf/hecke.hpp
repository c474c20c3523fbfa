// Right coset representatives of the scale-q^2, rank-1 double coset, the
// associated eigenvalue arithmetic, and the coefficient-level Hecke
// operators (the full operator at q plus the two parabolic ones at p, and
// the classical elliptic T(m)).

#pragma once

#include "orthomf/fourier.hpp"
#include "orthomf/orthogroup.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

namespace orthomf {

// Rank over Z/qZ.
inline long rank_mod(const MatZ& m0, const Int& q) {
  long rows = m0.rows(), cols = m0.cols();
  std::vector<std::vector<Int>> m(rows, std::vector<Int>(cols));
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m[i][j] = ((m0(i, j) % q) + q) % q;
  long rank = 0;
  for (long c = 0; c < cols && rank < rows; ++c) {
    long p = -1;
    for (long i = rank; i < rows; ++i)
      if (m[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(m[p], m[rank]);
    Int inv;
    mpz_invert(inv.get_mpz_t(), m[rank][c].get_mpz_t(), q.get_mpz_t());
    for (long j = c; j < cols; ++j) m[rank][j] = m[rank][j] * inv % q;
    for (long i = 0; i < rows; ++i) {
      if (i == rank || m[i][c] == 0) continue;
      Int f = m[i][c];
      for (long j = c; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[rank][j]) % q + q) % q;
    }
    ++rank;
  }
  return rank;
}

namespace detail {

// Advance a base-q odometer; false once it wraps around.
inline bool next_residue(std::vector<Int>& v, const Int& q) {
  for (auto& x : v) {
    if (++x < q) return true;
    x = 0;
  }
  return false;
}

// S^{-1} mod q as a matrix with entries in [0, q).
inline MatZ sinv_mod(const QSpace& sp, const Int& q) {
  MatZ adj = to_z(sp.Sinv * Rat(sp.detS));
  Int dinv;
  if (mpz_invert(dinv.get_mpz_t(), sp.detS.get_mpz_t(), q.get_mpz_t()) == 0)
    throw std::invalid_argument("sinv_mod: q divides det S");
  MatZ m(sp.n, sp.n);
  for (long i = 0; i < sp.n; ++i)
    for (long j = 0; j < sp.n; ++j) m(i, j) = ((adj(i, j) * dinv) % q + q) % q;
  return m;
}

inline Int half_norm_mod(const QSpace& sp, const VecZ& mu, const Int& q) {
  Int s(0);
  for (long i = 0; i < sp.n; ++i) {
    if (mu[i] == 0) continue;
    s += sp.S(i, i) / 2 * mu[i] * mu[i];
    for (long j = i + 1; j < sp.n; ++j) s += sp.S(i, j) * mu[i] * mu[j];
  }
  return ((s % q) + q) % q;
}

// mu mod q with mu != 0 and S[mu]/2 == 0 mod q (the rotation parameters of
// the fifth family).
inline std::vector<VecZ> family_e_mus(const QSpace& sp, const Int& q) {
  std::vector<VecZ> out;
  VecZ mu(sp.n, Int(0));
  while (next_residue(mu, q)) {
    if (half_norm_mod(sp, mu, q) == 0) out.push_back(mu);
  }
  return out;
}

// For each j: mu with S mu = (z_1, ..., z_{j-1}, -1, 0, ..., 0) mod q and
// S[mu]/2 == 0 mod q (the sixth family, with the free unit fixed to 1).
inline std::vector<VecZ> family_f_mus(const QSpace& sp, const Int& q) {
  MatZ si = sinv_mod(sp, q);
  std::vector<VecZ> out;
  for (long j = 0; j < sp.n; ++j) {
    VecZ zeta(sp.n, Int(0));
    zeta[j] = q - 1;  // -1 mod q
    std::vector<Int> free(j, Int(0));
    while (true) {
      for (long i = 0; i < j; ++i) zeta[i] = free[i];
      VecZ mu(sp.n, Int(0));
      for (long i = 0; i < sp.n; ++i) {
        Int s(0);
        for (long c = 0; c < sp.n; ++c) s += si(i, c) * zeta[c];
        mu[i] = ((s % q) + q) % q;
      }
      if (half_norm_mod(sp, mu, q) == 0) out.push_back(mu);
      if (free.empty() || !next_residue(free, q)) break;
    }
  }
  return out;
}

}  // namespace detail

// The (n+2)x(n+2) middle blocks of the representatives, grouped by family.
// These are exactly the reindexing matrices of the coefficient-level
// operator: each A satisfies S0[A] = q^2 S0.
struct MiddleBlocks {
  std::vector<MatZ> c, d, e, f;

  std::vector<MatZ> all() const {
    std::vector<MatZ> out = c;
    out.insert(out.end(), d.begin(), d.end());
    out.insert(out.end(), e.begin(), e.end());
    out.insert(out.end(), f.begin(), f.end());
    return out;
  }
};

inline MiddleBlocks middle_blocks(const QSpace& sp, const Int& q) {
  if (!is_prime(q)) throw std::invalid_argument("middle_blocks: q not prime");
  if (sp.detS % q == 0)
    throw std::invalid_argument("middle_blocks: q divides det S, representatives incomplete");
  long n = sp.n;
  MatQ dc = MatQ::identity(n + 2), de = MatQ::identity(n + 2);
  dc(0, 0) = 1;
  dc(n + 1, n + 1) = Rat(q * q);
  de(0, 0) = Rat(q * q);
  de(n + 1, n + 1) = 1;
  for (long i = 0; i < n; ++i) {
    dc(1 + i, 1 + i) = Rat(q);
    de(1 + i, 1 + i) = Rat(q);
  }
  MiddleBlocks mb;
  VecZ nu(n, Int(0));
  do {
    mb.c.push_back(to_z(dc * kmat_mu(sp, nu)));
  } while (detail::next_residue(nu, q));
  mb.d.push_back(to_z(de));
  for (const auto& mu : detail::family_e_mus(sp, q)) mb.e.push_back(to_z(de * kmat_tilde_mu(sp, mu)));
  VecZ ej(n, Int(0));
  for (const auto& mu : detail::family_f_mus(sp, q)) {
    // recover j as the position of the -1 in S mu mod q (last nonzero entry)
    VecQ smu = to_q(sp.S) * [&] {
      VecQ v;
      for (const auto& x : mu) v.push_back(Rat(x));
      return v;
    }();
    long j = -1;
    for (long i = 0; i < n; ++i)
      if (!is_integer(Rat(smu[i]) / Rat(q))) j = i;
    for (auto& x : ej) x = 0;
    ej[j] = 1;
    mb.f.push_back(to_z(de * kmat_tilde_mu(sp, mu) * kmat_mu(sp, ej)));
  }
  return mb;
}

// A family of right coset representatives (scale q^2 similitudes).
struct CosetFamily {
  char label = '?';
  std::vector<GElem> reps;
  std::vector<MatZ> middle;  // the reindexing blocks (families c-f)
};

inline GElem family_a_rep(const QSpace& sp, const Int& q, const VecZ& lam) {
  MatQ d = MatQ::identity(sp.n + 4);
  d(sp.n + 3, sp.n + 3) = Rat(q * q);
  for (long i = 0; i < sp.n + 2; ++i) d(1 + i, 1 + i) = Rat(q);
  return gmul(sp, make_gelem(sp, std::move(d), q * q), translation(sp, lam));
}

inline GElem family_b_rep(const QSpace& sp, const Int& q) {
  MatQ d = MatQ::identity(sp.n + 4);
  d(0, 0) = Rat(q * q);
  for (long i = 0; i < sp.n + 2; ++i) d(1 + i, 1 + i) = Rat(q);
  d(sp.n + 3, sp.n + 3) = 1;
  return make_gelem(sp, std::move(d), q * q);
}

// diag(q, K, q) M_{l e}, the shared shape of families c-f. K has rank 1
// mod q, so the translates K(l e) mod q of any axis e with K e != 0 mod q
// run through all q distinct cosets of the block; the axis is picked as the
// first column of K that is nonzero mod q.
inline GElem family_k_rep(const QSpace& sp, const Int& q, const MatZ& K, const Int& l) {
  long axis = -1;
  for (long c = 0; c < sp.n + 2 && axis < 0; ++c)
    for (long r = 0; r < sp.n + 2; ++r)
      if (K(r, c) % q != 0) {
        axis = c;
        break;
      }
  if (axis < 0) throw std::logic_error("family_k_rep: block vanishes mod q");
  MatQ m(sp.n + 4, sp.n + 4);
  m(0, 0) = Rat(q);
  m(sp.n + 3, sp.n + 3) = Rat(q);
  m.set_block(1, 1, to_q(K));
  VecZ t(sp.n + 2, Int(0));
  t[axis] = l;
  return gmul(sp, make_gelem(sp, std::move(m), q * q), translation(sp, t));
}

inline std::vector<CosetFamily> coset_reps(const QSpace& sp, const Int& q) {
  MiddleBlocks mb = middle_blocks(sp, q);
  std::vector<CosetFamily> fams(6);
  fams[0].label = 'a';
  VecZ lam(sp.n + 2, Int(0));
  do {
    fams[0].reps.push_back(family_a_rep(sp, q, lam));
  } while (detail::next_residue(lam, q));
  fams[1].label = 'b';
  fams[1].reps.push_back(family_b_rep(sp, q));
  const char labels[4] = {'c', 'd', 'e', 'f'};
  const std::vector<MatZ>* blocks[4] = {&mb.c, &mb.d, &mb.e, &mb.f};
  for (int fi = 0; fi < 4; ++fi) {
    CosetFamily& fam = fams[2 + fi];
    fam.label = labels[fi];
    fam.middle = *blocks[fi];
    for (const auto& K : *blocks[fi])
      for (Int l(0); l < q; ++l)
        fam.reps.push_back(family_k_rep(sp, q, K, l));
  }
  return fams;
}

struct HeckeCounts {
  Int Na, Nb, Nc, Nd, Ne, Nf;
  Int N;     // families c-f
  Int rho0;  // total number of right cosets
};

inline HeckeCounts counts(const QSpace& sp, const Int& q) {
  MiddleBlocks mb = middle_blocks(sp, q);
  HeckeCounts h;
  h.Na = pow_int(q, sp.n + 2);
  h.Nb = 1;
  h.Nc = q * Int(mb.c.size());
  h.Nd = q * Int(mb.d.size());
  h.Ne = q * Int(mb.e.size());
  h.Nf = q * Int(mb.f.size());
  h.N = h.Nc + h.Nd + h.Ne + h.Nf;
  h.rho0 = h.Na + h.Nb + h.N;
  return h;
}

// Eisenstein eigenvalue: rho_k = 1 + q^{n+2-2k} + N q^{-k}.
inline Rat rho(const QSpace& sp, long k, const Int& q) {
  HeckeCounts h = counts(sp, q);
  return Rat(1) + pow_rat(q, sp.n + 2 - 2 * k) + Rat(h.N) * pow_rat(q, -k);
}

// Coefficient-level action of the full Hecke operator at q:
//   a_g(lambda) = a_f(lambda/q) + q^{n+2-2k} a_f(q lambda)
//                 + q^{1-k} sum_A a_f(A lambda / q)
// with A over the family c-f middle blocks and the coefficient conventions
// absorbing all integrality constraints.
inline FourierSeries apply_TSq(const FourierSeries& f, const Int& q) {
  const QSpace& sp = f.sp;
  if (!f.gen && f.B < q)
    throw std::invalid_argument("apply_TSq: truncation smaller than q");
  auto blocks = std::make_shared<std::vector<MatZ>>(middle_blocks(sp, q).all());
  long n = sp.n, k = f.k;
  long qq = q.get_si();
  Rat qrat(q);
  Rat t2 = pow_rat(q, n + 2 - 2 * k);
  Rat t3 = pow_rat(q, 1 - k);

  // Unimodular spaces have integral dual vectors, so the reindexing can run
  // in machine integers with a cheap divisibility pre-filter.
  bool fast = sp.unimodular();
  auto blocks64 = std::make_shared<std::vector<std::vector<long>>>();
  if (fast) {
    for (const auto& a : *blocks) {
      std::vector<long> flat;
      bool ok = true;
      for (long i = 0; i < a.rows() && ok; ++i)
        for (long j = 0; j < a.cols(); ++j) {
          if (!a(i, j).fits_slong_p()) { ok = false; break; }
          flat.push_back(a(i, j).get_si());
        }
      if (!ok) { fast = false; break; }
      blocks64->push_back(std::move(flat));
    }
  }

  FourierSeries fc = f;
  auto gen = [fc, blocks, blocks64, fast, qq, qrat, t2, t3](const Index& lam) -> Rat {
    long d = lam.dim();
    Rat acc = coeff(fc, lam.scaled(Rat(1) / qrat));
    acc += t2 * coeff(fc, lam.scaled(qrat));
    std::vector<long> lv;
    bool use64 = fast;
    if (use64)
      for (const auto& x : lam.v) {
        if (!is_integer(x) || !x.get_num().fits_slong_p()) { use64 = false; break; }
        lv.push_back(x.get_num().get_si());
      }
    if (use64) {
      std::vector<long> y(d);
      for (const auto& flat : *blocks64) {
        bool div = true;
        for (long i = 0; i < d; ++i) {
          long s = 0;
          for (long j = 0; j < d; ++j) s += flat[i * d + j] * lv[j];
          if (s % qq != 0) { div = false; break; }
          y[i] = s / qq;
        }
        if (!div) continue;
        VecQ v;
        v.reserve(d);
        for (long i = 0; i < d; ++i) v.push_back(Rat(y[i]));
        acc += t3 * coeff(fc, Index(std::move(v)));
      }
    } else {
      for (const auto& a : *blocks) {
        VecQ y = to_q(a) * lam.v;
        for (auto& x : y) x /= qrat;
        acc += t3 * coeff(fc, Index(std::move(y)));
      }
    }
    return acc;
  };
  FourierSeries out = zero_series(sp, k, f.B / qq);
  out.gen = gen;
  if (!f.gen) out = materialize(out);
  return out;
}

// Parabolic operators at p, at coefficient level.  The two agree exactly on
// the Maass space and only there.
inline FourierSeries apply_Tp_down(const FourierSeries& f, const Int& p) {
  if (!is_prime(p)) throw std::invalid_argument("apply_Tp_down: p not prime");
  if (!f.gen && f.B < p) throw std::invalid_argument("apply_Tp_down: truncation smaller than p");
  FourierSeries fc = f;
  Rat pr(p), fac = pow_rat(p, 1 - f.k);
  FourierSeries out = zero_series(f.sp, f.k, f.B / p.get_si());
  out.gen = [fc, pr, fac](const Index& lam) -> Rat {
    return coeff(fc, lam.scaled(Rat(1) / pr)) +
           fac * coeff(fc, Index(lam.m() * pr, lam.mu(), lam.l() / pr));
  };
  if (!f.gen) out = materialize(out);
  return out;
}

inline FourierSeries apply_Tp_up(const FourierSeries& f, const Int& p) {
  if (!is_prime(p)) throw std::invalid_argument("apply_Tp_up: p not prime");
  if (!f.gen && f.B < p) throw std::invalid_argument("apply_Tp_up: truncation smaller than p");
  FourierSeries fc = f;
  Rat pr(p), fac = pow_rat(p, 1 - f.k);
  FourierSeries out = zero_series(f.sp, f.k, f.B / p.get_si());
  out.gen = [fc, pr, fac](const Index& lam) -> Rat {
    VecQ mup = lam.mu();
    for (auto& x : mup) x /= pr;
    Rat acc = coeff(fc, Index(lam.m(), mup, lam.l() / (pr * pr)));
    if (is_integer(lam.l() / pr)) acc += fac * coeff(fc, lam);
    return acc;
  };
  if (!f.gen) out = materialize(out);
  return out;
}

// The explicit similitude lists behind the parabolic operators, for the
// floating point slash oracle.
inline std::vector<GElem> tp_matrices_down(const QSpace& sp, const Int& p) {
  long n = sp.n;
  MatQ d1 = MatQ::identity(n + 4) * Rat(p);
  d1(0, 0) = Rat(p * p);
  d1(n + 3, n + 3) = 1;
  std::vector<GElem> out{make_gelem(sp, std::move(d1), p * p)};
  MatQ d2 = MatQ::identity(n + 4) * Rat(p);
  d2(1, 1) = Rat(p * p);
  d2(n + 2, n + 2) = 1;
  GElem d2g = make_gelem(sp, std::move(d2), p * p);
  for (Int t(0); t < p; ++t) {
    VecZ lam(n + 2, Int(0));
    lam[n + 1] = t;
    out.push_back(gmul(sp, d2g, translation(sp, lam)));
  }
  return out;
}

inline std::vector<GElem> tp_matrices_up(const QSpace& sp, const Int& p) {
  long n = sp.n;
  MatQ d1 = MatQ::identity(n + 4) * Rat(p);
  d1(0, 0) = Rat(p * p);
  d1(1, 1) = Rat(p * p);
  d1(n + 2, n + 2) = 1;
  d1(n + 3, n + 3) = 1;
  std::vector<GElem> out{make_gelem(sp, std::move(d1), p * p)};
  GElem pi = scalar_gelem(sp, p);
  for (Int t(0); t < p; ++t) {
    VecQ lam(n + 2, Rat(0));
    lam[0] = Rat(t) / Rat(p);
    out.push_back(gmul(sp, pi, translation(sp, lam)));
  }
  return out;
}

// Classical elliptic Hecke operator, unnormalized:
//   (g|T(m))(n) = sum_{d | gcd(m, n)} d^{kappa-1} g(m n / d^2).
inline EllSeries ell_hecke(const EllSeries& g, const Int& m) {
  if (m < 1) throw std::invalid_argument("ell_hecke: m must be positive");
  long kap = g.weight;
  EllSeries gc = g;
  Int mc = m;
  auto val = [gc, mc, kap](long nn) -> Rat {
    Int gcd;
    Int nz(nn);
    mpz_gcd(gcd.get_mpz_t(), mc.get_mpz_t(), nz.get_mpz_t());
    if (gcd == 0) gcd = mc;  // n = 0
    Rat acc(0);
    for (const auto& d : divisors(gcd)) acc += pow_rat(d, kap - 1) * ell_get(gc, Rat(mc * nz) / Rat(d * d));
    return acc;
  };
  EllSeries h;
  h.weight = kap;
  long N = g.gen ? g.length() - 1 : (long)((g.length() - 1) / m.get_si());
  for (long i = 0; i <= N; ++i) h.c.push_back(val(i));
  if (g.gen) h.gen = val;
  return h;
}

// Both sides of the star-map intertwining identity
//   star(f|T_S(q)) = star(f)|T(q^2) + (q^{n+1} + q^n - q^{n/2} + N_f) q^{-k} star(f).
inline std::pair<EllSeries, EllSeries> star_relation_check(const FourierSeries& f, const Int& q) {
  const QSpace& sp = f.sp;
  if (!sp.unimodular() || sp.n % 2 != 0)
    throw std::invalid_argument("star_relation_check: requires det S = 1 and even n");
  HeckeCounts h = counts(sp, q);
  EllSeries lhs = star(apply_TSq(f, q));
  Rat cf = (pow_rat(q, sp.n + 1) + pow_rat(q, sp.n) - pow_rat(q, sp.n / 2) + Rat(h.Nf)) *
           pow_rat(q, -f.k);
  // the weight k - n/2 slash normalization rescales the plain operator
  EllSeries rhs = ell_add(ell_scale(ell_hecke(star(f), q * q), pow_rat(q, sp.n + 2 - 2 * f.k)),
                          ell_scale(star(f), cf));
  return {lhs, rhs};
}

}  // namespace orthomf
