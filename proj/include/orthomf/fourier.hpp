// Cone-supported Fourier series with exact rational coefficients.
//
// A series is either table-backed (finite coefficient map on the rectangle
// m, l <= B; lookups beyond it are hard errors, never silent zeros) or
// generator-backed (a closed form valid for every index, with the table used
// as a cache / materialization target).  Operators preserve the flavor of
// their input, so closed-form series support unbounded index reindexing.

#pragma once

#include "orthomf/orthogroup.hpp"
#include "orthomf/quadform.hpp"

#include <complex>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace orthomf {

// ---------------------------------------------------------------------------
// Elliptic q-expansions.

struct EllSeries {
  long weight = 0;
  std::vector<Rat> c;  // c(0), ..., c(N)
  std::function<Rat(long)> gen;  // optional closed form for all n >= 0

  long length() const { return (long)c.size(); }
};

// c(x) with the coefficient conventions: 0 at non-integral or negative
// arguments; closed form if available; otherwise stored value, and a hard
// error past the stored range.
inline Rat ell_get(const EllSeries& g, const Rat& x) {
  if (!is_integer(x)) return 0;
  Int n = x.get_num();
  if (n < 0) return 0;
  if (!n.fits_slong_p()) throw std::out_of_range("ell_get: argument too large");
  long i = n.get_si();
  if (i < (long)g.c.size()) return g.c[i];
  if (g.gen) return g.gen(i);
  throw std::out_of_range("ell_get: coefficient " + std::to_string(i) +
                          " beyond stored range " + std::to_string(g.length()));
}

inline EllSeries ell_zero(long weight, long N) {
  EllSeries g;
  g.weight = weight;
  g.c.assign(N + 1, Rat(0));
  return g;
}

inline EllSeries ell_scale(const EllSeries& g, const Rat& s) {
  EllSeries h = g;
  for (auto& x : h.c) x *= s;
  if (g.gen) {
    auto base = g.gen;
    h.gen = [base, s](long n) -> Rat { return Rat(s * base(n)); };
  }
  return h;
}

inline EllSeries ell_add(const EllSeries& a, const EllSeries& b) {
  if (a.weight != b.weight) throw std::invalid_argument("ell_add: weight mismatch");
  EllSeries h;
  h.weight = a.weight;
  long N = std::min(a.length(), b.length());
  for (long i = 0; i < N; ++i) h.c.push_back(a.c[i] + b.c[i]);
  if (a.gen && b.gen) {
    auto ga = a.gen, gb = b.gen;
    h.gen = [ga, gb](long n) -> Rat { return Rat(ga(n) + gb(n)); };
  }
  return h;
}

inline bool ell_equal(const EllSeries& a, const EllSeries& b, long upto) {
  for (long i = 0; i <= upto; ++i)
    if (ell_get(a, Rat(i)) != ell_get(b, Rat(i))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Orthogonal Fourier series.

struct FourierSeries {
  QSpace sp;
  long k = 0;  // weight
  long B = 0;  // coefficients guaranteed for cone lambda with m, l <= B
  std::unordered_map<IdxKey, Rat, IdxKeyHash> table;
  std::function<Rat(const Index&)> gen;  // optional closed form on the dual cone

  bool lazy() const { return (bool)gen; }
};

inline FourierSeries zero_series(const QSpace& sp, long k, long B) {
  FourierSeries f;
  f.sp = sp;
  f.k = k;
  f.B = B;
  return f;
}

// Constant series c (weight 0).
inline FourierSeries const_series(const QSpace& sp, const Rat& c, long B) {
  FourierSeries f = zero_series(sp, 0, B);
  VecQ zero(sp.n + 2, Rat(0));
  if (c != 0) f.table[*to_key(sp, Index(zero))] = c;
  return f;
}

inline Rat coeff(const FourierSeries& f, const Index& lam) {
  if (lam.dim() != f.sp.n + 2) throw std::invalid_argument("coeff: index dimension mismatch");
  if (!in_dual(f.sp, lam)) return 0;
  if (!in_cone(f.sp, lam)) return 0;
  if (f.gen) return f.gen(lam);
  if (lam.m() <= f.B && lam.l() <= f.B) {
    auto key = to_key(f.sp, lam);
    if (!key) throw std::out_of_range("coeff: index does not fit the packed key");
    auto it = f.table.find(*key);
    return it == f.table.end() ? Rat(0) : it->second;
  }
  throw std::out_of_range("coeff: index (m=" + rat_str(lam.m()) + ", l=" + rat_str(lam.l()) +
                          ") outside truncation B=" + std::to_string(f.B));
}

inline void set_coeff(FourierSeries& f, const Index& lam, const Rat& v) {
  if (!in_dual(f.sp, lam) || !in_cone(f.sp, lam) || lam.m() > f.B || lam.l() > f.B)
    throw std::invalid_argument("set_coeff: index not in the stored cone rectangle");
  auto key = to_key(f.sp, lam);
  if (!key) throw std::invalid_argument("set_coeff: index does not fit the packed key");
  if (v == 0)
    f.table.erase(*key);
  else
    f.table[*key] = v;
}

// Evaluate a closed-form series into a plain table on its rectangle.
inline FourierSeries materialize(const FourierSeries& f) {
  if (!f.gen) return f;
  FourierSeries g = zero_series(f.sp, f.k, f.B);
  for_each_cone(f.sp, f.B, [&](const Index& lam) {
    Rat v = f.gen(lam);
    if (v != 0) g.table[*to_key(f.sp, lam)] = v;
  });
  return g;
}

// Sorted (index, value) support, for serialization and exact comparison.
inline std::vector<std::pair<Index, Rat>> sorted_support(const FourierSeries& f0) {
  FourierSeries f = materialize(f0);
  std::vector<std::pair<Index, Rat>> out;
  out.reserve(f.table.size());
  for (const auto& [key, v] : f.table) out.push_back({from_key(f.sp, key), v});
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// Exact equality of all coefficients with m, l <= upto.
inline bool series_equal(const FourierSeries& f, const FourierSeries& g, long upto) {
  if (f.sp.S != g.sp.S) return false;
  for (const auto& lam : enumerate_cone(f.sp, upto))
    if (coeff(f, lam) != coeff(g, lam)) return false;
  return true;
}

inline FourierSeries multiply(const FourierSeries& f0, const FourierSeries& g0) {
  if (f0.sp.S != g0.sp.S) throw std::invalid_argument("multiply: space mismatch");
  FourierSeries f = materialize(f0), g = materialize(g0);
  long B = std::min(f.B, g.B);
  FourierSeries h = zero_series(f.sp, f.k + g.k, B);

  // The result is the cone-supported part of the formal product; sums landing
  // outside the cone are dropped.  For unimodular spaces the cone test runs in
  // machine integers inside the hot loop.
  long n = f.sp.n;
  std::vector<long> s64;
  bool fast = f.sp.unimodular();
  if (fast)
    for (long i = 0; i < n && fast; ++i)
      for (long j = 0; j < n; ++j) {
        if (!f.sp.S(i, j).fits_slong_p()) { fast = false; break; }
        s64.push_back(f.sp.S(i, j).get_si());
      }
  auto in_cone_key = [&](const IdxKey& key) {
    if (fast) {
      int64_t nrm = 2 * key.v[0] * key.v[key.len - 1];
      for (long i = 0; i < n; ++i) {
        int64_t row = 0;
        for (long j = 0; j < n; ++j) row += s64[i * n + j] * key.v[1 + j];
        nrm -= key.v[1 + i] * row;
      }
      return nrm >= 0;
    }
    return in_cone(h.sp, from_key(h.sp, key));
  };

  // Bucket g's support by (m, l) so only compatible cells are paired.
  std::unordered_map<IdxKey, Rat, IdxKeyHash> acc;
  std::map<std::pair<int64_t, int64_t>, std::vector<std::pair<IdxKey, const Rat*>>> cells;
  for (const auto& [key, v] : g.table) {
    if (key.v[0] > B || key.v[key.len - 1] > B) continue;
    cells[{key.v[0], key.v[key.len - 1]}].push_back({key, &v});
  }
  for (const auto& [k1, v1] : f.table) {
    int64_t m1 = k1.v[0], l1 = k1.v[k1.len - 1];
    if (m1 > B || l1 > B) continue;
    for (const auto& [ml, entries] : cells) {
      if (ml.first > B - m1) break;
      if (ml.second > B - l1) continue;
      for (const auto& [k2, v2] : entries) {
        IdxKey k3 = k1;
        for (uint8_t i = 0; i < k3.len; ++i) k3.v[i] += k2.v[i];
        if (!in_cone_key(k3)) continue;
        acc[k3] += v1 * (*v2);
      }
    }
  }
  for (auto& [key, v] : acc)
    if (v != 0) h.table[key] = std::move(v);
  return h;
}

// Siegel Phi at coefficient level: restriction to multiples of a primitive
// isotropic cone vector u.
inline EllSeries phi(const FourierSeries& f, const Index& u) {
  const QSpace& sp = f.sp;
  if (!in_dual(sp, u) || !in_cone(sp, u) || norm2(sp, u) != 0 || eps(sp, u) != 1)
    throw std::invalid_argument("phi: u must be a primitive isotropic cone vector");
  EllSeries g;
  g.weight = f.k;
  long step = std::max(to_int(u.m()).get_si(), to_int(u.l()).get_si());
  long N = f.gen ? f.B : (long)(f.B / step);
  for (long l = 0; l <= N; ++l) g.c.push_back(coeff(f, u.scaled(Rat(l))));
  if (f.gen) {
    FourierSeries fc = f;
    g.gen = [fc, u](long l) { return coeff(fc, u.scaled(Rat(l))); };
  }
  return g;
}

inline bool is_cusp(const FourierSeries& f0) {
  FourierSeries f = materialize(f0);
  for (const auto& [key, v] : f.table) {
    if (v == 0) continue;
    if (norm2(f.sp, from_key(f.sp, key)) == 0) return false;
  }
  return true;
}

// f*(tau) = sum_l alpha_f((l, 0, 1)) e^{2 pi i l tau}, weight k - n/2.
inline EllSeries star(const FourierSeries& f) {
  const QSpace& sp = f.sp;
  if (!sp.unimodular()) throw std::invalid_argument("star: requires det S = 1");
  EllSeries g;
  g.weight = f.k - sp.n / 2;
  VecQ zero(sp.n, Rat(0));
  for (long l = 0; l <= f.B; ++l) g.c.push_back(coeff(f, Index(Rat(l), zero, Rat(1))));
  if (f.gen) {
    FourierSeries fc = f;
    g.gen = [fc, zero](long l) { return coeff(fc, Index(Rat(l), zero, Rat(1))); };
  }
  return g;
}

// The inverse of the star map: the unique series in the Maass space whose
// star image is c.  Closed form, so the result supports unlimited lookups
// (bounded only by the range of c itself when c is table-backed).
inline FourierSeries maass_extend(const QSpace& sp, long k, const EllSeries& c, long B) {
  if (!sp.unimodular()) throw std::invalid_argument("maass_extend: requires det S = 1");
  if (c.weight != k - sp.n / 2)
    throw std::invalid_argument("maass_extend: c must have weight k - n/2");
  if (k <= 0 || k % 2 != 0) throw std::invalid_argument("maass_extend: k must be positive even");
  FourierSeries f = zero_series(sp, k, B);
  QSpace spc = sp;
  EllSeries cc = c;
  f.gen = [spc, k, cc](const Index& lam) -> Rat {
    Rat c0 = ell_get(cc, Rat(0));
    if (lam.is_zero()) return -bernoulli(k) / (2 * k) * c0;
    Rat nrm = norm2(spc, lam);
    Int e = eps(spc, lam);
    if (nrm == 0) return Rat(sigma(k - 1, Rat(e))) * c0;
    Rat acc(0);
    for (const auto& d : divisors(e))
      acc += pow_rat(d, k - 1) * ell_get(cc, nrm / Rat(2 * d * d));
    return acc;
  };
  return f;
}

// alpha_f(lambda) minus its divisor-sum expression through the generator
// indices (1, mu/d, lm/d^2); identically zero on the Maass space.
inline Rat maass_defect(const FourierSeries& f, const Index& lam) {
  const QSpace& sp = f.sp;
  if (lam.is_zero() || !in_dual(sp, lam) || !in_cone(sp, lam))
    throw std::invalid_argument("maass_defect: lambda must be a nonzero dual cone vector");
  Rat acc = coeff(f, lam);
  Rat m = lam.m(), l = lam.l();
  VecQ mu = lam.mu();
  for (const auto& d : divisors(eps(sp, lam))) {
    VecQ md = mu;
    for (auto& x : md) x /= Rat(d);
    acc -= pow_rat(d, f.k - 1) * coeff(f, Index(Rat(1), md, l * m / Rat(d * d)));
  }
  return acc;
}

// Left minus right side of the p-Maass condition at lambda = (p^r m, mu, l)
// with p coprime to m, or at the isotropic line lambda = (0, 0, p^r m).
inline Rat p_maass_defect(const FourierSeries& f, const Int& p, const Index& lam, long r) {
  const QSpace& sp = f.sp;
  if (!is_prime(p)) throw std::invalid_argument("p_maass_defect: p not prime");
  if (r < 0) throw std::invalid_argument("p_maass_defect: negative r");
  if (lam.is_zero() || !in_dual(sp, lam) || !in_cone(sp, lam))
    throw std::invalid_argument("p_maass_defect: lambda must be a nonzero dual cone vector");
  Rat pr = pow_rat(p, r);
  VecQ mu = lam.mu();
  bool mu_zero = true;
  for (const auto& x : mu)
    if (x != 0) mu_zero = false;

  if (lam.m() != 0) {
    Rat m = lam.m() / pr;
    if (!is_integer(m) || to_int(m) % p == 0)
      throw std::invalid_argument("p_maass_defect: m-part must be p^r times a unit mod p");
    Rat acc = coeff(f, lam);
    for (long j = 0; j <= r; ++j) {
      // the j-th term belongs to the p^j part of eps(lambda), so p^j must
      // divide the whole vector S0 lambda apart from its m entry
      if (!is_integer(lam.l() / pow_rat(p, j))) break;
      VecQ mj = mu;
      for (auto& x : mj) x /= pow_rat(p, j);
      Index cand(m, mj, lam.l() * pow_rat(p, r - 2 * j));
      if (!in_dual(sp, cand)) break;
      acc -= pow_rat(p, j * (f.k - 1)) * coeff(f, cand);
    }
    return acc;
  }
  if (!mu_zero)
    throw std::invalid_argument("p_maass_defect: m = 0 requires the isotropic line (0, 0, *)");
  Rat m = lam.l() / pr;
  if (!is_integer(m) || to_int(m) % p == 0)
    throw std::invalid_argument("p_maass_defect: l-part must be p^r times a unit mod p");
  Rat sum(0);
  for (long j = 0; j <= r; ++j) sum += pow_rat(p, j * (f.k - 1));
  return coeff(f, lam) - sum * coeff(f, Index(Rat(0), mu, m));
}

// LHS - RHS of the single-prime coefficient relation
//   a(pm, mu, l) + p^{k-1} a(m/p, mu/p, l) = a(m, mu, pl) + p^{k-1} a(m, mu/p, l/p).
inline Rat defect_iii(const FourierSeries& f, const Int& p, const Index& lam) {
  if (!is_prime(p)) throw std::invalid_argument("defect_iii: p not prime");
  Rat m = lam.m(), l = lam.l();
  VecQ mu = lam.mu();
  VecQ mup = mu;
  for (auto& x : mup) x /= Rat(p);
  Rat pk = pow_rat(p, f.k - 1);
  Rat lhs = coeff(f, Index(m * Rat(p), mu, l)) + pk * coeff(f, Index(m / Rat(p), mup, l));
  Rat rhs = coeff(f, Index(m, mu, l * Rat(p))) + pk * coeff(f, Index(m, mup, l / Rat(p)));
  return lhs - rhs;
}

// ---------------------------------------------------------------------------
// Floating point oracles.

inline std::complex<double> eval_numeric(const FourierSeries& f0,
                                         const std::vector<std::complex<double>>& w) {
  FourierSeries f = materialize(f0);
  if ((long)w.size() != f.sp.n + 2) throw std::invalid_argument("eval_numeric: dimension mismatch");
  const double two_pi = 6.283185307179586476925287;
  std::complex<double> acc = 0;
  for (const auto& [key, v] : f.table) {
    Index lam = from_key(f.sp, key);
    VecQ s0l = s0_apply(f.sp, lam);
    std::complex<double> phase = 0;
    for (long i = 0; i < (long)w.size(); ++i) phase += s0l[i].get_d() * w[i];
    acc += v.get_d() * std::exp(std::complex<double>(0, two_pi) * phase);
  }
  return acc;
}

inline std::complex<double> eval_numeric(const FourierSeries& f, const HPoint& p) {
  std::vector<std::complex<double>> w;
  for (const auto& c : p.w) w.push_back(c.to_c());
  return eval_numeric(f, w);
}

// |f(M<w>) M{w}^{-k} - f(w)|: zero for M in the invariance group, up to the
// truncation tail and rounding.
inline double slash_defect_numeric(const FourierSeries& f, const GElem& M,
                                   const std::vector<std::complex<double>>& w) {
  auto [img, coc] = act_c(f.sp, M, w);
  std::complex<double> lhs = eval_numeric(f, img) * std::pow(coc, -(double)f.k);
  return std::abs(lhs - eval_numeric(f, w));
}

}  // namespace orthomf
