// Quadratic spaces (S, S0, S1), the Fourier index cone, and all exact
// lattice point enumeration.
//
//        ( 0  0  1 )            ( 0  0   1 )
//   S0 = ( 0 -S  0 )  ,    S1 = ( 0  S0  0 )
//        ( 1  0  0 )            ( 1  0   0 )
//
// Indices lambda = (m, mu, l) live in the dual lattice L0^# = S0^{-1} Z^{n+2};
// m and l are always integers, mu has denominators dividing det S.

#pragma once

#include "orthomf/exact.hpp"
#include "orthomf/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace orthomf {

struct QSpace {
  long n = 0;
  MatZ S, S0, S1;
  Int detS, detS0, detS1;
  MatQ Sinv, S0inv, S1inv;

  bool unimodular() const { return detS == 1; }
};

inline QSpace build_space(const MatZ& S) {
  long n = S.rows();
  if (n < 1 || S.cols() != n) throw std::invalid_argument("build_space: S must be square");
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j)
      if (S(i, j) != S(j, i)) throw std::invalid_argument("build_space: S not symmetric");
  for (long i = 0; i < n; ++i)
    if (S(i, i) % 2 != 0)
      throw std::invalid_argument("build_space: S not even, odd diagonal entry S(" +
                                  std::to_string(i) + "," + std::to_string(i) + ") = " +
                                  S(i, i).get_str());
  // Positive definiteness via leading principal minors.
  for (long k = 1; k <= n; ++k) {
    MatZ mk(k, k);
    for (long i = 0; i < k; ++i)
      for (long j = 0; j < k; ++j) mk(i, j) = S(i, j);
    if (det(mk) <= 0)
      throw std::invalid_argument("build_space: S not positive definite, leading " +
                                  std::to_string(k) + "x" + std::to_string(k) +
                                  " minor is " + rat_str(det(mk)));
  }

  QSpace sp;
  sp.n = n;
  sp.S = S;
  sp.S0 = MatZ(n + 2, n + 2);
  sp.S0(0, n + 1) = 1;
  sp.S0(n + 1, 0) = 1;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) sp.S0(1 + i, 1 + j) = -S(i, j);
  sp.S1 = MatZ(n + 4, n + 4);
  sp.S1(0, n + 3) = 1;
  sp.S1(n + 3, 0) = 1;
  sp.S1.set_block(1, 1, sp.S0);
  sp.detS = to_int(det(S));
  sp.detS0 = to_int(det(sp.S0));
  sp.detS1 = to_int(det(sp.S1));
  if (abs(sp.detS0) != abs(sp.detS) || abs(sp.detS1) != abs(sp.detS))
    throw std::logic_error("build_space: bordered determinant mismatch");
  sp.Sinv = inverse(to_q(S));
  sp.S0inv = inverse(to_q(sp.S0));
  sp.S1inv = inverse(to_q(sp.S1));
  return sp;
}

// A Fourier index: rational vector of length n+2, read as (m, mu, l).
struct Index {
  VecQ v;

  Index() = default;
  explicit Index(VecQ vv) : v(std::move(vv)) {}
  Index(const Rat& m, const VecQ& mu, const Rat& l) {
    v.reserve(mu.size() + 2);
    v.push_back(m);
    for (const auto& x : mu) v.push_back(x);
    v.push_back(l);
  }

  long dim() const { return (long)v.size(); }
  const Rat& m() const { return v.front(); }
  const Rat& l() const { return v.back(); }
  VecQ mu() const { return VecQ(v.begin() + 1, v.end() - 1); }

  bool is_zero() const {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }

  Index operator+(const Index& o) const {
    Index r = *this;
    for (long i = 0; i < dim(); ++i) r.v[i] += o.v[i];
    return r;
  }
  Index operator-(const Index& o) const {
    Index r = *this;
    for (long i = 0; i < dim(); ++i) r.v[i] -= o.v[i];
    return r;
  }
  Index scaled(const Rat& c) const {
    Index r = *this;
    for (auto& x : r.v) x *= c;
    return r;
  }
  bool operator==(const Index& o) const { return v == o.v; }
  bool operator<(const Index& o) const { return v < o.v; }
};

inline VecQ s0_apply(const QSpace& sp, const Index& lam) {
  if (lam.dim() != sp.n + 2) throw std::invalid_argument("index dimension mismatch");
  return to_q(sp.S0) * lam.v;
}

// lambda in L0^# iff S0*lambda is integral.
inline bool in_dual(const QSpace& sp, const Index& lam) {
  if (lam.dim() != sp.n + 2) return false;
  for (const auto& x : s0_apply(sp, lam))
    if (!is_integer(x)) return false;
  return true;
}

// S0[lambda] = 2ml - S[mu].
inline Rat norm2(const QSpace& sp, const Index& lam) {
  return form_value(to_q(sp.S0), lam.v);
}

// eps(lambda) = gcd(S0 lambda).
inline Int eps(const QSpace& sp, const Index& lam) {
  VecZ w;
  for (const auto& x : s0_apply(sp, lam)) w.push_back(to_int(x));
  return gcd_vec(w);
}

// Cone condition: m >= 0, l >= 0, S0[lambda] >= 0.
inline bool in_cone(const QSpace& sp, const Index& lam) {
  return lam.m() >= 0 && lam.l() >= 0 && norm2(sp, lam) >= 0;
}

namespace detail {

// All x in Z^dim with G[x] <= bound, for exact positive definite rational G.
// Quadratic completion (Fincke-Pohst), no floating point in the decision path.
class BallEnumerator {
 public:
  BallEnumerator(const MatQ& G, const Rat& bound) : n_(G.rows()), q_(G), bound_(bound) {
    for (long i = 0; i < n_; ++i) {
      if (q_(i, i) <= 0) throw std::invalid_argument("ball enumeration: form not positive definite");
      for (long j = i + 1; j < n_; ++j) {
        q_(j, i) = q_(i, j);
        q_(i, j) /= q_(i, i);
      }
      for (long k = i + 1; k < n_; ++k)
        for (long l = k; l < n_; ++l) q_(k, l) -= q_(k, i) * q_(i, l);
    }
  }

  std::vector<VecZ> run() {
    out_.clear();
    run([this](const VecZ& v) { out_.push_back(v); });
    std::sort(out_.begin(), out_.end());
    return out_;
  }

  // Streaming variant; visit order is not sorted.
  void run(const std::function<void(const VecZ&)>& visit) {
    visit_ = &visit;
    if (bound_ >= 0) {
      x_.assign(n_, Int(0));
      descend(n_ - 1, bound_);
    }
    visit_ = nullptr;
  }

 private:
  // floor(-u + sqrt(t/q))  (q > 0, t >= 0): the monotone predicate
  // "x <= -u + sqrt(t/q)" keeps the adjustment loops finite even when the
  // admissible interval contains no integer.
  static Int upper(const Rat& q, const Rat& u, const Rat& t) {
    double approx = -u.get_d() + std::sqrt(std::max(0.0, Rat(t / q).get_d()));
    Int x((long)std::floor(approx));
    auto ok = [&](const Int& c) {
      Rat s = Rat(c) + u;
      if (s <= 0) return true;
      return q * s * s <= t;
    };
    while (ok(x + 1)) x += 1;
    while (!ok(x)) x -= 1;
    return x;
  }

  void descend(long i, const Rat& t) {
    if (i < 0) {
      VecZ v(x_.begin(), x_.end());
      (*visit_)(v);
      return;
    }
    Rat u(0);
    for (long j = i + 1; j < n_; ++j) u += q_(i, j) * Rat(x_[j]);
    if (t < 0) return;
    Int hi = upper(q_(i, i), u, t);
    Int lo = -upper(q_(i, i), -u, t);
    for (Int xi = lo; xi <= hi; ++xi) {
      x_[i] = xi;
      Rat s = Rat(xi) + u;
      descend(i - 1, t - q_(i, i) * s * s);
    }
    x_[i] = 0;
  }

  long n_;
  MatQ q_;
  Rat bound_;
  std::vector<Int> x_;
  std::vector<VecZ> out_;
  const std::function<void(const VecZ&)>* visit_ = nullptr;
};

}  // namespace detail

// All mu in Z^n with S[mu] <= 2t, sorted, duplicate-free.
inline std::vector<VecZ> short_vectors(const MatZ& S, const Int& t) {
  if (t < 0) return {};
  return detail::BallEnumerator(to_q(S), Rat(2 * t)).run();
}

// Middle parts of cone indices with given (m, l): all mu in the dual of
// (L, S) with S[mu] <= bound.  For det S = 1 this is just Z^n.
inline std::vector<VecQ> middle_parts(const QSpace& sp, const Rat& bound) {
  std::vector<VecQ> out;
  if (bound < 0) return out;
  if (sp.unimodular()) {
    for (const auto& v : detail::BallEnumerator(to_q(sp.S), bound).run()) {
      VecQ q;
      for (const auto& x : v) q.push_back(Rat(x));
      out.push_back(std::move(q));
    }
  } else {
    // mu = S^{-1} nu, S[mu] = S^{-1}[nu].
    for (const auto& nu : detail::BallEnumerator(sp.Sinv, bound).run()) {
      VecQ nq;
      for (const auto& x : nu) nq.push_back(Rat(x));
      out.push_back(sp.Sinv * nq);
    }
  }
  return out;
}

// Visit every cone index with 0 <= m <= B, 0 <= l <= B, without storing the
// (possibly huge) list.  Visit order within an (m, l) cell is unspecified.
inline void for_each_cone(const QSpace& sp, long B,
                          const std::function<void(const Index&)>& visit) {
  if (B < 0) throw std::invalid_argument("for_each_cone: negative bound");
  for (long m = 0; m <= B; ++m)
    for (long l = 0; l <= B; ++l) {
      Rat bound(2 * m * l);
      auto emit = [&](const VecQ& mu) { visit(Index(Rat(m), mu, Rat(l))); };
      if (sp.unimodular()) {
        detail::BallEnumerator(to_q(sp.S), bound).run([&](const VecZ& v) {
          VecQ q;
          q.reserve(v.size());
          for (const auto& x : v) q.push_back(Rat(x));
          emit(q);
        });
      } else {
        detail::BallEnumerator(sp.Sinv, bound).run([&](const VecZ& nu) {
          VecQ nq;
          nq.reserve(nu.size());
          for (const auto& x : nu) nq.push_back(Rat(x));
          emit(sp.Sinv * nq);
        });
      }
    }
}

// All cone indices with 0 <= m <= B, 0 <= l <= B.  Finite since the cone
// condition forces S[mu] <= 2ml.  Sorted by (m, l, mu).
inline std::vector<Index> enumerate_cone(const QSpace& sp, long B) {
  std::vector<Index> out;
  for_each_cone(sp, B, [&](const Index& lam) { out.push_back(lam); });
  std::sort(out.begin(), out.end());
  return out;
}

// Ordered pairs (nu, mu) of nonzero isotropic cone vectors with nu + mu = lambda.
inline std::vector<std::pair<Index, Index>> isotropic_pairs(const QSpace& sp, const Index& lam) {
  if (!in_cone(sp, lam)) throw std::invalid_argument("isotropic_pairs: index not in cone");
  std::vector<std::pair<Index, Index>> out;
  long m = (long)to_int(lam.m()).get_si();
  long l = (long)to_int(lam.l()).get_si();
  VecQ lmu = lam.mu();
  for (long a = 0; a <= m; ++a)
    for (long c = 0; c <= l; ++c)
      for (const auto& beta : middle_parts(sp, Rat(2 * a * c))) {
        Index nu(Rat(a), beta, Rat(c));
        if (nu.is_zero() || norm2(sp, nu) != 0) continue;
        Index mu = lam - nu;
        if (mu.is_zero()) continue;
        if (!in_dual(sp, mu) || !in_cone(sp, mu) || norm2(sp, mu) != 0) continue;
        out.push_back({nu, mu});
      }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.first < b.first || (a.first == b.first && a.second < b.second);
  });
  return out;
}

// #{nu mod q : S[nu]/2 == -l (mod q)} by direct enumeration of (Z/q)^n.
inline Int count_congruence(const QSpace& sp, const Int& l, const Int& q) {
  if (!is_prime(q)) throw std::invalid_argument("count_congruence: q not prime");
  if (!sp.unimodular() || sp.n % 2 != 0)
    throw std::invalid_argument("count_congruence: requires det S = 1 and even n");
  long n = sp.n;
  long qq = (long)q.get_si();
  std::vector<std::vector<long>> s(n, std::vector<long>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) s[i][j] = (long)mpz_class(sp.S(i, j) % q + q).get_si() % qq;
  long target = (long)mpz_class(((-l) % q + q) % q).get_si();
  std::vector<long> nu(n, 0);
  Int count(0);
  while (true) {
    long half = 0;  // S[nu]/2 = sum_i (s_ii/2) nu_i^2 + sum_{i<j} s_ij nu_i nu_j
    for (long i = 0; i < n; ++i) {
      long sii2 = (long)mpz_class((sp.S(i, i) / 2) % q + q).get_si() % qq;
      half = (half + sii2 * nu[i] % qq * nu[i]) % qq;
      for (long j = i + 1; j < n; ++j) half = (half + s[i][j] * nu[i] % qq * nu[j]) % qq;
    }
    if (half == target) count += 1;
    long i = 0;
    while (i < n && ++nu[i] == qq) nu[i++] = 0;
    if (i == n) break;
  }
  return count;
}

// Packed integer key for coefficient maps: (m, detS * mu, l), which is
// integral for every dual lattice vector.
struct IdxKey {
  std::array<int64_t, 12> v{};
  uint8_t len = 0;
  bool operator==(const IdxKey& o) const { return len == o.len && v == o.v; }
};

struct IdxKeyHash {
  size_t operator()(const IdxKey& k) const {
    uint64_t h = 1469598103934665603ull;
    for (uint8_t i = 0; i < k.len; ++i) {
      h ^= (uint64_t)k.v[i];
      h *= 1099511628211ull;
    }
    return (size_t)h;
  }
};

inline std::optional<IdxKey> to_key(const QSpace& sp, const Index& lam) {
  if (lam.dim() != sp.n + 2 || lam.dim() > 12) return std::nullopt;
  IdxKey k;
  k.len = (uint8_t)lam.dim();
  for (long i = 0; i < lam.dim(); ++i) {
    Rat x = (i == 0 || i == lam.dim() - 1) ? lam.v[i] : lam.v[i] * Rat(sp.detS);
    if (!is_integer(x)) return std::nullopt;
    if (!x.get_num().fits_slong_p()) return std::nullopt;
    k.v[i] = x.get_num().get_si();
  }
  // Only dual lattice vectors get keys.
  if (!in_dual(sp, lam)) return std::nullopt;
  return k;
}

inline Index from_key(const QSpace& sp, const IdxKey& k) {
  VecQ v(k.len);
  for (long i = 0; i < k.len; ++i) {
    v[i] = Rat(k.v[i]);
    if (i != 0 && i != k.len - 1) v[i] /= Rat(sp.detS);
  }
  return Index(std::move(v));
}

}  // namespace orthomf
