// Similitude matrices for S1, the generators of the discriminant kernel,
// and the action on the orthogonal half-space H_S.
//
// The action is evaluated exactly over Q[i] wherever membership decisions
// depend on it (SO^+ test at the base point); a complex<double> variant
// backs the floating point oracles.

#pragma once

#include "orthomf/quadform.hpp"

#include <complex>
#include <stdexcept>
#include <vector>

namespace orthomf {

// ---------------------------------------------------------------------------
// Exact Gaussian rationals.

struct CQ {
  Rat re, im;
  CQ() : re(0), im(0) {}
  CQ(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  explicit CQ(const Rat& r) : re(r), im(0) {}

  CQ operator+(const CQ& o) const { return {re + o.re, im + o.im}; }
  CQ operator-(const CQ& o) const { return {re - o.re, im - o.im}; }
  CQ operator*(const CQ& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  bool operator==(const CQ& o) const { return re == o.re && im == o.im; }
  bool is_zero() const { return re == 0 && im == 0; }

  CQ inv() const {
    Rat n = re * re + im * im;
    if (n == 0) throw std::domain_error("CQ: division by zero");
    return {re / n, -im / n};
  }
  std::complex<double> to_c() const { return {re.get_d(), im.get_d()}; }
};

using CVec = std::vector<CQ>;

// A point of H_S with exact rational real and imaginary parts.
struct HPoint {
  CVec w;  // length n+2, components (tau, z, tau')
};

inline HPoint base_point(const QSpace& sp) {
  HPoint p;
  p.w.assign(sp.n + 2, CQ());
  p.w.front() = CQ(Rat(0), Rat(1));
  p.w.back() = CQ(Rat(0), Rat(1));
  return p;
}

inline bool in_halfspace(const QSpace& sp, const HPoint& p) {
  if ((long)p.w.size() != sp.n + 2) return false;
  VecQ v;
  for (const auto& c : p.w) v.push_back(c.im);
  return p.w.front().im > 0 && p.w.back().im > 0 && form_value(to_q(sp.S0), v) > 0;
}

// ---------------------------------------------------------------------------
// Similitudes.

// Rational (n+4)x(n+4) matrix with S1[mat] = scale * S1.
struct GElem {
  MatQ mat;
  Int scale = 1;
};

inline bool is_similitude(const QSpace& sp, const MatQ& M, const Int& r) {
  if (M.rows() != sp.n + 4 || M.cols() != sp.n + 4) return false;
  return form_value(to_q(sp.S1), M) == to_q(sp.S1) * Rat(r);
}

inline GElem make_gelem(const QSpace& sp, MatQ M, Int r = Int(1)) {
  if (!is_similitude(sp, M, r))
    throw std::invalid_argument("make_gelem: S1[M] != r*S1");
  return GElem{std::move(M), std::move(r)};
}

// ---------------------------------------------------------------------------
// Generators (the matrices of the translation / rotation / embedding kind).

inline GElem gmul(const QSpace& sp, const GElem& a, const GElem& b) {
  return make_gelem(sp, a.mat * b.mat, a.scale * b.scale);
}

// c * I with similitude scale c^2 (integral c).
inline GElem scalar_gelem(const QSpace& sp, const Int& c) {
  return make_gelem(sp, MatQ::identity(sp.n + 4) * Rat(c), c * c);
}

// M_lambda (upper) resp. M~_lambda (lower); rational lambda is allowed (such
// elements are similitudes of scale 1, just not integral ones).
inline GElem translation(const QSpace& sp, const VecQ& lq, bool lower = false) {
  long n2 = sp.n + 2;
  if ((long)lq.size() != n2) throw std::invalid_argument("translation: lambda has wrong length");
  VecQ s0l = to_q(sp.S0) * lq;
  Rat half = form_value(to_q(sp.S0), lq) / 2;
  MatQ M = MatQ::identity(n2 + 2);
  if (!lower) {
    for (long j = 0; j < n2; ++j) M(0, 1 + j) = -s0l[j];
    M(0, n2 + 1) = -half;
    for (long i = 0; i < n2; ++i) M(1 + i, n2 + 1) = lq[i];
  } else {
    for (long i = 0; i < n2; ++i) M(1 + i, 0) = lq[i];
    M(n2 + 1, 0) = -half;
    for (long j = 0; j < n2; ++j) M(n2 + 1, 1 + j) = -s0l[j];
  }
  return make_gelem(sp, std::move(M));
}

inline GElem translation(const QSpace& sp, const VecZ& lam, bool lower = false) {
  VecQ lq;
  for (const auto& x : lam) lq.push_back(Rat(x));
  return translation(sp, lq, lower);
}

// R_K for K in O(S0; Q): diag(1, K, 1).
inline GElem rotation(const QSpace& sp, const MatQ& K) {
  if (form_value(to_q(sp.S0), K) != to_q(sp.S0))
    throw std::invalid_argument("rotation: S0[K] != S0");
  MatQ M = MatQ::identity(sp.n + 4);
  M.set_block(1, 1, K);
  return make_gelem(sp, std::move(M));
}

// The (n+2)x(n+2) middle blocks K_mu, K~_mu, K^.
inline MatQ kmat_mu(const QSpace& sp, const VecZ& mu) {
  long n = sp.n;
  if ((long)mu.size() != n) throw std::invalid_argument("kmat_mu: mu has wrong length");
  VecQ mq;
  for (const auto& x : mu) mq.push_back(Rat(x));
  VecQ smu = to_q(sp.S) * mq;
  MatQ K = MatQ::identity(n + 2);
  for (long j = 0; j < n; ++j) K(0, 1 + j) = smu[j];
  K(0, n + 1) = form_value(to_q(sp.S), mq) / 2;
  for (long i = 0; i < n; ++i) K(1 + i, n + 1) = mq[i];
  return K;
}

inline MatQ kmat_hat(const QSpace& sp) {
  MatQ K(sp.n + 2, sp.n + 2);
  K(0, sp.n + 1) = 1;
  K(sp.n + 1, 0) = 1;
  for (long i = 0; i < sp.n; ++i) K(1 + i, 1 + i) = 1;
  return K;
}

inline MatQ kmat_tilde_mu(const QSpace& sp, const VecZ& mu) {
  return kmat_hat(sp) * kmat_mu(sp, mu) * kmat_hat(sp);
}

inline GElem k_mu(const QSpace& sp, const VecZ& mu) { return rotation(sp, kmat_mu(sp, mu)); }
inline GElem k_tilde_mu(const QSpace& sp, const VecZ& mu) { return rotation(sp, kmat_tilde_mu(sp, mu)); }
inline GElem k_hat(const QSpace& sp) { return rotation(sp, kmat_hat(sp)); }

// The SL2 embeddings of (2), with H = diag(-1, 1).
inline GElem embed_down(const QSpace& sp, const MatQ& U) {
  if (U.rows() != 2 || U.cols() != 2 || det(U) != 1)
    throw std::invalid_argument("embed_down: U must be 2x2 with det 1");
  long n = sp.n;
  MatQ H(2, 2);
  H(0, 0) = -1;
  H(1, 1) = 1;
  MatQ M(n + 4, n + 4);
  M.set_block(0, 0, H * U * H);
  for (long i = 0; i < n; ++i) M(2 + i, 2 + i) = 1;
  M.set_block(n + 2, n + 2, U);
  return make_gelem(sp, std::move(M));
}

inline GElem embed_up(const QSpace& sp, const MatQ& U) {
  if (U.rows() != 2 || U.cols() != 2 || det(U) != 1)
    throw std::invalid_argument("embed_up: U must be 2x2 with det 1");
  long n = sp.n;
  MatQ M(n + 4, n + 4);
  M(0, 0) = M(1, 1) = U(0, 0);
  M(n + 2, n + 2) = M(n + 3, n + 3) = U(1, 1);
  // beta H block (rows 0..1, cols n+2..n+3), gamma H block below.
  M(0, n + 2) = -U(0, 1);
  M(1, n + 3) = U(0, 1);
  M(n + 2, 0) = -U(1, 0);
  M(n + 3, 1) = U(1, 0);
  for (long i = 0; i < n; ++i) M(2 + i, 2 + i) = 1;
  return make_gelem(sp, std::move(M));
}

// ---------------------------------------------------------------------------
// Action on H_S.

// Exact evaluation of (M<w>, M{w}) over Q[i].
inline std::pair<HPoint, CQ> act(const QSpace& sp, const GElem& M, const HPoint& p) {
  long n2 = sp.n + 2;
  if ((long)p.w.size() != n2) throw std::invalid_argument("act: point has wrong dimension");
  // S0[w] over Q[i].
  MatQ s0 = to_q(sp.S0);
  CQ s0w;
  for (long i = 0; i < n2; ++i)
    for (long j = 0; j < n2; ++j) {
      if (sp.S0(i, j) == 0) continue;
      s0w = s0w + CQ(s0(i, j)) * p.w[i] * p.w[j];
    }
  CQ half = CQ(Rat(-1, 2)) * s0w;
  // cocycle: -gamma/2 S0[w] + d^tr w + delta
  CQ coc = CQ(M.mat(n2 + 1, 0)) * half;
  for (long j = 0; j < n2; ++j) coc = coc + CQ(M.mat(n2 + 1, 1 + j)) * p.w[j];
  coc = coc + CQ(M.mat(n2 + 1, n2 + 1));
  if (coc.is_zero()) throw std::domain_error("act: singular cocycle M{w} = 0");
  CQ cinv = coc.inv();
  HPoint out;
  out.w.assign(n2, CQ());
  for (long i = 0; i < n2; ++i) {
    CQ num = CQ(M.mat(1 + i, 0)) * half;  // -1/2 S0[w] b
    for (long j = 0; j < n2; ++j) num = num + CQ(M.mat(1 + i, 1 + j)) * p.w[j];
    num = num + CQ(M.mat(1 + i, n2 + 1));  // + c
    out.w[i] = num * cinv;
  }
  return {out, coc};
}

// Floating point variant for the numerical oracles.
inline std::pair<std::vector<std::complex<double>>, std::complex<double>> act_c(
    const QSpace& sp, const GElem& M, const std::vector<std::complex<double>>& w) {
  long n2 = sp.n + 2;
  using C = std::complex<double>;
  C s0w = 0;
  for (long i = 0; i < n2; ++i)
    for (long j = 0; j < n2; ++j)
      if (sp.S0(i, j) != 0) s0w += sp.S0(i, j).get_d() * w[i] * w[j];
  C half = -0.5 * s0w;
  C coc = M.mat(n2 + 1, 0).get_d() * half;
  for (long j = 0; j < n2; ++j) coc += M.mat(n2 + 1, 1 + j).get_d() * w[j];
  coc += M.mat(n2 + 1, n2 + 1).get_d();
  if (std::abs(coc) == 0) throw std::domain_error("act_c: singular cocycle");
  std::vector<C> out(n2);
  for (long i = 0; i < n2; ++i) {
    C num = M.mat(1 + i, 0).get_d() * half;
    for (long j = 0; j < n2; ++j) num += M.mat(1 + i, 1 + j).get_d() * w[j];
    num += M.mat(1 + i, n2 + 1).get_d();
    out[i] = num / coc;
  }
  return {out, coc};
}

// ---------------------------------------------------------------------------
// Membership tests.

// SO^+(S1; R): determinant 1 and the base point stays in H_S.
inline bool in_SO_plus(const QSpace& sp, const GElem& M) {
  if (M.scale != 1 || !is_similitude(sp, M.mat, Int(1))) return false;
  if (det(M.mat) != 1) return false;
  auto [img, coc] = act(sp, M, base_point(sp));
  (void)coc;
  return in_halfspace(sp, img);
}

// Discriminant kernel: SO^+ and M in I + Z^{(n+4)x(n+4)} S1.
inline bool in_discriminant_kernel(const QSpace& sp, const GElem& M) {
  if (!in_SO_plus(sp, M)) return false;
  return is_integral((M.mat - MatQ::identity(sp.n + 4)) * sp.S1inv);
}

}  // namespace orthomf
