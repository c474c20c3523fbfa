// Small dense exact matrices.  Sizes here are at most (n+4) ~ 12, so the
// plain O(n^3) algorithms are all we need.

#pragma once

#include "orthomf/exact.hpp"

#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace orthomf {

template <typename T>
class Matrix {
 public:
  Matrix() : r_(0), c_(0) {}
  Matrix(long r, long c) : r_(r), c_(c), a_(r * c, T(0)) {}

  static Matrix identity(long n) {
    Matrix m(n, n);
    for (long i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  long rows() const { return r_; }
  long cols() const { return c_; }

  T& operator()(long i, long j) { return a_[i * c_ + j]; }
  const T& operator()(long i, long j) const { return a_[i * c_ + j]; }

  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (long i = 0; i < r_; ++i)
      for (long j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("Matrix multiply: dimension mismatch");
    Matrix p(r_, o.c_);
    for (long i = 0; i < r_; ++i)
      for (long k = 0; k < c_; ++k) {
        const T& x = (*this)(i, k);
        if (x == T(0)) continue;
        for (long j = 0; j < o.c_; ++j) p(i, j) += x * o(k, j);
      }
    return p;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (c_ != (long)v.size()) throw std::invalid_argument("Matrix*vector: dimension mismatch");
    std::vector<T> w(r_, T(0));
    for (long i = 0; i < r_; ++i)
      for (long j = 0; j < c_; ++j) w[i] += (*this)(i, j) * v[j];
    return w;
  }

  Matrix operator*(const T& s) const {
    Matrix m = *this;
    for (auto& x : m.a_) x *= s;
    return m;
  }

  Matrix operator+(const Matrix& o) const {
    Matrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    return m;
  }

  Matrix operator-(const Matrix& o) const {
    Matrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
  }

  // Copies `b` into this matrix with top-left corner at (i0, j0).
  void set_block(long i0, long j0, const Matrix& b) {
    for (long i = 0; i < b.rows(); ++i)
      for (long j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

 private:
  long r_, c_;
  std::vector<T> a_;
};

using MatQ = Matrix<Rat>;
using MatZ = Matrix<Int>;
using VecQ = std::vector<Rat>;
using VecZ = std::vector<Int>;

inline MatQ to_q(const MatZ& m) {
  MatQ q(m.rows(), m.cols());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
  return q;
}

inline bool is_integral(const MatQ& m) {
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      if (!is_integer(m(i, j))) return false;
  return true;
}

inline MatZ to_z(const MatQ& m) {
  if (!is_integral(m)) throw std::invalid_argument("to_z: matrix not integral");
  MatZ z(m.rows(), m.cols());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) z(i, j) = m(i, j).get_num();
  return z;
}

// Exact Gaussian elimination with pivoting over the rationals.
inline Rat det(const MatQ& m0) {
  if (m0.rows() != m0.cols()) throw std::invalid_argument("det: not square");
  MatQ m = m0;
  long n = m.rows();
  Rat d(1);
  for (long j = 0; j < n; ++j) {
    long p = -1;
    for (long i = j; i < n; ++i)
      if (m(i, j) != 0) { p = i; break; }
    if (p < 0) return Rat(0);
    if (p != j) {
      for (long c = 0; c < n; ++c) std::swap(m(p, c), m(j, c));
      d = -d;
    }
    d *= m(j, j);
    for (long i = j + 1; i < n; ++i) {
      if (m(i, j) == 0) continue;
      Rat f = m(i, j) / m(j, j);
      for (long c = j; c < n; ++c) m(i, c) -= f * m(j, c);
    }
  }
  return d;
}

inline Rat det(const MatZ& m) { return det(to_q(m)); }

inline MatQ inverse(const MatQ& m0) {
  if (m0.rows() != m0.cols()) throw std::invalid_argument("inverse: not square");
  long n = m0.rows();
  MatQ m = m0, inv = MatQ::identity(n);
  for (long j = 0; j < n; ++j) {
    long p = -1;
    for (long i = j; i < n; ++i)
      if (m(i, j) != 0) { p = i; break; }
    if (p < 0) throw std::invalid_argument("inverse: singular matrix");
    if (p != j)
      for (long c = 0; c < n; ++c) {
        std::swap(m(p, c), m(j, c));
        std::swap(inv(p, c), inv(j, c));
      }
    Rat piv = m(j, j);
    for (long c = 0; c < n; ++c) {
      m(j, c) /= piv;
      inv(j, c) /= piv;
    }
    for (long i = 0; i < n; ++i) {
      if (i == j || m(i, j) == 0) continue;
      Rat f = m(i, j);
      for (long c = 0; c < n; ++c) {
        m(i, c) -= f * m(j, c);
        inv(i, c) -= f * inv(j, c);
      }
    }
  }
  return inv;
}

// A[B] := B^tr A B, matrix version.
template <typename T>
inline Matrix<T> form_value(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows())
    throw std::invalid_argument("form_value: dimension mismatch");
  return b.transpose() * a * b;
}

// Vector version: B^tr A B as a scalar.
template <typename T>
inline T form_value(const Matrix<T>& a, const std::vector<T>& b) {
  if (a.rows() != a.cols() || a.rows() != (long)b.size())
    throw std::invalid_argument("form_value: dimension mismatch");
  T acc(0);
  for (long i = 0; i < a.rows(); ++i) {
    if (b[i] == T(0)) continue;
    for (long j = 0; j < a.cols(); ++j) acc += b[i] * a(i, j) * b[j];
  }
  return acc;
}

// Row-style Hermite normal form under left multiplication by GL_n(Z).
// Used as a separating invariant for right cosets: equal cosets force
// equal HNFs, so distinct HNFs certify distinct cosets.
inline MatZ hnf(const MatZ& m0) {
  MatZ m = m0;
  long rows = m.rows(), cols = m.cols();
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    // Euclidean column sweep below row r.
    while (true) {
      long p = -1;
      for (long i = r; i < rows; ++i)
        if (m(i, c) != 0) {
          if (p < 0 || abs(m(i, c)) < abs(m(p, c))) p = i;
        }
      if (p < 0) break;
      if (p != r)
        for (long j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
      bool done = true;
      for (long i = r + 1; i < rows; ++i) {
        if (m(i, c) == 0) continue;
        Int q = m(i, c) / m(r, c);
        // round toward zero is fine: loop until zero
        for (long j = 0; j < cols; ++j) m(i, j) -= q * m(r, j);
        if (m(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (m(r, c) == 0) continue;
    if (m(r, c) < 0)
      for (long j = 0; j < cols; ++j) m(r, j) = -m(r, j);
    for (long i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
      if (q != 0)
        for (long j = 0; j < cols; ++j) m(i, j) -= q * m(r, j);
    }
    ++r;
  }
  return m;
}

}  // namespace orthomf
