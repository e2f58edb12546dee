#ifndef THETA_FORGE_POLY_MATRIX_HPP
#define THETA_FORGE_POLY_MATRIX_HPP

#include <string>
#include <utility>
#include <vector>

#include "theta_forge/polynomial.hpp"

namespace theta_forge {

/// Dense matrix of polynomials over a common ring, row-major.
class PolyMatrix {
 public:
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, Polynomial(ring_)) {}

  static PolyMatrix identity(const RingPtr& ring, std::size_t n) {
    PolyMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Polynomial::constant(ring, 1);
    return m;
  }
  static PolyMatrix scalar(const Polynomial& f, std::size_t n) {
    PolyMatrix m(f.ring_ptr(), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f;
    return m;
  }
  static PolyMatrix from_rows(const RingPtr& ring, const std::vector<std::vector<Polynomial>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    PolyMatrix m(ring, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw Error(ErrorCode::SHAPE_MISMATCH, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) {
        if (!same_ring(rows[i][j].ring_ptr(), ring))
          throw Error(ErrorCode::RING_MISMATCH, "matrix entry from a different ring");
        m(i, j) = rows[i][j];
      }
    }
    return m;
  }

  const RingPtr& ring_ptr() const { return ring_; }
  const PolyRing& ring() const { return *ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Polynomial& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::vector<Polynomial> column(std::size_t j) const {
    std::vector<Polynomial> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  PolyMatrix transpose() const {
    PolyMatrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_)
      throw Error(ErrorCode::SHAPE_MISMATCH, "cannot multiply " + a.shape() + " by " + b.shape());
    PolyMatrix c(a.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        Polynomial s(a.ring_);
        for (std::size_t k = 0; k < a.cols_; ++k)
          if (!a(i, k).is_zero() && !b(k, j).is_zero()) s += a(i, k) * b(k, j);
        c(i, j) = std::move(s);
      }
    return c;
  }
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) { return zip(a, b, false); }
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) { return zip(a, b, true); }

  PolyMatrix scaled(const Polynomial& p) const {
    PolyMatrix r(*this);
    for (auto& e : r.entries_) e = e * p;
    return r;
  }

  PolyMatrix specialize(const CoeffDomain& target) const {
    auto r = std::make_shared<const PolyRing>(ring_->with_coeffs(target));
    return specialize_into(r);
  }
  PolyMatrix specialize_into(const RingPtr& target) const {
    PolyMatrix m(target, rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = entries_[k].specialize_into(target);
    return m;
  }

  /// Block diagonal sum.
  static PolyMatrix block_diag(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix m(a.ring_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
    return m;
  }

  /// Horizontal concatenation [a | b].
  static PolyMatrix hconcat(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_) throw Error(ErrorCode::SHAPE_MISMATCH, "hconcat row mismatch");
    PolyMatrix m(a.ring_, a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
    }
    return m;
  }

  /// a ⊗ I_n: entry a_ij becomes the block a_ij * I_n.
  PolyMatrix kron_identity(std::size_t n) const {
    PolyMatrix m(ring_, rows_ * n, cols_ * n);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t k = 0; k < n; ++k) m(i * n + k, j * n + k) = (*this)(i, j);
    return m;
  }
  /// I_n ⊗ a: n diagonal copies of a.
  PolyMatrix identity_kron(std::size_t n) const {
    PolyMatrix m(ring_, rows_ * n, cols_ * n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(k * rows_ + i, k * cols_ + j) = (*this)(i, j);
    return m;
  }

  PolyMatrix minor_matrix(std::size_t skip_row, std::size_t skip_col) const {
    PolyMatrix m(ring_, rows_ - 1, cols_ - 1);
    for (std::size_t i = 0, r = 0; i < rows_; ++i) {
      if (i == skip_row) continue;
      for (std::size_t j = 0, c = 0; j < cols_; ++j) {
        if (j == skip_col) continue;
        m(r, c++) = (*this)(i, j);
      }
      ++r;
    }
    return m;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  std::vector<std::vector<std::string>> to_strings() const {
    std::vector<std::vector<std::string>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).to_string());
    return out;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  static PolyMatrix zip(const PolyMatrix& a, const PolyMatrix& b, bool subtract) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(ErrorCode::SHAPE_MISMATCH, a.shape() + " vs " + b.shape());
    PolyMatrix c(a.ring_, a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.entries_.size(); ++k)
      c.entries_[k] = subtract ? a.entries_[k] - b.entries_[k] : a.entries_[k] + b.entries_[k];
    return c;
  }

  RingPtr ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Polynomial> entries_;
};

namespace detail {

inline Polynomial cofactor_det(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial::constant(m.ring_ptr(), 1);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Polynomial d(m.ring_ptr());
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    Polynomial t = m(0, j) * cofactor_det(m.minor_matrix(0, j));
    d = (j % 2 == 0) ? d + t : d - t;
  }
  return d;
}

// Fraction-free elimination; every division is exact.
inline Polynomial bareiss_det(PolyMatrix m) {
  const std::size_t n = m.rows();
  const auto& ring = m.ring_ptr();
  if (n == 0) return Polynomial::constant(ring, 1);
  Polynomial prev = Polynomial::constant(ring, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m(r, k).is_zero()) ++r;
      if (r == n) return Polynomial(ring);
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        auto q = Polynomial::divide_exact(num, prev);
        if (!q) throw Error(ErrorCode::SINGULAR_MATRIX, "inexact Bareiss step");
        m(i, j) = std::move(*q);
      }
    prev = m(k, k);
  }
  Polynomial d = m(n - 1, n - 1);
  return negate ? -d : d;
}

}  // namespace detail

inline Polynomial determinant(const PolyMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NOT_SQUARE, "determinant of " + m.shape() + " matrix");
  return m.rows() <= 4 ? detail::cofactor_det(m) : detail::bareiss_det(m);
}

struct AdjugateResult {
  PolyMatrix adj;
  Polynomial det;
};

/// Adjugate and determinant; checks M·adj = adj·M = det·I before returning.
inline AdjugateResult adjugate_det(const PolyMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NOT_SQUARE, "adjugate of " + m.shape() + " matrix");
  const std::size_t n = m.rows();
  const auto& ring = m.ring_ptr();
  PolyMatrix adj(ring, n, n);
  if (n == 1) {
    adj(0, 0) = Polynomial::constant(ring, 1);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Polynomial c = determinant(m.minor_matrix(j, i));
        adj(i, j) = ((i + j) % 2 == 0) ? c : -c;
      }
  }
  Polynomial det = determinant(m);
  PolyMatrix target = PolyMatrix::scalar(det, n);
  if (!(m * adj == target) || !(adj * m == target))
    throw Error(ErrorCode::SINGULAR_MATRIX, "adjugate identity check failed");
  return {std::move(adj), std::move(det)};
}

}  // namespace theta_forge

#endif  // THETA_FORGE_POLY_MATRIX_HPP
