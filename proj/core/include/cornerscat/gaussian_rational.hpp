#pragma once

// Exact complex rationals p + q i (p, q in Q) and small dense matrices over them.

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cornerscat {

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  GaussianRational(long re) : re_(re), im_(0) {}
  GaussianRational(int re) : re_(re), im_(0) {}

  static GaussianRational i() { return GaussianRational(0, 1); }

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  GaussianRational conj() const { return GaussianRational(re_, -im_); }
  /// |z|^2
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  /// Throws DomainError on division by zero.
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  /// "3/2", "-i", "1/3+2i", ...
  std::string str() const;

 private:
  mpq_class re_;
  mpq_class im_;
};

/// Pivot structure of a fraction-free elimination.
struct EliminationTrace {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  std::vector<std::size_t> row_order;  ///< original row index at each echelon position
};

class GRMatrix {
 public:
  GRMatrix() = default;
  GRMatrix(std::size_t rows, std::size_t cols);
  GRMatrix(std::initializer_list<std::initializer_list<GaussianRational>> rows);

  static GRMatrix identity(std::size_t n);
  static GRMatrix column(std::initializer_list<GaussianRational> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  GaussianRational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GaussianRational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  GRMatrix transpose() const;
  GRMatrix conjugate() const;

  friend GRMatrix operator+(const GRMatrix& a, const GRMatrix& b);
  friend GRMatrix operator-(const GRMatrix& a, const GRMatrix& b);
  friend GRMatrix operator*(const GRMatrix& a, const GRMatrix& b);
  friend GRMatrix operator*(const GaussianRational& s, const GRMatrix& a);
  friend bool operator==(const GRMatrix& a, const GRMatrix& b);
  friend bool operator!=(const GRMatrix& a, const GRMatrix& b) { return !(a == b); }

  /// Appends the rows of `other` (same column count).
  void append_rows(const GRMatrix& other);

  /// Exact determinant by Bareiss elimination. Throws PreconditionError if not square.
  GaussianRational determinant() const;
  /// Exact rank and pivot trace by fraction-free (Bareiss) elimination.
  EliminationTrace eliminate() const;
  std::size_t rank() const { return eliminate().rank; }
  /// Exact inverse by Gauss-Jordan over Q(i). Throws DomainError if singular.
  GRMatrix inverse() const;

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussianRational> data_;
};

}  // namespace cornerscat
