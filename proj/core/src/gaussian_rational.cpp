#include "cornerscat/gaussian_rational.hpp"

#include <sstream>
#include <utility>

#include "cornerscat/errors.hpp"

namespace cornerscat {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const mpq_class n = o.norm();
  if (sgn(n) == 0) throw DomainError("division by zero Gaussian rational");
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussianRational::str() const {
  std::ostringstream os;
  const bool has_re = sgn(re_) != 0;
  const bool has_im = sgn(im_) != 0;
  if (!has_re && !has_im) return "0";
  if (has_re) os << re_.get_str();
  if (has_im) {
    if (has_re && sgn(im_) > 0) os << '+';
    if (im_ == 1) {
    } else if (im_ == -1) {
      os << '-';
    } else {
      os << im_.get_str();
    }
    os << 'i';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Gaussian integers: the ring in which Bareiss divisions are exact.

namespace {

struct GaussInt {
  mpz_class re;
  mpz_class im;

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

GaussInt mul(const GaussInt& a, const GaussInt& b) {
  return GaussInt{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussInt sub(const GaussInt& a, const GaussInt& b) { return GaussInt{a.re - b.re, a.im - b.im}; }

// a / b where b divides a exactly.
GaussInt divexact(const GaussInt& a, const GaussInt& b) {
  const mpz_class n = b.re * b.re + b.im * b.im;
  mpz_class re = a.re * b.re + a.im * b.im;
  mpz_class im = a.im * b.re - a.re * b.im;
  mpz_divexact(re.get_mpz_t(), re.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(im.get_mpz_t(), im.get_mpz_t(), n.get_mpz_t());
  return GaussInt{std::move(re), std::move(im)};
}

// Scales every row to Gaussian integers; returns the per-row scale factors.
std::vector<mpz_class> integerize(const GRMatrix& m, std::vector<std::vector<GaussInt>>& out) {
  out.assign(m.rows(), std::vector<GaussInt>(m.cols()));
  std::vector<mpz_class> scale(m.rows(), 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).re().get_den_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).im().get_den_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const mpq_class re = m(r, c).re() * l;
      const mpq_class im = m(r, c).im() * l;
      out[r][c] = GaussInt{re.get_num(), im.get_num()};
    }
    scale[r] = l;
  }
  return scale;
}

// Fraction-free echelon form in place; returns the trace and the swap parity.
EliminationTrace bareiss(std::vector<std::vector<GaussInt>>& a, std::size_t cols, bool& odd_swaps) {
  EliminationTrace trace;
  const std::size_t rows = a.size();
  trace.row_order.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) trace.row_order[r] = r;
  odd_swaps = false;
  GaussInt prev{1, 0};
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      std::swap(trace.row_order[p], trace.row_order[r]);
      odd_swaps = !odd_swaps;
    }
    const GaussInt pivot = a[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const GaussInt lead = a[i][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = divexact(sub(mul(pivot, a[i][j]), mul(lead, a[r][j])), prev);
      }
      a[i][c] = GaussInt{0, 0};
    }
    prev = pivot;
    trace.pivot_columns.push_back(c);
    ++r;
  }
  trace.rank = r;
  return trace;
}

}  // namespace

// ---------------------------------------------------------------------------

GRMatrix::GRMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

GRMatrix::GRMatrix(std::initializer_list<std::initializer_list<GaussianRational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw PreconditionError("ragged matrix initializer");
    for (const auto& v : row) data_.push_back(v);
  }
}

GRMatrix GRMatrix::identity(std::size_t n) {
  GRMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
  return m;
}

GRMatrix GRMatrix::column(std::initializer_list<GaussianRational> entries) {
  GRMatrix m(entries.size(), 1);
  std::size_t r = 0;
  for (const auto& e : entries) m(r++, 0) = e;
  return m;
}

GRMatrix GRMatrix::transpose() const {
  GRMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

GRMatrix GRMatrix::conjugate() const {
  GRMatrix t(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) t.data_[k] = data_[k].conj();
  return t;
}

GRMatrix operator+(const GRMatrix& a, const GRMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix sum shape mismatch");
  GRMatrix s(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) s.data_[k] = a.data_[k] + b.data_[k];
  return s;
}

GRMatrix operator-(const GRMatrix& a, const GRMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionError("matrix difference shape mismatch");
  GRMatrix s(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) s.data_[k] = a.data_[k] - b.data_[k];
  return s;
}

GRMatrix operator*(const GRMatrix& a, const GRMatrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("matrix product shape mismatch");
  GRMatrix p(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& lhs = a(r, k);
      if (lhs.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) p(r, c) += lhs * b(k, c);
    }
  return p;
}

GRMatrix operator*(const GaussianRational& s, const GRMatrix& a) {
  GRMatrix p(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) p.data_[k] = s * a.data_[k];
  return p;
}

bool operator==(const GRMatrix& a, const GRMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

void GRMatrix::append_rows(const GRMatrix& other) {
  if (rows_ == 0 && cols_ == 0) cols_ = other.cols_;
  if (other.cols_ != cols_) throw PreconditionError("append_rows column mismatch");
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  rows_ += other.rows_;
}

GaussianRational GRMatrix::determinant() const {
  if (rows_ != cols_) throw PreconditionError("determinant of a non-square matrix");
  if (rows_ == 0) return 1;
  std::vector<std::vector<GaussInt>> a;
  const auto scale = integerize(*this, a);
  bool odd = false;
  const auto trace = bareiss(a, cols_, odd);
  if (trace.rank < rows_) return 0;
  const GaussInt& last = a[rows_ - 1][cols_ - 1];
  mpz_class denom = 1;
  for (const auto& s : scale) denom *= s;
  GaussianRational det(mpq_class(last.re, denom), mpq_class(last.im, denom));
  return odd ? -det : det;
}

EliminationTrace GRMatrix::eliminate() const {
  std::vector<std::vector<GaussInt>> a;
  integerize(*this, a);
  bool odd = false;
  return bareiss(a, cols_, odd);
}

GRMatrix GRMatrix::inverse() const {
  if (rows_ != cols_) throw PreconditionError("inverse of a non-square matrix");
  const std::size_t n = rows_;
  GRMatrix a = *this;
  GRMatrix inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) throw DomainError("matrix is singular");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    const GaussianRational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      const GaussianRational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::string GRMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ", ";
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ", ";
      os << (*this)(r, c).str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace cornerscat
