#pragma once

// Dense exact linear algebra over a field: ℚ (Rational) or ℤ/p (ModP<P>).

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace burnside {

template <std::uint32_t P>
class ModP {
  static_assert(P >= 2);

 public:
  static constexpr std::uint32_t modulus = P;

  ModP() = default;
  ModP(long long v) : v_(static_cast<std::uint32_t>(((v % static_cast<long long>(P)) + P) % P)) {}

  std::uint32_t value() const noexcept { return v_; }

  friend ModP operator+(ModP a, ModP b) { return ModP(static_cast<long long>(a.v_) + b.v_); }
  friend ModP operator-(ModP a, ModP b) {
    return ModP(static_cast<long long>(a.v_) - static_cast<long long>(b.v_));
  }
  friend ModP operator-(ModP a) { return ModP(-static_cast<long long>(a.v_)); }
  friend ModP operator*(ModP a, ModP b) {
    return ModP(static_cast<long long>(static_cast<std::uint64_t>(a.v_) * b.v_ % P));
  }
  friend ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
  ModP& operator+=(ModP b) { return *this = *this + b; }
  ModP& operator-=(ModP b) { return *this = *this - b; }
  ModP& operator*=(ModP b) { return *this = *this * b; }
  friend bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }

  ModP inverse() const {
    if (v_ == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero");
    // P is prime: a^(P-2)
    std::uint64_t r = 1, base = v_, e = P - 2;
    while (e) {
      if (e & 1) r = r * base % P;
      base = base * base % P;
      e >>= 1;
    }
    return ModP(static_cast<long long>(r));
  }

 private:
  std::uint32_t v_ = 0;
};

template <std::uint32_t P>
std::string to_string(ModP<P> x) {
  return std::to_string(x.value());
}

template <class T>
bool is_zero(const T& x) {
  return x == T(0);
}

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch in product");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!is_zero(b(k, j))) c(i, j) += x * b(k, j);
      }
    return c;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch in sum");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch in difference");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw Error(ErrorCode::InvalidArgument, "vector length mismatch");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero(v[j]) && !is_zero((*this)(i, j))) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool is_zero_matrix() const {
    for (const auto& x : data_)
      if (!is_zero(x)) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    T inv = T(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      T f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!is_zero(m(row, c))) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return rref(m).size();
}

/// Null space basis together with the free columns it is indexed by: basis
/// vector f has a 1 in row free[f] and 0 in every other free row, so the
/// coordinates of a kernel vector v are just v[free[f]].
template <class T>
struct KernelBasis {
  Matrix<T> basis;
  std::vector<std::size_t> free;

  std::vector<T> coordinates(const std::vector<T>& v) const {
    std::vector<T> c(free.size());
    for (std::size_t f = 0; f < free.size(); ++f) c[f] = v[free[f]];
    return c;
  }
};

template <class T>
KernelBasis<T> kernel_basis(Matrix<T> m) {
  auto pivots = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : pivots) is_pivot[c] = 1;
  KernelBasis<T> k;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) k.free.push_back(c);
  k.basis = Matrix<T>(m.cols(), k.free.size());
  for (std::size_t f = 0; f < k.free.size(); ++f) {
    k.basis(k.free[f], f) = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) k.basis(pivots[r], f) = -m(r, k.free[f]);
  }
  return k;
}

/// Basis of the null space {v : m v = 0}, as the columns of the result.
template <class T>
Matrix<T> kernel(Matrix<T> m) {
  return kernel_basis(std::move(m)).basis;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorCode::InvalidArgument, "inverse of non-square matrix");
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    throw Error(ErrorCode::InvalidArgument, "singular matrix");
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Coordinates of v in the column space of `basis`, which must have full column
/// rank and contain v.
template <class T>
std::vector<T> solve_in_basis(const Matrix<T>& basis, const std::vector<T>& v) {
  const std::size_t n = basis.rows(), k = basis.cols();
  Matrix<T> aug(n, k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = basis(i, j);
    aug(i, k) = v[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == k)
    throw Error(ErrorCode::InvariantViolation, "vector not in the span of the basis");
  if (pivots.size() != k) throw Error(ErrorCode::InvariantViolation, "basis is not independent");
  std::vector<T> x(k);
  for (std::size_t r = 0; r < k; ++r) x[r] = aug(r, k);
  return x;
}

/// Quotient V / W for a subspace W spanned by given vectors. Classes are
/// represented by their coordinates on the non-pivot positions of W's RREF.
template <class T>
class QuotientSpace {
 public:
  QuotientSpace(std::size_t dim, const std::vector<std::vector<T>>& spanning) : dim_(dim) {
    Matrix<T> w(spanning.size(), dim);
    for (std::size_t r = 0; r < spanning.size(); ++r)
      for (std::size_t c = 0; c < dim; ++c) w(r, c) = spanning[r][c];
    pivots_ = rref(w);
    reduced_ = Matrix<T>(pivots_.size(), dim);
    for (std::size_t r = 0; r < pivots_.size(); ++r)
      for (std::size_t c = 0; c < dim; ++c) reduced_(r, c) = w(r, c);
    std::vector<char> is_pivot(dim, 0);
    for (auto c : pivots_) is_pivot[c] = 1;
    for (std::size_t c = 0; c < dim; ++c)
      if (!is_pivot[c]) free_.push_back(c);
  }

  std::size_t dimension() const noexcept { return free_.size(); }

  std::vector<T> reduce(std::vector<T> v) const {
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      T f = v[pivots_[r]];
      if (is_zero(f)) continue;
      for (std::size_t c = 0; c < dim_; ++c)
        if (!is_zero(reduced_(r, c))) v[c] -= f * reduced_(r, c);
    }
    std::vector<T> out(free_.size());
    for (std::size_t i = 0; i < free_.size(); ++i) out[i] = v[free_[i]];
    return out;
  }

  /// A vector of V representing the i-th quotient basis element.
  std::vector<T> lift(std::size_t i) const {
    std::vector<T> v(dim_, T(0));
    v[free_[i]] = T(1);
    return v;
  }

 private:
  std::size_t dim_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_;
  Matrix<T> reduced_;
};

template <class T>
std::string matrix_to_csv(const Matrix<T>& m) {
  using burnside::to_string;
  std::string s;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) s += ',';
      s += to_string(m(r, c));
    }
    s += '\n';
  }
  return s;
}

}  // namespace burnside
