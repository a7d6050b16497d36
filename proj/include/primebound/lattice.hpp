#pragma once

// Exact integer and rational linear algebra.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace primebound {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense row-major matrix over an exact ring.
template <typename T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto &row : init) {
      if (row.size() != cols_)
        throw std::invalid_argument("Matrix: ragged initializer");
      for (const auto &x : row)
        data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }

  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("Matrix: dimension mismatch in product");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (sgn(a(i, k)) == 0)
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

/// Builds an integer matrix from machine integers, row-major.
IntMatrix make_int_matrix(std::size_t rows, std::size_t cols,
                          const std::vector<std::int64_t> &entries);

RationalMatrix to_rational(const IntMatrix &m);

/// Result of a Smith normal form reduction: U * M * V == D.
struct SmithDecomposition {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  /// Nonzero diagonal entries of D, each dividing the next.
  std::vector<Integer> elementary_divisors;
};

SmithDecomposition smith_normal_form(const IntMatrix &m);

/// Rank over the rationals (fraction-free elimination).
std::size_t rational_rank(const IntMatrix &m);

/// Determinant of a square matrix (Bareiss elimination).
Integer determinant(const IntMatrix &m);

/// gcd of all r x r minors where r is the rational rank; 1 when r == 0.
Integer rank_minor_gcd(const IntMatrix &m);

bool is_prime(std::uint64_t n);

/// Rank of m with its entries reduced modulo the prime p.
/// Throws std::invalid_argument when p is not prime.
std::size_t rank_mod_p(const IntMatrix &m, std::uint64_t p);

class SingularMatrixError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Exact inverse over the rationals. Throws SingularMatrixError.
RationalMatrix invert_rational(const IntMatrix &m);
RationalMatrix invert_rational(const RationalMatrix &m);

/// Solves m * x = b exactly when m is square and invertible.
std::vector<Rational> solve_rational(const RationalMatrix &m,
                                     const std::vector<Rational> &b);

/// Distinct prime divisors of n >= 1 in increasing order (trial division).
std::vector<Integer> prime_factors(const Integer &n);

Integer factorial(unsigned n);

std::string to_string(const Integer &z);
/// "num/den" with an explicit denominator, e.g. "2/1".
std::string to_fraction_string(const Rational &q);
Rational parse_fraction(const std::string &text);

} // namespace primebound
