#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace shiftlab {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

// Shapes that do not compose (product, solve, step verification).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense row-major matrix of arbitrary-precision integers.  Empty shapes
// (0 rows or 0 columns) are legal.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);
  static IntMatrix diagonal(const IntVector& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  std::vector<IntVector> columns() const;

  IntMatrix transpose() const;
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  IntMatrix columns_range(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }

  // [this | other]
  IntMatrix hconcat(const IntMatrix& other) const;

  bool is_zero() const;
  bool is_nonnegative() const;
  bool is_01() const;

  // Elementary operations, used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);
  // row[dst] += q * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& q);
  // col[dst] += q * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& q);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

  const std::vector<Integer>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& v);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);
// Kronecker product of vectors; index i*|w| + j holds v[i]*w[j].
IntVector kronecker(const IntVector& v, const IntVector& w);

IntMatrix power(const IntMatrix& a, unsigned long n);
Integer trace(const IntMatrix& a);
// Fraction-free Bareiss elimination.
Integer determinant(const IntMatrix& a);

IntVector unit_vector(std::size_t n, std::size_t i);
IntVector ones_vector(std::size_t n);
IntVector add(const IntVector& a, const IntVector& b);
IntVector subtract(const IntVector& a, const IntVector& b);
IntVector scale(const Integer& c, const IntVector& v);
bool is_zero(const IntVector& v);
Integer content(const IntVector& v);

std::string to_string(const IntMatrix& m);
std::string to_string(const IntVector& v);
std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

}  // namespace shiftlab
