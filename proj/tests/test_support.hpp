#pragma once

#include <random>

#include "shiftlab/int_matrix.hpp"

namespace shiftlab::testing {

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

// Product of random elementary operations; determinant +-1.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int ops = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n == 0) return u;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int k = 0; k < ops; ++k) {
    const std::size_t a = idx(rng);
    const std::size_t b = idx(rng);
    if (a == b) {
      if (coef(rng) > 1) u.negate_row(a);
    } else {
      u.add_row_multiple(a, b, Integer(coef(rng)));
    }
  }
  return u;
}

inline IntMatrix random_nonnegative(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long hi) {
  return random_matrix(rng, rows, cols, 0, hi);
}

inline bool is_essential(const IntMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    bool row = false, col = false;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      row = row || sgn(a(i, j)) != 0;
      col = col || sgn(a(j, i)) != 0;
    }
    if (!row || !col) return false;
  }
  return true;
}

}  // namespace shiftlab::testing
