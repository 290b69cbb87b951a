#pragma once

#include <optional>

#include "shiftlab/int_matrix.hpp"

namespace shiftlab {

// U * M * V = D with U, V unimodular and D diagonal with d1 | d2 | ... .
// `divisors` holds the min(rows, cols) diagonal entries of D, all >= 0,
// zeros trailing.  `U_inverse` is tracked alongside U.
struct SmithForm {
  IntMatrix U;
  IntMatrix U_inverse;
  IntMatrix V;
  IntMatrix D;
  IntVector divisors;

  std::size_t rank() const;
};

// Pivot rule: the nonzero entry of least absolute value in the active
// submatrix, ties broken by smallest row, then smallest column.  The
// transforms are therefore a deterministic function of M.
SmithForm snf(const IntMatrix& M);

// Column Hermite normal form.  M * T = [H | 0] with T square unimodular
// and H of full column rank:
//  - H is lower triangular in echelon sense: the pivot row of column j is
//    strictly below the pivot row of column j-1 and entries above a
//    pivot are zero;
//  - pivots are positive;
//  - in a pivot row, entries left of the pivot lie in [0, pivot).
// Zero columns are dropped from H, so H.cols() == rank(M).
struct HermiteForm {
  IntMatrix H;
  IntMatrix T;
  std::vector<std::size_t> pivot_rows;
};

HermiteForm hnf(const IntMatrix& M);

// Subgroup of Z^n generated by the columns of `basis`, kept in column
// Hermite normal form so equal lattices have identical bases.
class Lattice {
 public:
  explicit Lattice(std::size_t ambient_rank = 0);

  static Lattice from_generators(const IntMatrix& generators);
  static Lattice from_generators(std::size_t ambient_rank, const std::vector<IntVector>& generators);
  static Lattice full(std::size_t ambient_rank);

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t rank() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }

  bool contains(const IntVector& v) const;
  bool contains(const Lattice& other) const;

  // Canonical representative of v + L: HNF reduction column by column,
  // each pivot coordinate brought into [0, pivot).
  IntVector reduce(const IntVector& v) const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.ambient_rank_ == b.ambient_rank_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Lattice& a, const Lattice& b) { return !(a == b); }

 private:
  std::size_t ambient_rank_;
  IntMatrix basis_;
  std::vector<std::size_t> pivot_rows_;
};

// Throws DimensionError when the ambient ranks differ.
bool lattice_contains(const Lattice& outer, const Lattice& inner);
bool lattice_equal(const Lattice& a, const Lattice& b);

// Integer solution of M x = b, reduced against the HNF of ker M, or
// nullopt when none exists.
std::optional<IntVector> solve(const IntMatrix& M, const IntVector& b);

// {x : M x = 0}
Lattice kernel(const IntMatrix& M);

// Column-echelon forward substitution: coefficients y with H y = b for a
// full-column-rank Hermite basis, or nullopt.
std::optional<IntVector> solve_hermite(const IntMatrix& H, const std::vector<std::size_t>& pivot_rows,
                                       const IntVector& b);

}  // namespace shiftlab
