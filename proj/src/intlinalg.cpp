#include "shiftlab/intlinalg.hpp"

#include <algorithm>

namespace shiftlab {

namespace {

struct Position {
  std::size_t row;
  std::size_t col;
};

// Smallest nonzero |entry| in D[t.., t..]; row-major scan keeps the first
// minimum, which is the (row, column) tie-break.
std::optional<Position> smallest_entry(const IntMatrix& D, std::size_t t) {
  std::optional<Position> best;
  for (std::size_t i = t; i < D.rows(); ++i)
    for (std::size_t j = t; j < D.cols(); ++j) {
      const Integer& x = D(i, j);
      if (sgn(x) == 0) continue;
      if (!best || mpz_cmpabs(x.get_mpz_t(), D(best->row, best->col).get_mpz_t()) < 0) best = Position{i, j};
    }
  return best;
}

}  // namespace

std::size_t SmithForm::rank() const {
  return static_cast<std::size_t>(
      std::count_if(divisors.begin(), divisors.end(), [](const Integer& d) { return sgn(d) != 0; }));
}

SmithForm snf(const IntMatrix& M) {
  const std::size_t r = M.rows();
  const std::size_t c = M.cols();
  IntMatrix D = M;
  IntMatrix U = IntMatrix::identity(r);
  IntMatrix Uinv = IntMatrix::identity(r);
  IntMatrix V = IntMatrix::identity(c);

  // Row operations are mirrored on U (left) and inversely on Uinv (right).
  auto row_swap = [&](std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    U.swap_rows(a, b);
    Uinv.swap_cols(a, b);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& q) {
    D.add_row_multiple(dst, src, q);
    U.add_row_multiple(dst, src, q);
    Uinv.add_col_multiple(src, dst, -q);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    V.swap_cols(a, b);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& q) {
    D.add_col_multiple(dst, src, q);
    V.add_col_multiple(dst, src, q);
  };

  const std::size_t steps = std::min(r, c);
  Integer q;
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      const auto pivot = smallest_entry(D, t);
      if (!pivot) break;
      row_swap(t, pivot->row);
      col_swap(t, pivot->col);

      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (sgn(D(i, t)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        row_add(i, t, -q);
        if (sgn(D(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (sgn(D(t, j)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        col_add(j, t, -q);
        if (sgn(D(t, j)) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the rest of the active block.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < r && !offending; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            offending = i;
            break;
          }
      if (!offending) break;
      row_add(t, *offending, Integer(1));
    }
    if (sgn(D(t, t)) < 0) {
      D.negate_row(t);
      U.negate_row(t);
      Uinv.negate_col(t);
    }
  }

  SmithForm out;
  out.divisors.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) out.divisors.push_back(D(t, t));
  out.U = std::move(U);
  out.U_inverse = std::move(Uinv);
  out.V = std::move(V);
  out.D = std::move(D);
  return out;
}

HermiteForm hnf(const IntMatrix& M) {
  const std::size_t rows = M.rows();
  const std::size_t cols = M.cols();
  IntMatrix H = M;
  IntMatrix T = IntMatrix::identity(cols);
  std::vector<std::size_t> pivots;

  auto col_swap = [&](std::size_t a, std::size_t b) {
    H.swap_cols(a, b);
    T.swap_cols(a, b);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& q) {
    H.add_col_multiple(dst, src, q);
    T.add_col_multiple(dst, src, q);
  };

  std::size_t k = 0;
  Integer q;
  for (std::size_t row = 0; row < rows && k < cols; ++row) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t j = k; j < cols; ++j) {
        if (sgn(H(row, j)) == 0) continue;
        if (!best || mpz_cmpabs(H(row, j).get_mpz_t(), H(row, *best).get_mpz_t()) < 0) best = j;
      }
      if (!best) break;
      col_swap(k, *best);
      bool more = false;
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (sgn(H(row, j)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), H(row, j).get_mpz_t(), H(row, k).get_mpz_t());
        col_add(j, k, -q);
        if (sgn(H(row, j)) != 0) more = true;
      }
      if (!more) break;
    }
    if (sgn(H(row, k)) == 0) continue;
    if (sgn(H(row, k)) < 0) {
      H.negate_col(k);
      T.negate_col(k);
    }
    for (std::size_t j = 0; j < k; ++j) {
      mpz_fdiv_q(q.get_mpz_t(), H(row, j).get_mpz_t(), H(row, k).get_mpz_t());
      col_add(j, k, -q);
    }
    pivots.push_back(row);
    ++k;
  }

  HermiteForm out;
  out.H = H.columns_range(0, k);
  out.T = std::move(T);
  out.pivot_rows = std::move(pivots);
  return out;
}

std::optional<IntVector> solve_hermite(const IntMatrix& H, const std::vector<std::size_t>& pivot_rows,
                                       const IntVector& b) {
  if (b.size() != H.rows()) throw DimensionError("solve: right-hand side length differs from row count");
  IntVector residual = b;
  IntVector y(H.cols(), Integer(0));
  for (std::size_t j = 0; j < H.cols(); ++j) {
    const std::size_t p = pivot_rows[j];
    if (sgn(residual[p]) == 0) continue;
    if (!mpz_divisible_p(residual[p].get_mpz_t(), H(p, j).get_mpz_t())) return std::nullopt;
    mpz_divexact(y[j].get_mpz_t(), residual[p].get_mpz_t(), H(p, j).get_mpz_t());
    for (std::size_t i = p; i < H.rows(); ++i)
      if (sgn(H(i, j)) != 0) residual[i] -= y[j] * H(i, j);
  }
  if (!is_zero(residual)) return std::nullopt;
  return y;
}

Lattice::Lattice(std::size_t ambient_rank) : ambient_rank_(ambient_rank), basis_(ambient_rank, 0) {}

Lattice Lattice::from_generators(const IntMatrix& generators) {
  Lattice L(generators.rows());
  HermiteForm hf = hnf(generators);
  L.basis_ = std::move(hf.H);
  L.pivot_rows_ = std::move(hf.pivot_rows);
  return L;
}

Lattice Lattice::from_generators(std::size_t ambient_rank, const std::vector<IntVector>& generators) {
  return from_generators(IntMatrix::from_columns(ambient_rank, generators));
}

Lattice Lattice::full(std::size_t ambient_rank) { return from_generators(IntMatrix::identity(ambient_rank)); }

bool Lattice::contains(const IntVector& v) const {
  if (v.size() != ambient_rank_) throw DimensionError("lattice membership: ambient rank mismatch");
  return solve_hermite(basis_, pivot_rows_, v).has_value();
}

bool Lattice::contains(const Lattice& other) const { return lattice_contains(*this, other); }

IntVector Lattice::reduce(const IntVector& v) const {
  if (v.size() != ambient_rank_) throw DimensionError("lattice reduction: ambient rank mismatch");
  IntVector out = v;
  Integer q;
  for (std::size_t j = 0; j < basis_.cols(); ++j) {
    const std::size_t p = pivot_rows_[j];
    mpz_fdiv_q(q.get_mpz_t(), out[p].get_mpz_t(), basis_(p, j).get_mpz_t());
    if (sgn(q) == 0) continue;
    for (std::size_t i = p; i < ambient_rank_; ++i)
      if (sgn(basis_(i, j)) != 0) out[i] -= q * basis_(i, j);
  }
  return out;
}

bool lattice_contains(const Lattice& outer, const Lattice& inner) {
  if (outer.ambient_rank() != inner.ambient_rank()) throw DimensionError("lattice containment: ambient rank mismatch");
  for (std::size_t j = 0; j < inner.rank(); ++j)
    if (!outer.contains(inner.basis().column(j))) return false;
  return true;
}

bool lattice_equal(const Lattice& a, const Lattice& b) { return lattice_contains(a, b) && lattice_contains(b, a); }

std::optional<IntVector> solve(const IntMatrix& M, const IntVector& b) {
  if (b.size() != M.rows()) throw DimensionError("solve: right-hand side length differs from row count");
  const HermiteForm hf = hnf(M);
  const auto y = solve_hermite(hf.H, hf.pivot_rows, b);
  if (!y) return std::nullopt;
  const std::size_t k = hf.H.cols();
  const IntVector x = hf.T.columns_range(0, k) * *y;
  const Lattice ker = Lattice::from_generators(hf.T.columns_range(k, M.cols() - k));
  return ker.reduce(x);
}

Lattice kernel(const IntMatrix& M) {
  const HermiteForm hf = hnf(M);
  const std::size_t k = hf.H.cols();
  return Lattice::from_generators(hf.T.columns_range(k, M.cols() - k));
}

}  // namespace shiftlab
