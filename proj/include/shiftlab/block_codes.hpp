#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/int_matrix.hpp"
#include "shiftlab/shift_spaces.hpp"

namespace shiftlab {

// Sliding block code X_source -> X_target given by a table on admissible
// (m + n + 1)-windows: y_k = Phi(x_{k-m} ... x_{k+n}).  Source and target
// are 0-1 transition matrices.
class BlockMap {
 public:
  // Validates: the table is total on admissible source windows and has no
  // other keys, values are target symbols, and images of overlapping windows
  // are admissible in the target.  Throws std::invalid_argument otherwise.
  BlockMap(IntMatrix source, IntMatrix target, std::size_t memory, std::size_t anticipation,
           std::map<Word, std::size_t> table);

  const IntMatrix& source() const { return source_; }
  const IntMatrix& target() const { return target_; }
  std::size_t memory() const { return m_; }
  std::size_t anticipation() const { return n_; }
  std::size_t window() const { return m_ + n_ + 1; }
  const std::map<Word, std::size_t>& table() const { return table_; }

  std::size_t operator()(const Word& window) const;

 private:
  IntMatrix source_;
  IntMatrix target_;
  std::size_t m_;
  std::size_t n_;
  std::map<Word, std::size_t> table_;
};

// Output length |w| - m - n; throws std::invalid_argument when w is too
// short or inadmissible.
Word apply_word(const BlockMap& phi, const Word& w);

// Image of the periodic point ...www... as a cycle of the same length,
// with the output phase aligned to the input (windows wrap around).
Word apply_periodic(const BlockMap& phi, const Word& cycle);

// Psi after Phi; memory and anticipation add.  Throws std::invalid_argument
// unless phi.target() == psi.source().
BlockMap compose(const BlockMap& phi, const BlockMap& psi);

BlockMap identity_code(const IntMatrix& A);
// sigma as a code: m = 0, n = 1, Phi(ab) = b.
BlockMap shift_code(const IntMatrix& A);

// Every admissible cycle of length p in lexicographic order (trace(A^p) of them).
std::vector<Word> periodic_points(const IntMatrix& A, std::size_t p);

struct LagReport {
  bool passed = true;
  std::size_t points_checked = 0;
  std::string counterexample;  // empty when passed
};

// On every periodic point of period <= P: Psi Phi = sigma_A^{2K} on X_A
// and Phi Psi = sigma_B^{2K} on X_B.
LagReport verify_lag_conjugacy(const BlockMap& phi, const BlockMap& psi, std::size_t K, std::size_t P);

struct HigherBlock {
  IntMatrix Ak;  // on admissible k-words in lexicographic order
  std::vector<Word> states;
  BlockMap phi;  // X_A -> X_{A_k}, m = 0, n = k - 1
  BlockMap psi;  // X_{A_k} -> X_A, first symbol
};

// A essential 0-1, k >= 1.
HigherBlock higher_block_code(const IntMatrix& A, std::size_t k);

}  // namespace shiftlab
