#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/int_matrix.hpp"

namespace shiftlab {

// Symbols are 0-based internally; to_string and the file formats use 1..N.
using Word = std::vector<std::size_t>;

std::string to_string(const Word& w);

struct MarkovShiftSpec {
  IntMatrix matrix;
  std::size_t alphabet_size = 0;
  bool is_01 = false;
  bool essential = false;
  bool irreducible = false;
  bool is_permutation = false;
  std::optional<std::size_t> period;  // irreducible matrices only
  bool aperiodic = false;
  std::optional<std::size_t> n0;  // least n with A^n > 0
  std::vector<std::string> warnings;
};

// Throws DimensionError for non-square input and std::invalid_argument for
// negative entries.
MarkovShiftSpec analyze(const IntMatrix& A);

bool is_essential(const IntMatrix& A);
bool is_irreducible(const IntMatrix& A);

// A(w_i, w_{i+1}) >= 1 throughout.  `cyclic` also requires A(w_last, w_0) >= 1.
bool is_admissible(const IntMatrix& A, const Word& w, bool cyclic = false);

// Admissible words of length n in lexicographic order; A must be 0-1.
// Throws std::length_error past `limit` words.
std::vector<Word> words(const IntMatrix& A, std::size_t n, std::size_t limit = 1u << 22);

struct Edge {
  std::size_t source;
  std::size_t target;
  std::size_t index;  // among the parallel edges source -> target
};

struct EdgeGraph {
  IntMatrix AG;  // 0-1, indexed by edges
  IntMatrix R;   // N x E, R(v, e) = 1 iff source(e) = v
  IntMatrix S;   // E x N, S(e, w) = 1 iff target(e) = w
  std::vector<Edge> edges;
};

// Edges ordered by source, then target, then parallel index.  A = RS and
// AG = SR.  Throws std::invalid_argument unless A is essential.
EdgeGraph edge_graph(const IntMatrix& A);

struct SseStep {
  IntMatrix R;
  IntMatrix S;
};

// matrices[k] = steps[k].R * steps[k].S and matrices[k+1] = steps[k].S * steps[k].R.
struct SseChain {
  std::vector<IntMatrix> matrices;
  std::vector<SseStep> steps;
};

// A = RS, B = SR exactly with R, S nonnegative.  Throws DimensionError when
// the shapes do not compose.
bool verify_sse_step(const IntMatrix& A, const IntMatrix& B, const IntMatrix& R, const IntMatrix& S);
bool verify_sse_chain(const SseChain& chain);

// AR = RB, SA = BS, A^ell = RS, B^ell = SR with R, S nonnegative.
bool verify_se(const IntMatrix& A, const IntMatrix& B, const IntMatrix& R, const IntMatrix& S, unsigned long ell);

// Result of a splitting or amalgamation move from A: A = R S, B = S R.
struct StateMove {
  IntMatrix B;
  IntMatrix R;
  IntMatrix S;
};

// partition[i] has one row per cell and N columns: row c counts the edges
// i -> j placed in cell c.  Rows must be nonzero and sum to row i of A.
// New states (i, c) are ordered lexicographically.
StateMove out_split(const IntMatrix& A, const std::vector<IntMatrix>& partition);
// Same with incoming edges: row c of partition[j] counts edges i -> j.
StateMove in_split(const IntMatrix& A, const std::vector<IntMatrix>& partition);
// Merge states u and v, which need equal columns (out) or equal rows (in).
// The merged state takes the place of min(u, v).
StateMove out_amalgamate(const IntMatrix& A, std::size_t u, std::size_t v);
StateMove in_amalgamate(const IntMatrix& A, std::size_t u, std::size_t v);

std::vector<IntMatrix> trivial_partition(const IntMatrix& A);

inline constexpr std::size_t kMaxChainStates = 12;

// Random splittings and amalgamations, every state count <= kMaxChainStates.
// Pure in (A, steps, seed).  Throws std::length_error if A is already too big.
SseChain random_sse_chain(const IntMatrix& A, std::size_t steps, std::uint64_t seed);

// trace(A^n), n >= 1.
Integer periodic_count(const IntMatrix& A, unsigned long n);

}  // namespace shiftlab
