#include "shiftlab/shift_spaces.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace shiftlab {

std::string to_string(const Word& w) {
  const bool digits = std::all_of(w.begin(), w.end(), [](std::size_t s) { return s < 9; });
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!digits && k > 0) out += ' ';
    out += std::to_string(w[k] + 1);
  }
  return out;
}

namespace {

void require_square(const IntMatrix& A, const char* what) {
  if (!A.is_square()) throw DimensionError(std::string(what) + ": matrix must be square");
}

void require_nonnegative(const IntMatrix& A, const char* what) {
  if (!A.is_nonnegative()) throw std::invalid_argument(std::string(what) + ": matrix has negative entries");
}

using Pattern = std::vector<std::vector<char>>;

Pattern pattern_of(const IntMatrix& A) {
  Pattern p(A.rows(), std::vector<char>(A.cols(), 0));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) p[i][j] = sgn(A(i, j)) > 0;
  return p;
}

Pattern pattern_product(const Pattern& a, const Pattern& b) {
  const std::size_t n = a.size();
  Pattern c(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < n; ++j) c[i][j] |= b[k][j];
  return c;
}

bool all_positive(const Pattern& p) {
  for (const auto& row : p)
    for (char x : row)
      if (!x) return false;
  return true;
}

// Vertices reachable from s by paths of length >= 1.
std::vector<char> reachable(const Pattern& p, std::size_t s) {
  const std::size_t n = p.size();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack;
  for (std::size_t j = 0; j < n; ++j)
    if (p[s][j] && !seen[j]) {
      seen[j] = 1;
      stack.push_back(j);
    }
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j)
      if (p[u][j] && !seen[j]) {
        seen[j] = 1;
        stack.push_back(j);
      }
  }
  return seen;
}

// gcd of cycle lengths of an irreducible pattern from BFS levels.
std::size_t period_of(const Pattern& p) {
  const std::size_t n = p.size();
  std::vector<long> level(n, -1);
  std::vector<std::size_t> queue{0};
  level[0] = 0;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::size_t u = queue[q];
    for (std::size_t v = 0; v < n; ++v)
      if (p[u][v] && level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
  }
  long g = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (p[u][v]) g = std::gcd(g, std::labs(level[u] + 1 - level[v]));
  return static_cast<std::size_t>(g);
}

std::size_t to_count(const Integer& x, const char* what) {
  if (!x.fits_ulong_p() || x > 1'000'000) throw std::length_error(std::string(what) + ": entry too large");
  return x.get_ui();
}

}  // namespace

bool is_essential(const IntMatrix& A) {
  for (std::size_t i = 0; i < A.rows(); ++i) {
    bool row = false, col = false;
    for (std::size_t j = 0; j < A.cols(); ++j) {
      row = row || sgn(A(i, j)) != 0;
      col = col || sgn(A(j, i)) != 0;
    }
    if (!row || !col) return false;
  }
  return true;
}

bool is_irreducible(const IntMatrix& A) {
  require_square(A, "is_irreducible");
  if (A.rows() == 0) return false;
  const Pattern p = pattern_of(A);
  for (std::size_t s = 0; s < p.size(); ++s) {
    const auto r = reachable(p, s);
    if (std::find(r.begin(), r.end(), 0) != r.end()) return false;
  }
  return true;
}

MarkovShiftSpec analyze(const IntMatrix& A) {
  require_square(A, "analyze");
  require_nonnegative(A, "analyze");
  MarkovShiftSpec s;
  s.matrix = A;
  s.alphabet_size = A.rows();
  s.is_01 = A.is_01();
  s.essential = is_essential(A);
  s.irreducible = is_irreducible(A);
  const std::size_t n = A.rows();

  s.is_permutation = s.is_01 && n > 0;
  for (std::size_t i = 0; i < n && s.is_permutation; ++i) {
    Integer row = 0, col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row += A(i, j);
      col += A(j, i);
    }
    s.is_permutation = row == 1 && col == 1;
  }

  const Pattern p = pattern_of(A);
  if (s.irreducible) {
    s.period = period_of(p);
    s.aperiodic = *s.period == 1;
  }
  if (s.aperiodic) {
    Pattern power = p;
    for (std::size_t k = 1; k <= n * n; ++k) {
      if (all_positive(power)) {
        s.n0 = k;
        break;
      }
      power = pattern_product(power, p);
    }
    if (!s.n0) throw std::runtime_error("analyze: no strictly positive power up to N^2");
  }

  if (n == 0) s.warnings.push_back("empty matrix");
  if (!s.irreducible) s.warnings.push_back("matrix is not irreducible");
  if (s.is_permutation) s.warnings.push_back("permutation matrix: the standing assumptions exclude it");
  if (!s.essential) s.warnings.push_back("matrix is not essential (zero row or column)");
  if (!s.is_01) s.warnings.push_back("matrix is not 0-1; symbolic operations need the edge graph");
  if (s.irreducible && !s.aperiodic) s.warnings.push_back("matrix has period " + std::to_string(*s.period));
  return s;
}

bool is_admissible(const IntMatrix& A, const Word& w, bool cyclic) {
  for (std::size_t s : w)
    if (s >= A.rows()) return false;
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (sgn(A(w[k], w[k + 1])) <= 0) return false;
  if (cyclic && !w.empty() && sgn(A(w.back(), w.front())) <= 0) return false;
  return true;
}

std::vector<Word> words(const IntMatrix& A, std::size_t n, std::size_t limit) {
  require_square(A, "words");
  if (!A.is_01()) throw std::invalid_argument("words: matrix is not 0-1 (take the edge graph first)");
  std::vector<Word> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  const std::size_t N = A.rows();
  Word w;
  // Depth-first in lexicographic order.
  auto extend = [&](auto&& self) -> void {
    if (w.size() == n) {
      if (out.size() >= limit) throw std::length_error("words: more than " + std::to_string(limit) + " words");
      out.push_back(w);
      return;
    }
    for (std::size_t s = 0; s < N; ++s) {
      if (!w.empty() && sgn(A(w.back(), s)) == 0) continue;
      w.push_back(s);
      self(self);
      w.pop_back();
    }
  };
  extend(extend);
  return out;
}

EdgeGraph edge_graph(const IntMatrix& A) {
  require_square(A, "edge_graph");
  require_nonnegative(A, "edge_graph");
  if (!is_essential(A)) throw std::invalid_argument("edge_graph: matrix is not essential");
  const std::size_t N = A.rows();
  EdgeGraph g;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const std::size_t m = to_count(A(i, j), "edge_graph");
      for (std::size_t k = 0; k < m; ++k) g.edges.push_back({i, j, k});
    }
  const std::size_t E = g.edges.size();
  g.R = IntMatrix(N, E);
  g.S = IntMatrix(E, N);
  g.AG = IntMatrix(E, E);
  for (std::size_t e = 0; e < E; ++e) {
    g.R(g.edges[e].source, e) = 1;
    g.S(e, g.edges[e].target) = 1;
  }
  for (std::size_t e = 0; e < E; ++e)
    for (std::size_t f = 0; f < E; ++f)
      if (g.edges[e].target == g.edges[f].source) g.AG(e, f) = 1;
  if (!verify_sse_step(A, g.AG, g.R, g.S)) throw std::logic_error("edge_graph: A = RS, AG = SR failed");
  return g;
}

bool verify_sse_step(const IntMatrix& A, const IntMatrix& B, const IntMatrix& R, const IntMatrix& S) {
  require_square(A, "verify_sse_step");
  require_square(B, "verify_sse_step");
  const std::size_t N = A.rows(), M = B.rows();
  if (R.rows() != N || R.cols() != M || S.rows() != M || S.cols() != N)
    throw DimensionError("verify_sse_step: R must be N x M and S must be M x N");
  if (!R.is_nonnegative() || !S.is_nonnegative()) return false;
  return R * S == A && S * R == B;
}

bool verify_sse_chain(const SseChain& chain) {
  if (chain.matrices.empty() || chain.matrices.size() != chain.steps.size() + 1)
    throw DimensionError("verify_sse_chain: need one more matrix than steps");
  for (std::size_t k = 0; k < chain.steps.size(); ++k)
    if (!verify_sse_step(chain.matrices[k], chain.matrices[k + 1], chain.steps[k].R, chain.steps[k].S)) return false;
  return true;
}

bool verify_se(const IntMatrix& A, const IntMatrix& B, const IntMatrix& R, const IntMatrix& S, unsigned long ell) {
  if (ell < 1) throw std::invalid_argument("verify_se: lag must be at least 1");
  require_square(A, "verify_se");
  require_square(B, "verify_se");
  const std::size_t N = A.rows(), M = B.rows();
  if (R.rows() != N || R.cols() != M || S.rows() != M || S.cols() != N)
    throw DimensionError("verify_se: R must be N x M and S must be M x N");
  if (!R.is_nonnegative() || !S.is_nonnegative()) return false;
  return A * R == R * B && S * A == B * S && power(A, ell) == R * S && power(B, ell) == S * R;
}

StateMove out_split(const IntMatrix& A, const std::vector<IntMatrix>& partition) {
  require_square(A, "out_split");
  require_nonnegative(A, "out_split");
  const std::size_t N = A.rows();
  if (partition.size() != N) throw std::invalid_argument("split: need one partition per state");
  std::size_t total = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const IntMatrix& P = partition[i];
    if (P.cols() != N) throw std::invalid_argument("split: partition of state " + std::to_string(i + 1) + " has wrong width");
    if (P.rows() == 0) throw std::invalid_argument("split: state " + std::to_string(i + 1) + " has no cells");
    if (!P.is_nonnegative()) throw std::invalid_argument("split: negative edge count");
    for (std::size_t c = 0; c < P.rows(); ++c) {
      bool nonempty = false;
      for (std::size_t j = 0; j < N; ++j) nonempty = nonempty || sgn(P(c, j)) > 0;
      if (!nonempty) throw std::invalid_argument("split: empty cell at state " + std::to_string(i + 1));
    }
    for (std::size_t j = 0; j < N; ++j) {
      Integer sum = 0;
      for (std::size_t c = 0; c < P.rows(); ++c) sum += P(c, j);
      if (sum != A(i, j))
        throw std::invalid_argument("split: cells of state " + std::to_string(i + 1) + " do not cover its edges");
    }
    total += P.rows();
  }
  StateMove m;
  m.R = IntMatrix(N, total);
  m.S = IntMatrix(total, N);
  std::size_t s = 0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t c = 0; c < partition[i].rows(); ++c, ++s) {
      m.R(i, s) = 1;
      for (std::size_t j = 0; j < N; ++j) m.S(s, j) = partition[i](c, j);
    }
  m.B = m.S * m.R;
  return m;
}

StateMove in_split(const IntMatrix& A, const std::vector<IntMatrix>& partition) {
  require_square(A, "in_split");
  const StateMove t = out_split(A.transpose(), partition);
  return {t.B.transpose(), t.S.transpose(), t.R.transpose()};
}

StateMove out_amalgamate(const IntMatrix& A, std::size_t u, std::size_t v) {
  require_square(A, "amalgamate");
  const std::size_t N = A.rows();
  if (u == v || u >= N || v >= N) throw std::invalid_argument("amalgamate: need two distinct states");
  if (A.column(u) != A.column(v)) throw std::invalid_argument("out_amalgamate: states have different incoming edges");
  const std::size_t keep = std::min(u, v), drop = std::max(u, v);
  std::vector<std::size_t> to_new(N), rep;
  for (std::size_t s = 0, t = 0; s < N; ++s) {
    if (s == drop) continue;
    to_new[s] = t++;
    rep.push_back(s);
  }
  to_new[drop] = to_new[keep];
  StateMove m;
  m.S = IntMatrix(N - 1, N);  // division
  m.R = IntMatrix(N, N - 1);
  for (std::size_t s = 0; s < N; ++s) {
    m.S(to_new[s], s) = 1;
    for (std::size_t t = 0; t < N - 1; ++t) m.R(s, t) = A(s, rep[t]);
  }
  m.B = m.S * m.R;
  return m;
}

StateMove in_amalgamate(const IntMatrix& A, std::size_t u, std::size_t v) {
  require_square(A, "amalgamate");
  if (u < A.rows() && v < A.rows() && u != v && A.row(u) != A.row(v))
    throw std::invalid_argument("in_amalgamate: states have different outgoing edges");
  const StateMove t = out_amalgamate(A.transpose(), u, v);
  return {t.B.transpose(), t.S.transpose(), t.R.transpose()};
}

std::vector<IntMatrix> trivial_partition(const IntMatrix& A) {
  std::vector<IntMatrix> p;
  for (std::size_t i = 0; i < A.rows(); ++i) p.push_back(A.block(i, 0, 1, A.cols()));
  return p;
}

namespace {

// Two-cell split of the edges at state i (row i of M), cut at a random point
// of a shuffled edge list.
IntMatrix random_two_cells(const IntMatrix& M, std::size_t i, std::mt19937_64& rng) {
  const std::size_t N = M.cols();
  std::vector<std::size_t> edges;
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = to_count(M(i, j), "random_sse_chain"); k > 0; --k) edges.push_back(j);
  std::shuffle(edges.begin(), edges.end(), rng);
  const std::size_t cut = std::uniform_int_distribution<std::size_t>(1, edges.size() - 1)(rng);
  IntMatrix cells(2, N);
  for (std::size_t k = 0; k < edges.size(); ++k) cells(k < cut ? 0 : 1, edges[k]) += 1;
  return cells;
}

std::size_t degree(const IntMatrix& M, std::size_t i) {
  std::size_t d = 0;
  for (std::size_t j = 0; j < M.cols(); ++j) d += to_count(M(i, j), "random_sse_chain");
  return d;
}

}  // namespace

SseChain random_sse_chain(const IntMatrix& A, std::size_t steps, std::uint64_t seed) {
  require_square(A, "random_sse_chain");
  require_nonnegative(A, "random_sse_chain");
  if (A.rows() > kMaxChainStates)
    throw std::length_error("random_sse_chain: more than " + std::to_string(kMaxChainStates) + " states");
  std::mt19937_64 rng(seed);
  SseChain chain;
  chain.matrices.push_back(A);
  for (std::size_t k = 0; k < steps; ++k) {
    const IntMatrix& M = chain.matrices.back();
    const std::size_t N = M.rows();
    const IntMatrix Mt = M.transpose();

    enum Kind { OutSplit, InSplit, OutMerge, InMerge };
    std::vector<std::pair<Kind, std::pair<std::size_t, std::size_t>>> moves;
    if (N + 1 <= kMaxChainStates)
      for (std::size_t i = 0; i < N; ++i) {
        if (degree(M, i) >= 2) moves.push_back({OutSplit, {i, 0}});
        if (degree(Mt, i) >= 2) moves.push_back({InSplit, {i, 0}});
      }
    for (std::size_t u = 0; u < N; ++u)
      for (std::size_t v = u + 1; v < N; ++v) {
        if (M.column(u) == M.column(v)) moves.push_back({OutMerge, {u, v}});
        if (M.row(u) == M.row(v)) moves.push_back({InMerge, {u, v}});
      }

    StateMove m;
    if (moves.empty()) {
      m = out_split(M, trivial_partition(M));
    } else {
      const auto& [kind, states] = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
      const auto [u, v] = states;
      if (kind == OutSplit || kind == InSplit) {
        const IntMatrix& src = kind == OutSplit ? M : Mt;
        std::vector<IntMatrix> part = trivial_partition(src);
        part[u] = random_two_cells(src, u, rng);
        m = kind == OutSplit ? out_split(M, part) : in_split(M, part);
      } else {
        m = kind == OutMerge ? out_amalgamate(M, u, v) : in_amalgamate(M, u, v);
      }
    }
    chain.steps.push_back({m.R, m.S});
    chain.matrices.push_back(m.B);
  }
  return chain;
}

Integer periodic_count(const IntMatrix& A, unsigned long n) {
  require_square(A, "periodic_count");
  if (n < 1) throw std::invalid_argument("periodic_count: n must be at least 1");
  return trace(power(A, n));
}

}  // namespace shiftlab
