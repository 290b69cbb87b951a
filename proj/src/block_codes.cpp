#include "shiftlab/block_codes.hpp"

#include <stdexcept>

namespace shiftlab {

namespace {

void require_01(const IntMatrix& A, const char* what) {
  if (!A.is_square() || !A.is_01()) throw std::invalid_argument(std::string(what) + ": need a square 0-1 matrix");
}

Word slice(const Word& w, std::size_t from, std::size_t len) {
  return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(from + len));
}

Word rotate_left(const Word& w, std::size_t r) {
  if (w.empty()) return w;
  Word out(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) out[k] = w[(k + r) % w.size()];
  return out;
}

}  // namespace

BlockMap::BlockMap(IntMatrix source, IntMatrix target, std::size_t memory, std::size_t anticipation,
                   std::map<Word, std::size_t> table)
    : source_(std::move(source)), target_(std::move(target)), m_(memory), n_(anticipation), table_(std::move(table)) {
  require_01(source_, "block map source");
  require_01(target_, "block map target");
  const std::vector<Word> windows = words(source_, window());
  if (windows.size() != table_.size())
    throw std::invalid_argument("block map: table has " + std::to_string(table_.size()) + " entries, source has " +
                                std::to_string(windows.size()) + " admissible windows");
  for (const Word& w : windows) {
    const auto it = table_.find(w);
    if (it == table_.end()) throw std::invalid_argument("block map: no entry for window " + to_string(w));
    if (it->second >= target_.rows())
      throw std::invalid_argument("block map: image of " + to_string(w) + " is not a target symbol");
  }
  for (const Word& w : words(source_, window() + 1)) {
    const std::size_t a = table_.at(slice(w, 0, window()));
    const std::size_t b = table_.at(slice(w, 1, window()));
    if (sgn(target_(a, b)) == 0)
      throw std::invalid_argument("block map: images along " + to_string(w) + " are not admissible in the target");
  }
}

std::size_t BlockMap::operator()(const Word& w) const {
  const auto it = table_.find(w);
  if (it == table_.end()) throw std::invalid_argument("block map: no entry for window " + to_string(w));
  return it->second;
}

Word apply_word(const BlockMap& phi, const Word& w) {
  if (w.size() < phi.window())
    throw std::invalid_argument("apply_word: word shorter than the window " + std::to_string(phi.window()));
  if (!is_admissible(phi.source(), w)) throw std::invalid_argument("apply_word: word " + to_string(w) + " is inadmissible");
  Word out;
  out.reserve(w.size() - phi.window() + 1);
  for (std::size_t i = 0; i + phi.window() <= w.size(); ++i) out.push_back(phi(slice(w, i, phi.window())));
  return out;
}

Word apply_periodic(const BlockMap& phi, const Word& cycle) {
  if (cycle.empty() || !is_admissible(phi.source(), cycle, true))
    throw std::invalid_argument("apply_periodic: cycle " + to_string(cycle) + " is inadmissible");
  const std::size_t p = cycle.size();
  Word out(p), window(phi.window());
  for (std::size_t k = 0; k < p; ++k) {
    // x_{k-m} ... x_{k+n}, indices mod p
    for (std::size_t t = 0; t < window.size(); ++t) window[t] = cycle[(k + t + p * phi.window() - phi.memory()) % p];
    out[k] = phi(window);
  }
  return out;
}

BlockMap compose(const BlockMap& phi, const BlockMap& psi) {
  if (phi.target() != psi.source()) throw std::invalid_argument("compose: target of the first map is not the source of the second");
  const std::size_t m = phi.memory() + psi.memory();
  const std::size_t n = phi.anticipation() + psi.anticipation();
  std::map<Word, std::size_t> table;
  for (const Word& w : words(phi.source(), m + n + 1)) table.emplace(w, psi(apply_word(phi, w)));
  return BlockMap(phi.source(), psi.target(), m, n, std::move(table));
}

BlockMap identity_code(const IntMatrix& A) {
  require_01(A, "identity_code");
  std::map<Word, std::size_t> table;
  for (std::size_t s = 0; s < A.rows(); ++s) table[{s}] = s;
  return BlockMap(A, A, 0, 0, std::move(table));
}

BlockMap shift_code(const IntMatrix& A) {
  require_01(A, "shift_code");
  std::map<Word, std::size_t> table;
  for (const Word& w : words(A, 2)) table[w] = w[1];
  return BlockMap(A, A, 0, 1, std::move(table));
}

std::vector<Word> periodic_points(const IntMatrix& A, std::size_t p) {
  require_01(A, "periodic_points");
  if (p < 1) throw std::invalid_argument("periodic_points: period must be at least 1");
  std::vector<Word> out;
  for (Word& w : words(A, p))
    if (sgn(A(w.back(), w.front())) > 0) out.push_back(std::move(w));
  return out;
}

LagReport verify_lag_conjugacy(const BlockMap& phi, const BlockMap& psi, std::size_t K, std::size_t P) {
  if (P < 1) throw std::invalid_argument("verify_lag_conjugacy: P must be at least 1");
  if (phi.target() != psi.source() || psi.target() != phi.source())
    throw std::invalid_argument("verify_lag_conjugacy: maps do not go back and forth between the same shifts");
  LagReport rep;
  auto check = [&](const BlockMap& first, const BlockMap& second, const char* side) {
    for (std::size_t p = 1; p <= P && rep.passed; ++p)
      for (const Word& x : periodic_points(first.source(), p)) {
        ++rep.points_checked;
        const Word got = apply_periodic(second, apply_periodic(first, x));
        const Word expected = rotate_left(x, (2 * K) % p);
        if (got != expected) {
          rep.passed = false;
          rep.counterexample = std::string(side) + " periodic point " + to_string(x) + ": got " + to_string(got) +
                               ", expected " + to_string(expected);
          return;
        }
      }
  };
  check(phi, psi, "source");
  if (rep.passed) check(psi, phi, "target");
  return rep;
}

HigherBlock higher_block_code(const IntMatrix& A, std::size_t k) {
  require_01(A, "higher_block_code");
  if (k < 1) throw std::invalid_argument("higher_block_code: k must be at least 1");
  if (!is_essential(A)) throw std::invalid_argument("higher_block_code: matrix is not essential");
  std::vector<Word> states = words(A, k);
  std::map<Word, std::size_t> index;
  for (std::size_t s = 0; s < states.size(); ++s) index[states[s]] = s;

  IntMatrix Ak(states.size(), states.size());
  for (std::size_t u = 0; u < states.size(); ++u)
    for (std::size_t v = 0; v < states.size(); ++v) {
      const Word& x = states[u];
      const Word& y = states[v];
      if (sgn(A(x.back(), y.back())) == 0) continue;
      if (slice(x, 1, k - 1) == slice(y, 0, k - 1)) Ak(u, v) = 1;
    }

  std::map<Word, std::size_t> forward = index;
  std::map<Word, std::size_t> back;
  for (std::size_t s = 0; s < states.size(); ++s) back[{s}] = states[s].front();
  BlockMap phi(A, Ak, 0, k - 1, std::move(forward));
  BlockMap psi(Ak, A, 0, 0, std::move(back));
  return {std::move(Ak), std::move(states), std::move(phi), std::move(psi)};
}

}  // namespace shiftlab
