#include <algorithm>

#include "doctest.h"
#include "shiftlab/block_codes.hpp"
#include "test_support.hpp"

using namespace shiftlab;

namespace {

const IntMatrix kGolden{{1, 1}, {1, 0}};
const IntMatrix kFull2{{1, 1}, {1, 1}};
const IntMatrix kOnes3{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};

IntMatrix full_shift(std::size_t k) {
  IntMatrix A(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) A(i, j) = 1;
  return A;
}

BlockMap xor_code() {
  std::map<Word, std::size_t> table;
  for (const Word& w : words(kFull2, 2)) table[w] = w[0] ^ w[1];
  return BlockMap(kFull2, kFull2, 0, 1, table);
}

IntMatrix random_irreducible_01(std::mt19937_64& rng, std::size_t max_n) {
  std::uniform_int_distribution<std::size_t> size(1, max_n);
  while (true) {
    const std::size_t n = size(rng);
    IntMatrix A = testing::random_nonnegative(rng, n, n, 1);
    if (is_irreducible(A)) return A;
  }
}

// Random table on the windows of `source` into a full shift.
BlockMap random_code(std::mt19937_64& rng, const IntMatrix& source, std::size_t symbols, std::size_t m, std::size_t n) {
  std::uniform_int_distribution<std::size_t> pick(0, symbols - 1);
  std::map<Word, std::size_t> table;
  for (const Word& w : words(source, m + n + 1)) table[w] = pick(rng);
  return BlockMap(source, full_shift(symbols), m, n, table);
}

Word random_walk(std::mt19937_64& rng, const IntMatrix& A, std::size_t len) {
  std::uniform_int_distribution<std::size_t> start(0, A.rows() - 1);
  Word w{start(rng)};
  while (w.size() < len) {
    std::vector<std::size_t> next;
    for (std::size_t j = 0; j < A.cols(); ++j)
      if (sgn(A(w.back(), j)) > 0) next.push_back(j);
    std::uniform_int_distribution<std::size_t> pick(0, next.size() - 1);
    w.push_back(next[pick(rng)]);
  }
  return w;
}

Word rotated(const Word& w, std::size_t r) {
  Word out = w;
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(r % w.size()), out.end());
  return out;
}

std::vector<IntMatrix> corpus() {
  std::vector<IntMatrix> out{kGolden, kFull2, kOnes3, IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{1}},
                             IntMatrix{{1, 1, 0}, {0, 0, 1}, {1, 1, 0}}, IntMatrix{{1, 1, 1}, {1, 1, 0}, {1, 1, 0}}};
  std::mt19937_64 rng(41);
  while (out.size() < 20) out.push_back(random_irreducible_01(rng, 5));
  return out;
}

}  // namespace

TEST_CASE("apply_word examples") {
  const Word w{0, 0, 1, 0, 1};
  CHECK(apply_word(identity_code(kGolden), w) == w);
  CHECK(apply_word(shift_code(kGolden), w) == Word{0, 1, 0, 1});
  CHECK(to_string(apply_word(xor_code(), Word{0, 0, 1, 0})) == "122");

  CHECK_THROWS_AS(apply_word(shift_code(kGolden), Word{0}), std::invalid_argument);
  CHECK_THROWS_AS(apply_word(identity_code(kGolden), Word{1, 1}), std::invalid_argument);
}

TEST_CASE("block map validation") {
  CHECK_THROWS_AS(BlockMap(kGolden, kGolden, 0, 0, {{{0}, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(BlockMap(kGolden, kGolden, 0, 0, {{{0}, 0}, {{1}, 1}, {{2}, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(BlockMap(kGolden, kGolden, 0, 0, {{{0}, 0}, {{1}, 2}}), std::invalid_argument);
  // constant 2 is not a golden-mean point
  CHECK_THROWS_AS(BlockMap(kGolden, kGolden, 0, 0, {{{0}, 1}, {{1}, 1}}), std::invalid_argument);
  // 22 is not a window, so the table may not mention it
  CHECK_THROWS_AS(BlockMap(kGolden, kGolden, 0, 1, {{{0, 0}, 0}, {{0, 1}, 1}, {{1, 0}, 0}, {{1, 1}, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(BlockMap(IntMatrix{{2}}, kFull2, 0, 0, {{{0}, 0}}), std::invalid_argument);
  CHECK(BlockMap(kGolden, kGolden, 0, 0, {{{0}, 0}, {{1}, 0}}).window() == 1);
}

TEST_CASE("apply_periodic examples") {
  const Word cycle{0, 0, 1};
  CHECK(apply_periodic(identity_code(kGolden), cycle) == cycle);
  CHECK(apply_periodic(shift_code(kGolden), cycle) == Word{0, 1, 0});

  const HigherBlock hb = higher_block_code(kGolden, 2);
  CHECK(to_string(apply_periodic(hb.phi, cycle)) == "123");
  CHECK(apply_periodic(hb.psi, Word{0, 1, 2}) == cycle);

  CHECK_THROWS_AS(apply_periodic(identity_code(kGolden), Word{0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(apply_periodic(identity_code(kGolden), Word{1}), std::invalid_argument);
  CHECK_THROWS_AS(apply_periodic(identity_code(kGolden), Word{}), std::invalid_argument);
}

TEST_CASE("apply_periodic commutes with rotation") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 50; ++t) {
    const IntMatrix A = random_irreducible_01(rng, 4);
    const BlockMap phi = random_code(rng, A, 3, t % 3, (t / 3) % 3);
    for (std::size_t p = 1; p <= 6; ++p)
      for (const Word& x : periodic_points(A, p))
        for (std::size_t r = 0; r < p; ++r) CHECK(apply_periodic(phi, rotated(x, r)) == rotated(apply_periodic(phi, x), r));
  }
}

TEST_CASE("apply_periodic agrees with apply_word on an unrolled cycle") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 50; ++t) {
    const IntMatrix A = random_irreducible_01(rng, 4);
    const BlockMap phi = random_code(rng, A, 2, t % 3, (t / 3) % 3);
    for (const Word& x : periodic_points(A, 5)) {
      Word unrolled;
      for (int k = 0; k < 4; ++k) unrolled.insert(unrolled.end(), x.begin(), x.end());
      const Word y = apply_word(phi, unrolled);
      const Word cyc = apply_periodic(phi, x);
      // output index i sits at input index i + m
      for (std::size_t i = 0; i < y.size(); ++i) CHECK(y[i] == cyc[(i + phi.memory()) % 5]);
    }
  }
}

TEST_CASE("compose examples") {
  const BlockMap x = xor_code();
  const BlockMap c = compose(identity_code(kFull2), x);
  CHECK(c.table() == x.table());

  const BlockMap s2 = compose(shift_code(kGolden), shift_code(kGolden));
  CHECK(s2.memory() == 0);
  CHECK(s2.anticipation() == 2);
  for (const auto& [w, s] : s2.table()) CHECK(s == w[2]);

  const HigherBlock hb = higher_block_code(kGolden, 2);
  const BlockMap round = compose(hb.phi, hb.psi);
  for (std::size_t L = 2; L <= 10; ++L)
    for (const Word& w : words(kGolden, L)) CHECK(apply_word(round, w) == Word(w.begin(), w.end() - 1));

  CHECK_THROWS_AS(compose(xor_code(), identity_code(kGolden)), std::invalid_argument);
}

TEST_CASE("compose property on random codes") {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 40; ++t) {
    const IntMatrix A = random_irreducible_01(rng, 3);
    const BlockMap phi = random_code(rng, A, 2, t % 2, (t / 2) % 2);
    const BlockMap psi = random_code(rng, full_shift(2), 3, (t / 4) % 2, 1);
    const BlockMap c = compose(phi, psi);
    CHECK(c.memory() == phi.memory() + psi.memory());
    CHECK(c.anticipation() == phi.anticipation() + psi.anticipation());
    for (int k = 0; k < 100; ++k) {
      std::uniform_int_distribution<std::size_t> len(std::max<std::size_t>(4, c.window()), 12);
      const Word w = random_walk(rng, A, len(rng));
      CHECK(apply_word(c, w) == apply_word(psi, apply_word(phi, w)));
    }
  }
}

TEST_CASE("periodic points") {
  CHECK(periodic_points(kGolden, 1).size() == 1);
  CHECK(periodic_points(kGolden, 2).size() == 3);
  CHECK(periodic_points(kGolden, 3).size() == 4);
  CHECK(periodic_points(kFull2, 4).size() == 16);
  for (const IntMatrix& A : corpus())
    for (std::size_t p = 1; p <= 6; ++p) CHECK(Integer(periodic_points(A, p).size()) == periodic_count(A, p));
  CHECK_THROWS_AS(periodic_points(kGolden, 0), std::invalid_argument);
}

TEST_CASE("lag conjugacy examples") {
  for (const IntMatrix& A : corpus()) {
    const LagReport r = verify_lag_conjugacy(identity_code(A), identity_code(A), 0, 6);
    CHECK(r.passed);
    CHECK(r.counterexample.empty());
  }

  CHECK(verify_lag_conjugacy(shift_code(kGolden), shift_code(kGolden), 1, 6).passed);
  const LagReport wrong_lag = verify_lag_conjugacy(shift_code(kGolden), shift_code(kGolden), 0, 6);
  CHECK_FALSE(wrong_lag.passed);
  CHECK_FALSE(wrong_lag.counterexample.empty());

  const HigherBlock hb = higher_block_code(kGolden, 2);
  const LagReport golden = verify_lag_conjugacy(hb.phi, hb.psi, 0, 6);
  CHECK(golden.passed);
  CHECK(golden.points_checked > 0);

  CHECK_FALSE(verify_lag_conjugacy(xor_code(), xor_code(), 0, 4).passed);
  CHECK_THROWS_AS(verify_lag_conjugacy(identity_code(kGolden), identity_code(kGolden), 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(verify_lag_conjugacy(hb.phi, hb.phi, 0, 3), std::invalid_argument);
}

TEST_CASE("higher block codes") {
  const HigherBlock one = higher_block_code(kGolden, 1);
  CHECK(one.Ak == kGolden);
  CHECK(one.phi.table() == identity_code(kGolden).table());
  CHECK(one.psi.table() == identity_code(kGolden).table());

  const HigherBlock two = higher_block_code(kGolden, 2);
  CHECK(two.Ak == edge_graph(kGolden).AG);

  const HigherBlock three = higher_block_code(kFull2, 3);
  CHECK(three.states.size() == 8);
  CHECK(three.Ak.rows() == 8);
  CHECK(verify_lag_conjugacy(three.phi, three.psi, 0, 6).passed);

  CHECK_THROWS_AS(higher_block_code(kGolden, 0), std::invalid_argument);
  CHECK_THROWS_AS(higher_block_code(IntMatrix{{1, 0}, {1, 0}}, 2), std::invalid_argument);
}

TEST_CASE("higher block and edge graph recodings verify and keep periodic counts") {
  for (const IntMatrix& A : corpus()) {
    if (!is_essential(A)) continue;
    for (std::size_t k = 1; k <= 3; ++k) {
      const HigherBlock hb = higher_block_code(A, k);
      CHECK(verify_lag_conjugacy(hb.phi, hb.psi, 0, 6).passed);
      for (unsigned long n = 1; n <= 6; ++n) CHECK(periodic_count(A, n) == periodic_count(hb.Ak, n));
    }
    const EdgeGraph g = edge_graph(A);
    CHECK(g.AG == higher_block_code(A, 2).Ak);
  }
}
