#include "doctest.h"
#include "shiftlab/ck_invariants.hpp"
#include "shiftlab/shift_spaces.hpp"
#include "test_support.hpp"

using namespace shiftlab;

namespace {

const IntMatrix kOnes3{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
const IntMatrix kB3{{1, 1, 1}, {1, 1, 0}, {1, 1, 0}};
const IntMatrix kA41{{4, 1}, {1, 0}};
const IntMatrix kGolden{{1, 1}, {1, 0}};
const IntMatrix kFull2{{1, 1}, {1, 1}};

IntMatrix random_essential(std::mt19937_64& rng, std::size_t max_n, long hi) {
  std::uniform_int_distribution<std::size_t> size(1, max_n);
  while (true) {
    const std::size_t n = size(rng);
    IntMatrix A = testing::random_nonnegative(rng, n, n, hi);
    if (testing::is_essential(A)) return A;
  }
}

const InvariantCheck& find(const Comparison& c, const std::string& name) {
  for (const auto& check : c.checks)
    if (check.name == name) return check;
  throw std::logic_error("no check " + name);
}

}  // namespace

TEST_CASE("Bowen-Franks examples") {
  const BowenFranks a = bowen_franks(kOnes3);
  CHECK(a.group.to_string() == "Z/2");
  CHECK(a.det == -2);
  const BowenFranks b = bowen_franks(kB3);
  CHECK(b.group.to_string() == "Z/2");
  CHECK(b.det == -2);
  const BowenFranks g = bowen_franks(kGolden);
  CHECK(g.group.is_trivial());
  CHECK(g.det == -1);
  CHECK(bowen_franks(IntMatrix{{1}}).group.free_rank() == 1);
  CHECK_THROWS_AS(bowen_franks(IntMatrix{{1, 1}}), DimensionError);
  CHECK_THROWS_AS(bowen_franks(IntMatrix{{1, -1}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("|coker(I - A)| = |det(I - A)| when the determinant is nonzero") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    const IntMatrix A = random_essential(rng, 5, 4);
    const BowenFranks bf = bowen_franks(A);
    if (sgn(bf.det) == 0) {
      CHECK(bf.group.free_rank() > 0);
    } else {
      REQUIRE(bf.group.order().has_value());
      CHECK(*bf.group.order() == abs(bf.det));
    }
  }
}

TEST_CASE("K0 with unit examples") {
  const K0Group a41 = k0(kA41);
  CHECK(a41.group.to_string() == "Z/4");
  CHECK(order(a41.unit) == Integer(2));
  CHECK(a41.unit.to_string() == "[2]");

  const K0Group ones = k0(kOnes3);
  CHECK(ones.group.to_string() == "Z/2");
  CHECK(ones.unit.to_string() == "[1]");

  const K0Group full = k0(kFull2);
  CHECK(full.group.is_trivial());
  CHECK(full.unit.is_zero());
}

TEST_CASE("e-pair examples") {
  CHECK(e_invariant(kOnes3).to_string() == "(Z/2,[1])");
  CHECK(e_invariant(kB3).to_string() == "(Z/2,[0])");
  const PairInvariant e41 = e_invariant(kA41);
  CHECK(e41.to_string() == "(Z/4,[2])");
  CHECK(order(e41.element()) == Integer(2));
}

TEST_CASE("unit pair examples") {
  const GroupElement u41 = unit_invariant(kA41);
  CHECK(u41.is_zero());
  const PairComparison c = pair_equiv(e_invariant(kA41), PairInvariant(u41));
  CHECK(c.verdict == PairVerdict::Inequivalent);
  CHECK(PairInvariant(u41).to_string() == "(Z/4,[0])");

  CHECK(unit_invariant(kFull2).is_zero());
  CHECK(unit_invariant(kOnes3).to_string() == "[1]");
}

TEST_CASE("compare examples") {
  const Comparison c = compare(kOnes3, kB3);
  REQUIRE(c.checks.size() == 4);
  CHECK(c.checks[0].name == "bf");
  CHECK(c.checks[1].name == "det");
  CHECK(c.checks[2].name == "k0-unit");
  CHECK(c.checks[3].name == "e-pair");
  CHECK(find(c, "bf").verdict == PairVerdict::Equivalent);
  CHECK(find(c, "det").verdict == PairVerdict::Equivalent);
  CHECK(find(c, "e-pair").verdict == PairVerdict::Inequivalent);
  CHECK(find(c, "e-pair").left == "(Z/2,[1])");
  CHECK(find(c, "e-pair").right == "(Z/2,[0])");
  CHECK(c.distinguished);
  CHECK(c.verdict == "distinguished");

  const Comparison same = compare(kA41, kA41);
  CHECK_FALSE(same.distinguished);
  CHECK(same.verdict == kNotDistinguished);

  const Comparison fg = compare(kFull2, kGolden);
  CHECK_FALSE(fg.distinguished);
  CHECK(periodic_count(kFull2, 1) != periodic_count(kGolden, 1));
}

TEST_CASE("compare is reflexive and symmetric") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 40; ++t) {
    const IntMatrix A = random_essential(rng, 4, 3);
    const IntMatrix B = random_essential(rng, 4, 3);
    CHECK_FALSE(compare(A, A).distinguished);
    const Comparison ab = compare(A, B), ba = compare(B, A);
    CHECK(ab.verdict == ba.verdict);
    for (std::size_t i = 0; i < ab.checks.size(); ++i) {
      CHECK(ab.checks[i].verdict == ba.checks[i].verdict);
      CHECK(ab.checks[i].left == ba.checks[i].right);
    }
  }
}

TEST_CASE("kunneth examples") {
  const KunnethTypes z2 = kunneth(IsoType{{2}, 0});
  CHECK(z2.tensor_part == IsoType{{2}, 0});
  CHECK(z2.k0 == IsoType{{2}, 0});
  CHECK(z2.k1 == IsoType{{2}, 0});

  const KunnethTypes trivial = kunneth(IsoType{{}, 0});
  CHECK(trivial.tensor_part == IsoType{{}, 0});
  CHECK(trivial.k0 == IsoType{{}, 0});
  CHECK(trivial.k1 == IsoType{{}, 0});

  const KunnethTypes z = kunneth(IsoType{{}, 1});
  CHECK(z.tensor_part == IsoType{{}, 1});
  CHECK(z.k0 == IsoType{{}, 2});
  CHECK(z.k1 == IsoType{{}, 2});

  // Z + Z/2 + Z/6: exponents 2n + 2k - (2i - 1) = 5, 3
  const KunnethTypes mixed = kunneth(IsoType{{2, 6}, 1});
  CHECK(mixed.tensor_part == IsoType{{2, 2, 2, 2, 2, 6, 6, 6}, 1});
  CHECK(mixed.k1.free_rank == 2);
  // 2n copies of {2, 6} plus Tor = {2, 2, 2, 6}
  CHECK(mixed.k1.to_string() == "Z/2 + Z/2 + Z/2 + Z/2 + Z/2 + Z/6 + Z/6 + Z/6 + Z^2");

  CHECK(kunneth(kOnes3).tensor_part.to_string() == "Z/2");
}

TEST_CASE("kunneth tensor part matches the computed e-pair group") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    const IntMatrix A = random_essential(rng, 4, 4);
    CHECK(iso_type(e_pair(A).tensor.group) == kunneth(A).tensor_part);
  }
}

TEST_CASE("sse witness examples") {
  const WitnessRecord trivial = sse_witness_action(kA41, IntMatrix::identity(2));
  CHECK(trivial.passed());
  CHECK(trivial.image_text == trivial.target_text);

  const EdgeGraph g = edge_graph(kGolden);
  CHECK(sse_witness_action(g.R, g.S).passed());

  const EdgeGraph g3 = edge_graph(kOnes3);
  const WitnessRecord w3 = sse_witness_action(g3.R, g3.S);
  CHECK(w3.passed());
  CHECK(w3.target_text == e_pair(g3.AG).e.to_string());

  CHECK_THROWS_AS(sse_witness_action(IntMatrix(2, 3), IntMatrix(2, 2)), DimensionError);
  CHECK_THROWS_AS(sse_witness_action(IntMatrix{{-1}}, IntMatrix{{1}}), std::invalid_argument);
}

TEST_CASE("sse witness on random 3x2 and 2x3 factors") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 60; ++t) {
    const IntMatrix C = testing::random_nonnegative(rng, 3, 2, 3);
    const IntMatrix D = testing::random_nonnegative(rng, 2, 3, 3);
    CHECK(sse_witness_action(C, D).identity_holds);
  }
}

TEST_CASE("se witness examples") {
  CHECK(se_witness_action(kGolden, kGolden, 2, kGolden, kGolden).passed());
  CHECK(se_witness_action(kA41, kA41, 2, kA41, kA41).passed());
  const EdgeGraph g = edge_graph(kA41);
  CHECK(se_witness_action(g.R, g.S, 1, kA41, g.AG).passed());

  IntMatrix bumped = g.S;
  bumped(0, 0) += 1;
  CHECK_THROWS_AS(se_witness_action(g.R, bumped, 1, kA41, g.AG), std::invalid_argument);
}

TEST_CASE("along random SSE chains the e-pairs agree and every step carries e") {
  std::mt19937_64 rng(25);
  for (int t = 0; t < 30; ++t) {
    const IntMatrix A = random_essential(rng, 3, 2);
    const SseChain chain = random_sse_chain(A, 4, static_cast<std::uint64_t>(100 + t));
    REQUIRE(verify_sse_chain(chain));
    for (const SseStep& s : chain.steps) {
      CHECK(sse_witness_action(s.R, s.S).passed());
      CHECK(se_witness_action(s.R, s.S, 1, s.R * s.S, s.S * s.R).passed());
    }
    const PairComparison c = pair_equiv(e_invariant(chain.matrices.front()), e_invariant(chain.matrices.back()));
    CHECK(c.verdict != PairVerdict::Inequivalent);
    if (bowen_franks(A).group.is_finite()) CHECK(c.verdict == PairVerdict::Equivalent);
  }
}

TEST_CASE("edge graph carries the K0 unit back to the unit") {
  std::mt19937_64 rng(26);
  for (int t = 0; t < 50; ++t) {
    const IntMatrix A = random_essential(rng, 4, 3);
    const EdgeGraph g = edge_graph(A);
    const K0Group ka = k0(A), kg = k0(g.AG);
    const GroupHom m = induced_hom(g.S.transpose(), kg.group, ka.group);
    CHECK(m.is_isomorphism());
    CHECK(m.apply(kg.unit) == ka.unit);
  }
}
