#include <algorithm>
#include <set>

#include "doctest.h"
#include "shiftlab/fgab.hpp"
#include "shiftlab/fgab_oracle.hpp"
#include "test_support.hpp"

using namespace shiftlab;

namespace {

const IntMatrix kOnes3{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};

// Random cyclic orders with product <= max_order.
IntVector random_orders(std::mt19937_64& rng, std::size_t max_factors, long max_order) {
  std::uniform_int_distribution<std::size_t> count(1, max_factors);
  std::uniform_int_distribution<long> pick(2, 16);
  IntVector orders;
  long product = 1;
  const std::size_t k = count(rng);
  for (std::size_t i = 0; i < k; ++i) {
    const long d = pick(rng);
    if (product * d > max_order) continue;
    product *= d;
    orders.emplace_back(d);
  }
  return orders;
}

// The same group on a scrambled presentation P diag(orders) Q.
FgAbGroup scrambled(std::mt19937_64& rng, const IntVector& orders, std::size_t extra_trivial = 1) {
  const std::size_t n = orders.size() + extra_trivial;
  IntMatrix D(n, n);
  for (std::size_t i = 0; i < n; ++i) D(i, i) = i < orders.size() ? orders[i] : Integer(1);
  return FgAbGroup::from_cokernel(testing::random_unimodular(rng, n) * D * testing::random_unimodular(rng, n));
}

GroupElement random_element(std::mt19937_64& rng, const FgAbGroup& G) {
  return G.element(testing::random_matrix(rng, G.ambient_rank(), 1, -7, 7).column(0));
}

}  // namespace

TEST_CASE("from_cokernel examples") {
  const FgAbGroup G = FgAbGroup::from_cokernel(IntMatrix::identity(3) - kOnes3);
  CHECK(G.invariant_factors() == IntVector{2});
  CHECK(G.free_rank() == 0);
  CHECK(G.to_string() == "Z/2");

  const FgAbGroup Z2 = FgAbGroup::from_cokernel(IntMatrix(2, 0));
  CHECK(Z2.free_rank() == 2);
  CHECK(Z2.invariant_factors().empty());
  CHECK(Z2.to_string() == "Z^2");

  const FgAbGroup C2 = FgAbGroup::from_cokernel(IntMatrix{{2}});
  CHECK(C2.invariant_factors() == IntVector{2});
  CHECK(*C2.order() == 2);

  CHECK(FgAbGroup::from_cokernel(IntMatrix::identity(2)).is_trivial());
  CHECK(FgAbGroup::from_cokernel(IntMatrix::identity(2)).to_string() == "0");
  CHECK(FgAbGroup::from_cyclic({2, 4}, 3).to_string() == "Z/2 + Z/4 + Z^3");
}

TEST_CASE("element equality is relation membership") {
  const FgAbGroup G = FgAbGroup::from_cokernel(IntMatrix::identity(3) - kOnes3);
  const GroupElement g = G.element({1, 0, 0});
  CHECK(g == g);
  CHECK(G.element({1, 0, 0}) == G.element({0, 1, 0}));
  CHECK(G.element({1, 1, 0}).is_zero());
  CHECK(G.element({1, 1, 1}) == g);

  const FgAbGroup C2 = FgAbGroup::from_cyclic({2});
  CHECK(C2.element({1}) != C2.zero());
  CHECK(C2.element({3}) == C2.element({1}));
  CHECK_THROWS_AS((void)element_equal(C2.zero(), FgAbGroup::from_cyclic({3}).zero()), std::invalid_argument);
}

TEST_CASE("element order") {
  const FgAbGroup C2 = FgAbGroup::from_cyclic({2});
  CHECK(*order(C2.zero()) == 1);
  CHECK(*order(C2.element({1})) == 2);
  CHECK_FALSE(order(FgAbGroup::free(1).generator(0)).has_value());
  const FgAbGroup G = FgAbGroup::from_cyclic({4, 6});
  CHECK(*order(G.element({1, 0})) == 4);
  CHECK(*order(G.element({2, 3})) == 2);
  CHECK(*order(G.element({1, 1})) == 12);
}

TEST_CASE("element order matches the enumeration oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const IntVector orders = random_orders(rng, 3, 200);
    const FgAbGroup G = scrambled(rng, orders);
    std::map<Integer, std::size_t> stats;
    for (const auto& g : oracle::elements(G)) ++stats[*order(g)];
    CHECK(stats == oracle::order_statistics(G));
  }
}

TEST_CASE("presentation independence") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + trial % 5;
    const std::size_t cols = trial % 6;
    const IntMatrix rel = testing::random_matrix(rng, rows, cols, -6, 6);
    const FgAbGroup G = FgAbGroup::from_cokernel(rel);
    const IntMatrix P = testing::random_unimodular(rng, rows);
    const IntMatrix Q = testing::random_unimodular(rng, cols);
    const FgAbGroup H = FgAbGroup::from_cokernel(P * rel * Q);
    CHECK(G.invariant_factors() == H.invariant_factors());
    CHECK(G.free_rank() == H.free_rank());
    // A column change alone keeps the relation lattice itself.
    CHECK(G.same_as(FgAbGroup::from_cokernel(rel * Q)));
  }
}

TEST_CASE("transform membership agrees with the HNF relation lattice") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const IntMatrix rel = testing::random_matrix(rng, 3, 1 + trial % 4, -5, 5);
    const FgAbGroup G = FgAbGroup::from_cokernel(rel);
    const Lattice L = Lattice::from_generators(rel);
    CHECK(G.relations() == L);
    for (int k = 0; k < 20; ++k) {
      const IntVector v = testing::random_matrix(rng, 3, 1, -6, 6).column(0);
      CHECK(G.in_relations(v) == L.contains(v));
    }
    CHECK(G.in_relations(rel.column(0)));
  }
}

TEST_CASE("coordinates and lift are inverse up to relations") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const FgAbGroup G = FgAbGroup::from_cokernel(testing::random_matrix(rng, 4, 3, -4, 4));
    const GroupElement g = random_element(rng, G);
    const IntVector c = g.coordinates();
    CHECK(G.element(G.lift(c)) == g);
    for (std::size_t i = 0; i < G.invariant_factors().size(); ++i) {
      CHECK(c[i] >= 0);
      CHECK(c[i] < G.invariant_factors()[i]);
    }
  }
}

TEST_CASE("tensor examples") {
  const TensorProduct free = tensor(FgAbGroup::free(2), FgAbGroup::free(3));
  CHECK(free.group.free_rank() == 6);
  CHECK(free.group.invariant_factors().empty());

  const TensorProduct t24 = tensor(FgAbGroup::from_cyclic({2}), FgAbGroup::from_cyclic({4}));
  CHECK(t24.group.invariant_factors() == IntVector{2});
  // Every pair (a, b) maps to ab mod 2.
  for (long a = 0; a < 2; ++a)
    for (long b = 0; b < 4; ++b) CHECK(t24.embed(IntVector{a}, IntVector{b}).is_zero() == ((a * b) % 2 == 0));

  const TensorProduct trivial = tensor(FgAbGroup::from_cyclic({2}), FgAbGroup::from_cokernel(IntMatrix{{1}}));
  CHECK(trivial.group.is_trivial());
}

TEST_CASE("tensor matches the invariant-factor oracle for orders <= 64") {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 100; ++trial) {
    const IntVector d = random_orders(rng, 3, 64);
    const IntVector e = random_orders(rng, 3, 64);
    const FgAbGroup G = scrambled(rng, d);
    const FgAbGroup H = scrambled(rng, e);
    const TensorProduct T = tensor(G, H);
    CHECK(T.group.free_rank() == 0);
    CHECK(T.group.invariant_factors() == oracle::tensor_invariant_factors(d, e));
    // Same relation lattice as the explicit relation-union presentation.
    CHECK(T.group.same_as(FgAbGroup::from_cokernel(tensor_relations(G, H))));
  }
}

TEST_CASE("pure tensors generate the tensor product") {
  const FgAbGroup G = FgAbGroup::from_cyclic({2, 4});
  const FgAbGroup H = FgAbGroup::from_cyclic({6});
  const TensorProduct T = tensor(G, H);
  std::vector<GroupElement> pure;
  for (const auto& g : oracle::elements(G))
    for (const auto& h : oracle::elements(H)) pure.push_back(T.embed(g, h));
  std::set<IntVector> closure;
  std::vector<GroupElement> frontier{T.group.zero()};
  while (!frontier.empty()) {
    const GroupElement x = frontier.back();
    frontier.pop_back();
    if (!closure.insert(x.coordinates()).second) continue;
    for (const auto& y : pure) frontier.push_back(x + y);
  }
  CHECK(Integer(static_cast<unsigned long>(closure.size())) == *T.group.order());
  CHECK(*T.group.order() == 4);
}

TEST_CASE("embed is bilinear") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const FgAbGroup G = FgAbGroup::from_cokernel(testing::random_matrix(rng, 3, 2, -4, 4));
    const FgAbGroup H = FgAbGroup::from_cokernel(testing::random_matrix(rng, 2, 2, -4, 4));
    const TensorProduct T = tensor(G, H);
    const GroupElement v = random_element(rng, G), v2 = random_element(rng, G);
    const GroupElement w = random_element(rng, H), w2 = random_element(rng, H);
    CHECK(T.embed(v + v2, w) == T.embed(v, w) + T.embed(v2, w));
    CHECK(T.embed(v, w + w2) == T.embed(v, w) + T.embed(v, w2));
    CHECK(T.embed(Integer(3) * v, w) == T.embed(v, Integer(3) * w));
    // Changing representatives does not change the class.
    const GroupElement v_alt = G.element(add(v.vector(), G.relation_generators().empty() ? IntVector(3) : G.relation_generators().front()));
    CHECK(T.embed(v_alt, w) == T.embed(v, w));
  }
}

TEST_CASE("induced_hom examples") {
  const FgAbGroup G = FgAbGroup::from_cokernel(IntMatrix::identity(3) - kOnes3);
  const GroupHom id = induced_hom(IntMatrix::identity(3), G, G);
  CHECK(id.is_isomorphism());

  const FgAbGroup C4 = FgAbGroup::from_cyclic({4});
  const GroupHom twice = induced_hom(IntMatrix{{2}}, C4, C4);
  CHECK(twice.well_defined());
  CHECK_FALSE(twice.injective());
  CHECK_FALSE(twice.surjective());

  // Z/2 -> Z/4, 1 -> 1 is not well defined; 1 -> 2 is an injection.
  const FgAbGroup C2 = FgAbGroup::from_cyclic({2});
  CHECK_FALSE(induced_hom(IntMatrix{{1}}, C2, C4).well_defined());
  const GroupHom inc = induced_hom(IntMatrix{{2}}, C2, C4);
  CHECK(inc.well_defined());
  CHECK(inc.injective());
  CHECK_FALSE(inc.surjective());
  // Reduction Z/4 -> Z/2 is onto.
  const GroupHom red = induced_hom(IntMatrix{{1}}, C4, C2);
  CHECK(red.well_defined());
  CHECK(red.surjective());
  CHECK_FALSE(red.injective());

  CHECK_THROWS_AS(induced_hom(IntMatrix{{1, 0}}, C4, C2), DimensionError);
}

TEST_CASE("C^t induces an isomorphism coker(I - A^t) -> coker(I - B^t) for A = CD, B = DC") {
  const IntMatrix C{{1, 1}, {1, 0}, {0, 1}};
  const IntMatrix D{{1, 0, 1}, {0, 1, 1}};
  const IntMatrix A = C * D;
  const IntMatrix B = D * C;
  const FgAbGroup GA = FgAbGroup::from_cokernel(IntMatrix::identity(3) - A.transpose());
  const FgAbGroup GB = FgAbGroup::from_cokernel(IntMatrix::identity(2) - B.transpose());
  const GroupHom f = induced_hom(C.transpose(), GA, GB);
  CHECK(f.well_defined());
  CHECK(f.is_isomorphism());
  CHECK(induced_hom(D.transpose(), GB, GA).is_isomorphism());
}

TEST_CASE("induced_hom flags agree with enumeration") {
  std::mt19937_64 rng(77);
  int iso = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const FgAbGroup G = scrambled(rng, random_orders(rng, 2, 36), 0);
    const FgAbGroup H = scrambled(rng, random_orders(rng, 2, 36), 0);
    const IntMatrix S = testing::random_matrix(rng, H.ambient_rank(), G.ambient_rank(), -3, 3);
    const GroupHom f = induced_hom(S, G, H);
    bool wd = true;
    for (const auto& r : G.relation_generators()) wd = wd && H.in_relations(S * r);
    CHECK(f.well_defined() == wd);
    if (!wd) continue;
    const auto dom = oracle::elements(G);
    std::set<IntVector> image;
    std::size_t kernel_size = 0;
    for (const auto& g : dom) {
      const GroupElement y = f.apply(g);
      image.insert(y.coordinates());
      if (y.is_zero()) ++kernel_size;
    }
    CHECK(f.injective() == (kernel_size == 1));
    CHECK(f.surjective() == (Integer(static_cast<unsigned long>(image.size())) == *H.order()));
    iso += f.is_isomorphism();
  }
  CHECK(iso >= 1);
}

TEST_CASE("induced_hom composes") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const FgAbGroup G = FgAbGroup::from_cokernel(testing::random_matrix(rng, 2, 2, -4, 4));
    const FgAbGroup H = FgAbGroup::free(3);
    const FgAbGroup K = FgAbGroup::from_cokernel(testing::random_matrix(rng, 2, 2, -4, 4));
    // Make S well defined by killing the relations of G: map into a free group then reduce.
    const IntMatrix S = testing::random_matrix(rng, 3, 2, -3, 3);
    const IntMatrix T = testing::random_matrix(rng, 2, 3, -3, 3);
    const GroupHom f = induced_hom(S, G, H);
    const GroupHom g = induced_hom(T, H, K);
    const GroupHom gf = induced_hom(T * S, G, K);
    for (int k = 0; k < 5; ++k) {
      const GroupElement x = random_element(rng, G);
      CHECK(g.apply(f.apply(x)) == gf.apply(x));
    }
    CHECK(induced_hom(IntMatrix::identity(2), G, G).is_isomorphism());
  }
}

TEST_CASE("tensor_hom of isomorphisms") {
  const FgAbGroup G = FgAbGroup::from_cyclic({2, 4});
  const FgAbGroup H = FgAbGroup::from_cyclic({4});
  const IntMatrix swap{{0, 1}, {1, 0}};
  const FgAbGroup G2 = FgAbGroup::from_cyclic({4, 2});
  const GroupHom f = induced_hom(swap, G, G2);
  const GroupHom g = induced_hom(IntMatrix{{3}}, H, H);
  REQUIRE(f.is_isomorphism());
  REQUIRE(g.is_isomorphism());
  const TensorProduct from = tensor(G, H);
  const TensorProduct to = tensor(G2, H);
  const GroupHom fg = tensor_hom(f, g, from, to);
  CHECK(fg.is_isomorphism());
  const GroupHom generic = induced_hom(kronecker(swap, IntMatrix{{3}}), from.group, to.group);
  CHECK(generic.is_isomorphism());
  for (const auto& x : oracle::elements(from.group)) CHECK(fg.apply(x) == generic.apply(x));
  CHECK(fg.apply(from.embed(G.generator(1), H.generator(0))) == to.embed(G2.generator(0), Integer(3) * H.generator(0)));
}

TEST_CASE("height sequences") {
  const FgAbGroup G = FgAbGroup::from_cyclic({2, 4});
  CHECK(height_sequence(G.zero(), 2).empty());
  CHECK(height_sequence(G.element({1, 0}), 2) == std::vector<unsigned long>{0});
  CHECK(height_sequence(G.element({0, 2}), 2) == std::vector<unsigned long>{1});
  CHECK(height_sequence(G.element({0, 1}), 2) == std::vector<unsigned long>{0, 1});
  CHECK(height_sequence(G.element({1, 0}), 3).empty());
  CHECK_THROWS_AS(height_sequence(G.zero(), 4), std::invalid_argument);
  CHECK_THROWS_AS(height_sequence(FgAbGroup::free(1).generator(0), 2), std::invalid_argument);
}

TEST_CASE("heights match a brute-force divisibility search") {
  std::mt19937_64 rng(100);
  for (int trial = 0; trial < 20; ++trial) {
    const FgAbGroup G = scrambled(rng, random_orders(rng, 3, 128));
    const auto all = oracle::elements(G);
    for (const auto& p : prime_divisors(G.exponent())) {
      const unsigned long pu = p.get_ui();
      // multiples[k] = p^k G as a coordinate set.
      std::vector<std::set<IntVector>> multiples;
      std::set<IntVector> layer;
      for (const auto& x : all) layer.insert(x.coordinates());
      while (true) {
        multiples.push_back(layer);
        std::set<IntVector> next;
        for (const auto& c : layer) next.insert((Integer(pu) * G.element(G.lift(c))).coordinates());
        if (next.size() == layer.size()) break;
        layer = next;
      }
      const GroupElement g = all[rng() % all.size()];
      std::vector<unsigned long> expected;
      // p-component of g: multiply by the prime-to-p part of the exponent.
      Integer m = G.exponent();
      while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) m /= p;
      const Integer unit_inverse = [&] {
        Integer pe = G.exponent() / m, inv;
        mpz_invert(inv.get_mpz_t(), m.get_mpz_t(), pe.get_mpz_t());
        return Integer(inv * m);
      }();
      GroupElement x = unit_inverse * g;
      while (!x.is_zero()) {
        unsigned long h = 0;
        while (h + 1 < multiples.size() && multiples[h + 1].count(x.coordinates())) ++h;
        expected.push_back(h);
        x = Integer(pu) * x;
      }
      CHECK(height_sequence(g, p) == expected);
    }
  }
}

TEST_CASE("pair_equiv examples") {
  const FgAbGroup C2 = FgAbGroup::from_cyclic({2});
  const PairInvariant one(C2.element({1}));
  const PairInvariant zero(C2.zero());
  CHECK(pair_equiv(one, zero).verdict == PairVerdict::Inequivalent);
  CHECK(pair_equiv(zero, zero).verdict == PairVerdict::Equivalent);
  CHECK(one.to_string() == "(Z/2,[1])");

  const FgAbGroup G = FgAbGroup::from_cyclic({2, 4});
  CHECK(pair_equiv(PairInvariant(G.element({1, 0})), PairInvariant(G.element({0, 2}))).verdict ==
        PairVerdict::Inequivalent);
  CHECK_FALSE(oracle::in_aut_orbit(G, G.element({1, 0}), G.element({0, 2})));
  CHECK(pair_equiv(PairInvariant(G.element({1, 2})), PairInvariant(G.element({1, 0}))).verdict ==
        PairVerdict::Equivalent);
  CHECK(oracle::in_aut_orbit(G, G.element({1, 2}), G.element({1, 0})));

  CHECK(pair_equiv(PairInvariant(C2.zero()), PairInvariant(FgAbGroup::from_cyclic({3}).zero())).verdict ==
        PairVerdict::Inequivalent);
}

TEST_CASE("pair_equiv on free and mixed groups") {
  const FgAbGroup Z2 = FgAbGroup::free(2);
  CHECK(pair_equiv(PairInvariant(Z2.element({2, 4})), PairInvariant(Z2.element({0, 2}))).verdict ==
        PairVerdict::Equivalent);
  CHECK(pair_equiv(PairInvariant(Z2.element({2, 4})), PairInvariant(Z2.element({3, 0}))).verdict ==
        PairVerdict::Inequivalent);
  const FgAbGroup M = FgAbGroup::from_cyclic({2}, 1);
  CHECK(pair_equiv(PairInvariant(M.zero()), PairInvariant(M.zero())).verdict == PairVerdict::Equivalent);
  CHECK(pair_equiv(PairInvariant(M.element({1, 0})), PairInvariant(M.zero())).verdict ==
        PairVerdict::Inequivalent);
  CHECK(pair_equiv(PairInvariant(M.element({1, 1})), PairInvariant(M.element({0, 1}))).verdict ==
        PairVerdict::Indeterminate);
}

TEST_CASE("pair_equiv matches Aut-orbit membership on random finite groups of order <= 256") {
  std::mt19937_64 rng(256);
  for (int trial = 0; trial < 100; ++trial) {
    const IntVector orders = random_orders(rng, 4, 256);
    const FgAbGroup G = scrambled(rng, orders);
    const auto all = oracle::elements(G);
    const GroupElement g = all[rng() % all.size()];
    const auto orbit = oracle::aut_orbit(G, g);
    std::set<IntVector> orbit_coords;
    for (const auto& x : orbit) orbit_coords.insert(x.coordinates());
    const PairInvariant P(g);
    for (const auto& h : all) {
      const bool equivalent = pair_equiv(P, PairInvariant(h)).verdict == PairVerdict::Equivalent;
      CHECK(equivalent == (orbit_coords.count(h.coordinates()) == 1));
    }
  }
}

TEST_CASE("oracle bounds") {
  CHECK_THROWS_AS(oracle::elements(FgAbGroup::from_cyclic({5000})), oracle::BoundExceeded);
  CHECK_THROWS_AS(oracle::aut_orbit(FgAbGroup::from_cyclic({512}), FgAbGroup::from_cyclic({512}).zero()),
                  oracle::BoundExceeded);
  CHECK_THROWS_AS(oracle::elements(FgAbGroup::free(1)), std::invalid_argument);
  CHECK(oracle::normalise_cyclic({2, 3}) == IntVector{6});
  CHECK(oracle::normalise_cyclic({4, 6}) == IntVector{2, 12});
}
