#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/int_matrix.hpp"
#include "shiftlab/intlinalg.hpp"

namespace shiftlab {

class GroupElement;

// Finitely generated abelian group Z^N / L presented as a cokernel.
//
// Internally the group carries a unimodular change of coordinates
// c = B v under which L becomes diag(m_1, ..., m_N) Z^N (m_i = 0 for a
// free coordinate, 1 for a killed one).  For tensor products B is kept
// as a Kronecker product of the factor transforms, so ambient ranks in
// the thousands stay cheap.  Torsion coordinates are further normalised
// into invariant-factor form for display and for the orbit summary.
//
// Values are immutable and cheap to copy.
class FgAbGroup {
 public:
  // Z^N / (column span of rel), N = rel.rows().
  static FgAbGroup from_cokernel(const IntMatrix& rel);
  static FgAbGroup free(std::size_t rank) { return from_cokernel(IntMatrix(rank, 0)); }
  // Z/d_1 + ... + Z/d_k + Z^free_rank on the standard diagonal presentation.
  static FgAbGroup from_cyclic(const IntVector& orders, std::size_t free_rank = 0);

  std::size_t ambient_rank() const;
  // All > 1, each dividing the next.
  const IntVector& invariant_factors() const;
  std::size_t free_rank() const;
  bool is_finite() const { return free_rank() == 0; }
  bool is_trivial() const { return free_rank() == 0 && invariant_factors().empty(); }
  // nullopt for infinite groups.
  std::optional<Integer> order() const;
  Integer exponent() const;  // lcm of invariant factors; 0 if infinite

  // Generators of the relation lattice L (not necessarily a basis).
  std::vector<IntVector> relation_generators() const;
  // L in Hermite normal form.  Costs an HNF of the generator matrix.
  Lattice relations() const;
  // v in L, decided exactly through the diagonalising transform.
  bool in_relations(const IntVector& v) const;

  // Coordinates of v in Z/d_1 + ... + Z/d_k + Z^r: torsion entries
  // reduced into [0, d_i), free entries unreduced.
  IntVector coordinates(const IntVector& v) const;
  // Inverse of `coordinates` up to relations.
  IntVector lift(const IntVector& coordinates) const;

  GroupElement element(IntVector v) const;
  GroupElement zero() const;
  GroupElement generator(std::size_t i) const;  // class of e_i

  // Same ambient rank and same relation lattice.
  bool same_as(const FgAbGroup& other) const;
  // Isomorphism type only.
  bool isomorphic_to(const FgAbGroup& other) const;

  // "Z/2 + Z/4 + Z^3", or "0".
  std::string to_string() const;

  struct Data;
  explicit FgAbGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  const Data& data() const { return *d_; }

 private:
  std::shared_ptr<const Data> d_;
};

// Class of an ambient vector.  Equality is membership of the difference in
// the relation lattice, never raw vector equality.
class GroupElement {
 public:
  GroupElement(FgAbGroup group, IntVector v);

  const FgAbGroup& group() const { return group_; }
  const IntVector& vector() const { return v_; }

  bool is_zero() const { return group_.in_relations(v_); }
  IntVector coordinates() const { return group_.coordinates(v_); }

  GroupElement operator+(const GroupElement& other) const;
  GroupElement operator-(const GroupElement& other) const;
  GroupElement operator-() const;
  friend GroupElement operator*(const Integer& n, const GroupElement& g);

  // "[1]" for a cyclic group, "(1, 0, 2)" otherwise, "[0]" in a trivial group.
  std::string to_string() const;

 private:
  FgAbGroup group_;
  IntVector v_;
};

// Throws std::invalid_argument when the groups differ.
bool element_equal(const GroupElement& g, const GroupElement& h);
inline bool operator==(const GroupElement& g, const GroupElement& h) { return element_equal(g, h); }
inline bool operator!=(const GroupElement& g, const GroupElement& h) { return !element_equal(g, h); }

// Least n >= 1 with n g = 0; nullopt when g has infinite order.
std::optional<Integer> order(const GroupElement& g);

// (h_p(g), h_p(p g), ...) up to the step where the p-component vanishes,
// h_p(x) = max{k : x in p^k G}.  g must be a torsion element.
// Throws std::invalid_argument for non-prime p or non-torsion g.
std::vector<unsigned long> height_sequence(const GroupElement& g, const Integer& p);

struct TensorProduct {
  FgAbGroup left;
  FgAbGroup right;
  FgAbGroup group;  // ambient Z^{N*M}, index i*M + j for e_i (x) f_j

  // Class of the Kronecker vector v (x) w; bilinear.
  GroupElement embed(const GroupElement& v, const GroupElement& w) const;
  GroupElement embed(const IntVector& v, const IntVector& w) const;
};

TensorProduct tensor(const FgAbGroup& G, const FgAbGroup& H);

// Explicit relation-union presentation of G (x) H:
// {r (x) f_j : r relation of G} U {e_i (x) s : s relation of H}.
IntMatrix tensor_relations(const FgAbGroup& G, const FgAbGroup& H);

// Homomorphism induced by left multiplication with S on ambient lattices.
class GroupHom {
 public:
  const IntMatrix& matrix() const { return S_; }
  const FgAbGroup& domain() const { return domain_; }
  const FgAbGroup& codomain() const { return codomain_; }

  // S (relations of domain) lies in the relations of the codomain.
  bool well_defined() const { return well_defined_; }
  bool injective() const { return injective_; }
  bool surjective() const { return surjective_; }
  bool is_isomorphism() const { return well_defined_ && injective_ && surjective_; }

  GroupElement apply(const GroupElement& g) const;

 private:
  friend GroupHom induced_hom(const IntMatrix&, const FgAbGroup&, const FgAbGroup&);
  friend GroupHom tensor_hom(const GroupHom&, const GroupHom&, const TensorProduct&, const TensorProduct&);
  GroupHom(IntMatrix S, FgAbGroup domain, FgAbGroup codomain);

  IntMatrix S_;
  std::optional<std::pair<IntMatrix, IntMatrix>> kron_factors_;
  FgAbGroup domain_;
  FgAbGroup codomain_;
  bool well_defined_ = false;
  bool injective_ = false;
  bool surjective_ = false;
};

// Flags are decided directly: well-definedness by relation membership,
// injectivity through the preimage lattice {v : S v in rel(H)} (kernel of
// the block system [B_H S | diag(m_H)] projected to the first block),
// surjectivity by triviality of coker [S | rel(H)].
// Throws DimensionError when S does not map ambient(G) to ambient(H).
GroupHom induced_hom(const IntMatrix& S, const FgAbGroup& G, const FgAbGroup& H);

// f (x) g between tensor products, matrix kronecker(f.S, g.S).  When both
// factors are well defined so is the product, and a product of two
// isomorphisms is an isomorphism; other flags fall back to induced_hom.
GroupHom tensor_hom(const GroupHom& f, const GroupHom& g, const TensorProduct& from, const TensorProduct& to);

enum class PairVerdict { Equivalent, Inequivalent, Indeterminate };
std::string to_string(PairVerdict v);

// Summary of a (group, element) pair that is constant on isomorphism
// classes of pairs.
struct PairSummary {
  IntVector invariant_factors;
  std::size_t free_rank = 0;
  std::optional<Integer> element_order;  // nullopt: infinite
  bool torsion_element = true;
  // Per prime dividing the exponent; filled only for torsion elements.
  std::map<Integer, std::vector<unsigned long>> heights;
  // gcd of the free coordinates (0 for torsion elements).
  Integer free_content = 0;

  friend bool operator==(const PairSummary&, const PairSummary&) = default;
};

class PairInvariant {
 public:
  explicit PairInvariant(GroupElement element);

  const FgAbGroup& group() const { return element_.group(); }
  const GroupElement& element() const { return element_; }
  const PairSummary& summary() const { return summary_; }

  // "(Z/4,[2])"
  std::string to_string() const;

 private:
  GroupElement element_;
  PairSummary summary_;
};

struct PairComparison {
  PairVerdict verdict;
  std::string certificate;
};

// Finite groups: equal invariant factors plus equal per-prime height
// sequences decide the Aut-orbit question completely.  Free groups: equal
// content.  Mixed groups: decided when both elements are torsion or a
// summary component differs, otherwise Indeterminate.
PairComparison pair_equiv(const PairInvariant& P, const PairInvariant& Q);

std::vector<Integer> prime_divisors(Integer n);

}  // namespace shiftlab
