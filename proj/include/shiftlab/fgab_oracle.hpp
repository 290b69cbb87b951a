#pragma once

// Exhaustive reference computations over finite abelian groups.  These
// back the tests and deliberately share nothing with the height-sequence
// and tensor-presentation code paths they cross-check.

#include <stdexcept>
#include <vector>

#include "shiftlab/fgab.hpp"

namespace shiftlab::oracle {

class BoundExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kEnumerationBound = 4096;
inline constexpr std::size_t kOrbitBound = 256;

// Every element of a finite group, in lexicographic order of coordinates.
std::vector<GroupElement> elements(const FgAbGroup& G, std::size_t bound = kEnumerationBound);

// {phi(g) : phi in Aut(G)} by depth-first search over images of the
// invariant-factor generators, keeping only extensions that stay
// injective.  Throws BoundExceeded if |G| > bound or the search budget
// runs out.
std::vector<GroupElement> aut_orbit(const FgAbGroup& G, const GroupElement& g, std::size_t bound = kOrbitBound,
                                    std::size_t node_budget = 20'000'000);

bool in_aut_orbit(const FgAbGroup& G, const GroupElement& g, const GroupElement& h,
                  std::size_t bound = kOrbitBound);

// Invariant factors of (+)_{i,j} Z/gcd(d_i, e_j), computed from
// prime-power elementary divisors (no matrix reduction).
IntVector tensor_invariant_factors(const IntVector& d, const IntVector& e);

// Invariant factors of (+)_i Z/c_i via elementary divisors.
IntVector normalise_cyclic(const IntVector& orders);

// Number of elements of each order, by enumeration.
std::map<Integer, std::size_t> order_statistics(const FgAbGroup& G, std::size_t bound = kEnumerationBound);

}  // namespace shiftlab::oracle
