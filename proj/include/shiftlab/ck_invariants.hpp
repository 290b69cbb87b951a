#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shiftlab/fgab.hpp"
#include "shiftlab/int_matrix.hpp"

namespace shiftlab {

struct BowenFranks {
  FgAbGroup group;  // Z^N / (I - A) Z^N
  Integer det;      // det(I - A)
};

// Square nonnegative A; DimensionError / std::invalid_argument otherwise.
BowenFranks bowen_franks(const IntMatrix& A);

struct K0Group {
  FgAbGroup group;    // Z^N / (I - A^t) Z^N
  GroupElement unit;  // class of the all-ones vector
};

K0Group k0(const IntMatrix& A);

// The pair (coker(I - A) (x) coker(I - A^t), sum_i [e_i] (x) [e_i]).
struct EPair {
  TensorProduct tensor;
  GroupElement e;
  PairInvariant pair;
};

EPair e_pair(const IntMatrix& A);
PairInvariant e_invariant(const IntMatrix& A);
// [1_N] (x) [1_N] in the group of e_invariant(A).
GroupElement unit_invariant(const IntMatrix& A);

// Invariant factors plus free rank.
struct IsoType {
  IntVector invariant_factors;
  std::size_t free_rank = 0;

  std::string to_string() const;
  friend bool operator==(const IsoType&, const IsoType&) = default;
};

IsoType iso_type(const FgAbGroup& G);

// From K_0(O_A) = Z^n + Z/m_1 + ... + Z/m_k:
//   tensor_part = coker(I - A) (x) coker(I - A^t)
//               = Z^{n^2} + sum_i (Z/m_i)^{2n + 2k - (2i - 1)},
//   k0 = tensor_part + K_1 (x) K_1 = tensor_part + Z^{n^2},
//   k1 = (G (x) Z^n) + (Z^n (x) G) + Tor(G, G).
struct KunnethTypes {
  IsoType k0_of_A;
  IsoType tensor_part;
  IsoType k0;
  IsoType k1;
};

KunnethTypes kunneth(const IntMatrix& A);
KunnethTypes kunneth(const IsoType& k0_of_A);

struct InvariantCheck {
  std::string name;
  PairVerdict verdict;  // Equivalent: the invariant agrees
  std::string left;
  std::string right;
  std::string certificate;
};

struct Comparison {
  std::vector<InvariantCheck> checks;  // bf, det, k0 with unit, e-pair
  bool distinguished = false;
  std::string verdict;  // "distinguished" or "not distinguished by these invariants"
};

inline constexpr const char* kNotDistinguished = "not distinguished by these invariants";

Comparison compare(const IntMatrix& A, const IntMatrix& B);

struct WitnessRecord {
  bool identity_holds = false;  // the exact Z^{M*M} identity
  bool maps_well_defined = false;
  bool maps_isomorphisms = false;
  bool carries_e = false;  // image of e_A equals e_B
  std::optional<GroupElement> image;  // image of e_A in the target tensor product
  std::string image_text;
  std::string target_text;

  bool passed() const { return identity_holds && maps_well_defined && maps_isomorphisms && carries_e; }
};

// A = CD, B = DC.  Checks
//   sum_i D e_i (x) C^t e_i - sum_j f_j (x) f_j = sum_j (B - I) f_j (x) f_j
// and that m_D (x) m_{C^t} is a well-defined isomorphism taking e_A to e_B.
// Throws DimensionError on shape mismatch, std::invalid_argument on
// negative entries.
WitnessRecord sse_witness_action(const IntMatrix& C, const IntMatrix& D);

// (A, B, R, S, ell) must pass verify_se, otherwise std::invalid_argument.
// Checks m_S (x) m_{R^t} takes e_A to e_B, together with
//   sum_i S e_i (x) R^t e_i - sum_j f_j (x) f_j
//     = sum_j (B - I)(B^{ell-1} + ... + I) f_j (x) f_j.
WitnessRecord se_witness_action(const IntMatrix& R, const IntMatrix& S, unsigned long ell, const IntMatrix& A,
                                const IntMatrix& B);

}  // namespace shiftlab
