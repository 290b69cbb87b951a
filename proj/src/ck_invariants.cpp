#include "shiftlab/ck_invariants.hpp"

#include <stdexcept>

#include "shiftlab/shift_spaces.hpp"

namespace shiftlab {

namespace {

void require_input(const IntMatrix& A, const char* what) {
  if (!A.is_square()) throw DimensionError(std::string(what) + ": matrix must be square");
  if (!A.is_nonnegative()) throw std::invalid_argument(std::string(what) + ": matrix has negative entries");
}

IntMatrix id_minus(const IntMatrix& A) { return IntMatrix::identity(A.rows()) - A; }

// sum_j X f_j (x) f_j, evaluated term by term.
IntVector diagonal_sum(const IntMatrix& X) {
  const std::size_t M = X.rows();
  IntVector out(M * M);
  for (std::size_t j = 0; j < M; ++j) out = add(out, kronecker(X.column(j), unit_vector(M, j)));
  return out;
}

// sum_i P e_i (x) Q e_i for P, Q with M rows and N columns.
IntVector paired_sum(const IntMatrix& P, const IntMatrix& Q) {
  const std::size_t M = P.rows();
  IntVector out(M * M);
  for (std::size_t i = 0; i < P.cols(); ++i) out = add(out, kronecker(P.column(i), Q.column(i)));
  return out;
}

WitnessRecord witness(const EPair& ea, const EPair& eb, const IntMatrix& left, const IntMatrix& right) {
  WitnessRecord rec;
  const GroupHom f = induced_hom(left, ea.tensor.left, eb.tensor.left);
  const GroupHom g = induced_hom(right, ea.tensor.right, eb.tensor.right);
  rec.maps_well_defined = f.well_defined() && g.well_defined();
  rec.maps_isomorphisms = f.is_isomorphism() && g.is_isomorphism();
  if (!rec.maps_well_defined) return rec;
  const GroupHom fg = tensor_hom(f, g, ea.tensor, eb.tensor);
  rec.image = fg.apply(ea.e);
  rec.carries_e = *rec.image == eb.e;
  rec.image_text = rec.image->to_string();
  rec.target_text = eb.e.to_string();
  return rec;
}

}  // namespace

BowenFranks bowen_franks(const IntMatrix& A) {
  require_input(A, "bowen_franks");
  const IntMatrix M = id_minus(A);
  return {FgAbGroup::from_cokernel(M), determinant(M)};
}

K0Group k0(const IntMatrix& A) {
  require_input(A, "k0");
  FgAbGroup G = FgAbGroup::from_cokernel(id_minus(A.transpose()));
  GroupElement unit = G.element(ones_vector(A.rows()));
  return {std::move(G), std::move(unit)};
}

EPair e_pair(const IntMatrix& A) {
  require_input(A, "e_invariant");
  const std::size_t N = A.rows();
  TensorProduct T =
      tensor(FgAbGroup::from_cokernel(id_minus(A)), FgAbGroup::from_cokernel(id_minus(A.transpose())));
  IntVector v(N * N);
  for (std::size_t i = 0; i < N; ++i) v[i * N + i] = 1;
  GroupElement e = T.group.element(std::move(v));
  PairInvariant pair(e);
  return {std::move(T), std::move(e), std::move(pair)};
}

PairInvariant e_invariant(const IntMatrix& A) { return e_pair(A).pair; }

GroupElement unit_invariant(const IntMatrix& A) {
  const EPair ep = e_pair(A);
  const IntVector ones = ones_vector(A.rows());
  return ep.tensor.embed(ones, ones);
}

std::string IsoType::to_string() const { return FgAbGroup::from_cyclic(invariant_factors, free_rank).to_string(); }

IsoType iso_type(const FgAbGroup& G) { return {G.invariant_factors(), G.free_rank()}; }

namespace {

IsoType normalised(const IntVector& cyclic, std::size_t free_rank) {
  return iso_type(FgAbGroup::from_cyclic(cyclic, free_rank));
}

}  // namespace

KunnethTypes kunneth(const IsoType& g) {
  const std::size_t n = g.free_rank;
  const std::size_t k = g.invariant_factors.size();
  const IntVector& m = g.invariant_factors;

  // The displayed decomposition.
  IntVector display;
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t c = 0; c < 2 * n + 2 * k - (2 * i - 1); ++c) display.push_back(m[i - 1]);

  // K_1 from its three summands, Tor(Z/a, Z/b) = Z/gcd(a, b).
  IntVector k1;
  for (std::size_t c = 0; c < 2 * n; ++c) k1.insert(k1.end(), m.begin(), m.end());
  for (const auto& a : m)
    for (const auto& b : m) k1.push_back(gcd(a, b));

  KunnethTypes t;
  t.k0_of_A = g;
  t.tensor_part = normalised(display, n * n);
  t.k0 = normalised(display, 2 * n * n);
  t.k1 = normalised(k1, 2 * n * n);
  return t;
}

KunnethTypes kunneth(const IntMatrix& A) { return kunneth(iso_type(k0(A).group)); }

Comparison compare(const IntMatrix& A, const IntMatrix& B) {
  Comparison c;
  auto verdict = [](bool same) { return same ? PairVerdict::Equivalent : PairVerdict::Inequivalent; };

  const BowenFranks bfa = bowen_franks(A), bfb = bowen_franks(B);
  const bool bf_same = bfa.group.isomorphic_to(bfb.group);
  c.checks.push_back({"bf", verdict(bf_same), bfa.group.to_string(), bfb.group.to_string(),
                      bf_same ? "isomorphic" : "invariant factors or free ranks differ"});
  c.checks.push_back({"det", verdict(bfa.det == bfb.det), bfa.det.get_str(), bfb.det.get_str(),
                      bfa.det == bfb.det ? "equal" : "different"});

  const K0Group ka = k0(A), kb = k0(B);
  const PairInvariant ua(ka.unit), ub(kb.unit);
  const PairComparison kc = pair_equiv(ua, ub);
  c.checks.push_back({"k0-unit", kc.verdict, ua.to_string(), ub.to_string(), kc.certificate});

  const PairInvariant ea = e_invariant(A), eb = e_invariant(B);
  const PairComparison ec = pair_equiv(ea, eb);
  c.checks.push_back({"e-pair", ec.verdict, ea.to_string(), eb.to_string(), ec.certificate});

  for (const auto& check : c.checks) c.distinguished = c.distinguished || check.verdict == PairVerdict::Inequivalent;
  c.verdict = c.distinguished ? "distinguished" : kNotDistinguished;
  return c;
}

WitnessRecord sse_witness_action(const IntMatrix& C, const IntMatrix& D) {
  if (C.cols() != D.rows() || C.rows() != D.cols())
    throw DimensionError("sse_witness_action: C must be N x M and D must be M x N");
  if (!C.is_nonnegative() || !D.is_nonnegative())
    throw std::invalid_argument("sse_witness_action: C and D must be nonnegative");
  const IntMatrix A = C * D;
  const IntMatrix B = D * C;
  const std::size_t M = B.rows();

  const IntVector lhs = subtract(paired_sum(D, C.transpose()), diagonal_sum(IntMatrix::identity(M)));
  const IntVector rhs = diagonal_sum(B - IntMatrix::identity(M));

  WitnessRecord rec = witness(e_pair(A), e_pair(B), D, C.transpose());
  rec.identity_holds = lhs == rhs;
  return rec;
}

WitnessRecord se_witness_action(const IntMatrix& R, const IntMatrix& S, unsigned long ell, const IntMatrix& A,
                                const IntMatrix& B) {
  if (!verify_se(A, B, R, S, ell)) throw std::invalid_argument("se_witness_action: shift-equivalence identities fail");
  const std::size_t M = B.rows();
  const IntMatrix I = IntMatrix::identity(M);
  IntMatrix geometric(M, M), Bk = I;
  for (unsigned long k = 0; k < ell; ++k) {
    geometric = geometric + Bk;
    Bk = Bk * B;
  }
  const IntVector lhs = subtract(paired_sum(S, R.transpose()), diagonal_sum(I));
  const IntVector rhs = diagonal_sum((B - I) * geometric);

  WitnessRecord rec = witness(e_pair(A), e_pair(B), S, R.transpose());
  rec.identity_holds = lhs == rhs;
  return rec;
}

}  // namespace shiftlab
