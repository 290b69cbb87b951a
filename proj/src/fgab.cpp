#include "shiftlab/fgab.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace shiftlab {

namespace {

// Unimodular change of coordinates on Z^n, dense or a Kronecker product
// a (x) b of two dense factors.
struct Transform {
  IntMatrix a;
  std::optional<IntMatrix> b;

  std::size_t dim() const { return b ? a.rows() * b->rows() : a.rows(); }

  IntVector apply(const IntVector& v) const {
    if (!b) return a * v;
    const std::size_t n1 = a.rows();
    const std::size_t n2 = b->rows();
    if (v.size() != n1 * n2) throw DimensionError("transform: vector length mismatch");
    // R = a V b^t with V(i, j) = v[i * n2 + j].
    IntMatrix W(n1, n2);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j) {
        const Integer& x = v[i * n2 + j];
        if (sgn(x) == 0) continue;
        for (std::size_t q = 0; q < n2; ++q)
          if (sgn((*b)(q, j)) != 0) W(i, q) += x * (*b)(q, j);
      }
    const IntMatrix R = a * W;
    return R.data();
  }

  IntVector column(std::size_t j) const {
    if (!b) return a.column(j);
    const std::size_t n2 = b->rows();
    return kronecker(a.column(j / n2), b->column(j % n2));
  }

  IntMatrix dense() const { return b ? kronecker(a, *b) : a; }
};

Integer valuation(const Integer& x, const Integer& p, unsigned long cap) {
  if (sgn(x) == 0) return cap;
  Integer y = abs(x);
  unsigned long k = 0;
  while (k < cap && mpz_divisible_p(y.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t());
    ++k;
  }
  return k;
}

unsigned long valuation_ul(const Integer& x, const Integer& p) {
  Integer y = abs(x);
  unsigned long k = 0;
  while (sgn(y) != 0 && mpz_divisible_p(y.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t());
    ++k;
  }
  return k;
}

}  // namespace

struct FgAbGroup::Data {
  std::size_t N = 0;
  Transform fwd;
  Transform inv;
  IntVector moduli;
  std::vector<std::size_t> torsion_idx;
  std::vector<std::size_t> free_idx;
  // SNF of diag(moduli[torsion_idx]): P diag(.) Q = diag(chain).
  IntMatrix P;
  IntMatrix P_inverse;
  IntVector chain;
  std::vector<std::size_t> chain_rows;  // rows of P whose divisor is > 1
  IntVector invariant_factors;
};

namespace {

std::shared_ptr<const FgAbGroup::Data> make_group(std::size_t N, Transform fwd, Transform inv, IntVector moduli) {
  auto d = std::make_shared<FgAbGroup::Data>();
  d->N = N;
  d->fwd = std::move(fwd);
  d->inv = std::move(inv);
  d->moduli = std::move(moduli);
  IntVector torsion_moduli;
  for (std::size_t i = 0; i < N; ++i) {
    const int s = sgn(d->moduli[i]);
    if (s < 0) d->moduli[i] = -d->moduli[i];
    if (s == 0) {
      d->free_idx.push_back(i);
    } else if (d->moduli[i] > 1) {
      d->torsion_idx.push_back(i);
      torsion_moduli.push_back(d->moduli[i]);
    }
  }
  const SmithForm sf = snf(IntMatrix::diagonal(torsion_moduli));
  d->P = sf.U;
  d->P_inverse = sf.U_inverse;
  d->chain = sf.divisors;
  for (std::size_t r = 0; r < d->chain.size(); ++r)
    if (d->chain[r] > 1) {
      d->chain_rows.push_back(r);
      d->invariant_factors.push_back(d->chain[r]);
    }
  return d;
}

}  // namespace

FgAbGroup FgAbGroup::from_cokernel(const IntMatrix& rel) {
  const std::size_t N = rel.rows();
  SmithForm sf = snf(rel);
  IntVector moduli(N, Integer(0));
  for (std::size_t t = 0; t < sf.divisors.size(); ++t) moduli[t] = sf.divisors[t];
  return FgAbGroup(make_group(N, Transform{std::move(sf.U), std::nullopt},
                              Transform{std::move(sf.U_inverse), std::nullopt}, std::move(moduli)));
}

FgAbGroup FgAbGroup::from_cyclic(const IntVector& orders, std::size_t free_rank) {
  const std::size_t N = orders.size() + free_rank;
  IntVector moduli = orders;
  moduli.resize(N, Integer(0));
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (sgn(orders[i]) <= 0) throw std::invalid_argument("from_cyclic: cyclic orders must be positive");
  return FgAbGroup(make_group(N, Transform{IntMatrix::identity(N), std::nullopt},
                              Transform{IntMatrix::identity(N), std::nullopt}, std::move(moduli)));
}

std::size_t FgAbGroup::ambient_rank() const { return d_->N; }
const IntVector& FgAbGroup::invariant_factors() const { return d_->invariant_factors; }
std::size_t FgAbGroup::free_rank() const { return d_->free_idx.size(); }

std::optional<Integer> FgAbGroup::order() const {
  if (!is_finite()) return std::nullopt;
  Integer n = 1;
  for (const auto& d : d_->invariant_factors) n *= d;
  return n;
}

Integer FgAbGroup::exponent() const {
  if (!is_finite()) return 0;
  return d_->invariant_factors.empty() ? Integer(1) : d_->invariant_factors.back();
}

std::vector<IntVector> FgAbGroup::relation_generators() const {
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < d_->N; ++i) {
    const Integer& m = d_->moduli[i];
    if (sgn(m) == 0) continue;
    IntVector col = d_->inv.column(i);
    if (m != 1) col = scale(m, col);
    gens.push_back(std::move(col));
  }
  return gens;
}

Lattice FgAbGroup::relations() const { return Lattice::from_generators(d_->N, relation_generators()); }

bool FgAbGroup::in_relations(const IntVector& v) const {
  if (v.size() != d_->N) throw DimensionError("relation membership: ambient rank mismatch");
  const IntVector c = d_->fwd.apply(v);
  for (std::size_t i = 0; i < d_->N; ++i) {
    const Integer& m = d_->moduli[i];
    if (sgn(m) == 0) {
      if (sgn(c[i]) != 0) return false;
    } else if (m != 1 && !mpz_divisible_p(c[i].get_mpz_t(), m.get_mpz_t())) {
      return false;
    }
  }
  return true;
}

IntVector FgAbGroup::coordinates(const IntVector& v) const {
  if (v.size() != d_->N) throw DimensionError("coordinates: ambient rank mismatch");
  const IntVector c = d_->fwd.apply(v);
  IntVector t(d_->torsion_idx.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = c[d_->torsion_idx[k]];
  const IntVector tp = d_->P * t;
  IntVector out;
  out.reserve(d_->chain_rows.size() + d_->free_idx.size());
  for (std::size_t r : d_->chain_rows) {
    Integer x;
    mpz_fdiv_r(x.get_mpz_t(), tp[r].get_mpz_t(), d_->chain[r].get_mpz_t());
    out.push_back(x);
  }
  for (std::size_t i : d_->free_idx) out.push_back(c[i]);
  return out;
}

IntVector FgAbGroup::lift(const IntVector& coords) const {
  const std::size_t k = d_->chain_rows.size();
  if (coords.size() != k + d_->free_idx.size()) throw DimensionError("lift: coordinate count mismatch");
  IntVector tp(d_->torsion_idx.size(), Integer(0));
  for (std::size_t r = 0; r < k; ++r) tp[d_->chain_rows[r]] = coords[r];
  const IntVector t = d_->P_inverse * tp;
  IntVector c(d_->N, Integer(0));
  for (std::size_t q = 0; q < t.size(); ++q) c[d_->torsion_idx[q]] = t[q];
  for (std::size_t q = 0; q < d_->free_idx.size(); ++q) c[d_->free_idx[q]] = coords[k + q];
  return d_->inv.apply(c);
}

GroupElement FgAbGroup::element(IntVector v) const { return GroupElement(*this, std::move(v)); }
GroupElement FgAbGroup::zero() const { return GroupElement(*this, IntVector(d_->N, Integer(0))); }
GroupElement FgAbGroup::generator(std::size_t i) const { return GroupElement(*this, unit_vector(d_->N, i)); }

bool FgAbGroup::same_as(const FgAbGroup& other) const {
  if (d_ == other.d_) return true;
  if (d_->N != other.d_->N) return false;
  if (!isomorphic_to(other)) return false;
  for (const auto& g : relation_generators())
    if (!other.in_relations(g)) return false;
  for (const auto& g : other.relation_generators())
    if (!in_relations(g)) return false;
  return true;
}

bool FgAbGroup::isomorphic_to(const FgAbGroup& other) const {
  return free_rank() == other.free_rank() && invariant_factors() == other.invariant_factors();
}

std::string FgAbGroup::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& d : d_->invariant_factors) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  if (free_rank() > 0) {
    os << (first ? "" : " + ") << 'Z';
    if (free_rank() > 1) os << '^' << free_rank();
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

GroupElement::GroupElement(FgAbGroup group, IntVector v) : group_(std::move(group)), v_(std::move(v)) {
  if (v_.size() != group_.ambient_rank()) throw DimensionError("group element: vector length differs from ambient rank");
}

namespace {
void require_same_group(const GroupElement& g, const GroupElement& h) {
  if (!g.group().same_as(h.group())) throw std::invalid_argument("elements belong to different groups");
}
}  // namespace

GroupElement GroupElement::operator+(const GroupElement& other) const {
  require_same_group(*this, other);
  return GroupElement(group_, add(v_, other.v_));
}

GroupElement GroupElement::operator-(const GroupElement& other) const {
  require_same_group(*this, other);
  return GroupElement(group_, subtract(v_, other.v_));
}

GroupElement GroupElement::operator-() const { return GroupElement(group_, scale(Integer(-1), v_)); }

GroupElement operator*(const Integer& n, const GroupElement& g) { return GroupElement(g.group_, scale(n, g.v_)); }

std::string GroupElement::to_string() const {
  const IntVector c = coordinates();
  if (c.empty()) return "[0]";
  if (c.size() == 1) return "[" + c.front().get_str() + "]";
  return shiftlab::to_string(c);
}

bool element_equal(const GroupElement& g, const GroupElement& h) {
  require_same_group(g, h);
  return g.group().in_relations(subtract(g.vector(), h.vector()));
}

std::optional<Integer> order(const GroupElement& g) {
  const FgAbGroup& G = g.group();
  const IntVector c = g.coordinates();
  const std::size_t k = G.invariant_factors().size();
  for (std::size_t i = k; i < c.size(); ++i)
    if (sgn(c[i]) != 0) return std::nullopt;
  Integer n = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const Integer& d = G.invariant_factors()[i];
    Integer part = d / gcd(c[i], d);
    n = lcm(n, part);
  }
  return n;
}

std::vector<unsigned long> height_sequence(const GroupElement& g, const Integer& p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    throw std::invalid_argument("height_sequence: " + p.get_str() + " is not prime");
  const FgAbGroup& G = g.group();
  const IntVector c = g.coordinates();
  const std::size_t k = G.invariant_factors().size();
  for (std::size_t i = k; i < c.size(); ++i)
    if (sgn(c[i]) != 0) throw std::invalid_argument("height_sequence: element has infinite order");

  // In Z/p^a the p-height of x is min(v_p(x), a); x vanishes once it hits a.
  struct Component {
    unsigned long exponent;
    unsigned long valuation;
  };
  std::vector<Component> comps;
  for (std::size_t i = 0; i < k; ++i) {
    const unsigned long a = valuation_ul(G.invariant_factors()[i], p);
    if (a == 0) continue;
    const unsigned long v = valuation(c[i], p, a).get_ui();
    comps.push_back({a, std::min(v, a)});
  }
  std::vector<unsigned long> seq;
  for (unsigned long j = 0;; ++j) {
    std::optional<unsigned long> h;
    for (const auto& comp : comps)
      if (comp.valuation + j < comp.exponent) h = h ? std::min(*h, comp.valuation + j) : comp.valuation + j;
    if (!h) break;
    seq.push_back(*h);
  }
  return seq;
}

GroupElement TensorProduct::embed(const GroupElement& v, const GroupElement& w) const {
  if (!v.group().same_as(left) || !w.group().same_as(right))
    throw std::invalid_argument("tensor embed: factor groups do not match");
  return embed(v.vector(), w.vector());
}

GroupElement TensorProduct::embed(const IntVector& v, const IntVector& w) const {
  return group.element(kronecker(v, w));
}

TensorProduct tensor(const FgAbGroup& G, const FgAbGroup& H) {
  const auto& g = G.data();
  const auto& h = H.data();
  IntVector moduli;
  moduli.reserve(g.N * h.N);
  for (std::size_t i = 0; i < g.N; ++i)
    for (std::size_t j = 0; j < h.N; ++j) moduli.push_back(gcd(g.moduli[i], h.moduli[j]));
  Transform fwd{g.fwd.dense(), h.fwd.dense()};
  Transform inv{g.inv.dense(), h.inv.dense()};
  FgAbGroup T(make_group(g.N * h.N, std::move(fwd), std::move(inv), std::move(moduli)));
  return TensorProduct{G, H, std::move(T)};
}

IntMatrix tensor_relations(const FgAbGroup& G, const FgAbGroup& H) {
  const std::size_t N = G.ambient_rank();
  const std::size_t M = H.ambient_rank();
  std::vector<IntVector> cols;
  for (const auto& r : G.relation_generators())
    for (std::size_t j = 0; j < M; ++j) cols.push_back(kronecker(r, unit_vector(M, j)));
  for (std::size_t i = 0; i < N; ++i)
    for (const auto& s : H.relation_generators()) cols.push_back(kronecker(unit_vector(N, i), s));
  return IntMatrix::from_columns(N * M, cols);
}

GroupHom::GroupHom(IntMatrix S, FgAbGroup domain, FgAbGroup codomain)
    : S_(std::move(S)), domain_(std::move(domain)), codomain_(std::move(codomain)) {}

GroupElement GroupHom::apply(const GroupElement& g) const {
  if (!g.group().same_as(domain_)) throw std::invalid_argument("hom apply: element outside the domain");
  if (kron_factors_) {
    const auto& [P, Q] = *kron_factors_;
    // (P (x) Q) vec(V) = vec(P V Q^t)
    const std::size_t n1 = P.cols();
    const std::size_t n2 = Q.cols();
    IntMatrix V(n1, n2);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j) V(i, j) = g.vector()[i * n2 + j];
    return codomain_.element((P * V * Q.transpose()).data());
  }
  return codomain_.element(S_ * g.vector());
}

GroupHom induced_hom(const IntMatrix& S, const FgAbGroup& G, const FgAbGroup& H) {
  if (S.cols() != G.ambient_rank() || S.rows() != H.ambient_rank())
    throw DimensionError("induced_hom: matrix shape does not match the ambient ranks");
  GroupHom f(S, G, H);
  const std::size_t N = G.ambient_rank();
  const std::size_t M = H.ambient_rank();

  f.well_defined_ = true;
  for (const auto& r : G.relation_generators())
    if (!H.in_relations(S * r)) {
      f.well_defined_ = false;
      break;
    }

  // W = B_H S, column by column.
  const auto& hd = H.data();
  IntMatrix W(M, N);
  for (std::size_t j = 0; j < N; ++j) {
    const IntVector col = hd.fwd.apply(S.column(j));
    for (std::size_t i = 0; i < M; ++i) W(i, j) = col[i];
  }

  std::vector<std::size_t> constrained;
  for (std::size_t i = 0; i < M; ++i)
    if (hd.moduli[i] != 1) constrained.push_back(i);
  IntMatrix block(constrained.size(), N + constrained.size());
  for (std::size_t r = 0; r < constrained.size(); ++r) {
    for (std::size_t j = 0; j < N; ++j) block(r, j) = W(constrained[r], j);
    block(r, N + r) = hd.moduli[constrained[r]];
  }
  const Lattice ker = kernel(block);
  f.injective_ = true;
  for (std::size_t c = 0; c < ker.rank() && f.injective_; ++c) {
    IntVector v(N);
    for (std::size_t j = 0; j < N; ++j) v[j] = ker.basis()(j, c);
    if (!G.in_relations(v)) f.injective_ = false;
  }

  const SmithForm sf = snf(W.hconcat(IntMatrix::diagonal(hd.moduli)));
  f.surjective_ = sf.divisors.size() == M &&
                  std::all_of(sf.divisors.begin(), sf.divisors.end(), [](const Integer& d) { return d == 1; });
  return f;
}

GroupHom tensor_hom(const GroupHom& f, const GroupHom& g, const TensorProduct& from, const TensorProduct& to) {
  if (!f.domain().same_as(from.left) || !g.domain().same_as(from.right) || !f.codomain().same_as(to.left) ||
      !g.codomain().same_as(to.right))
    throw std::invalid_argument("tensor_hom: factor maps do not match the tensor products");
  IntMatrix S = kronecker(f.matrix(), g.matrix());
  if (f.is_isomorphism() && g.is_isomorphism()) {
    GroupHom h(std::move(S), from.group, to.group);
    h.kron_factors_ = std::make_pair(f.matrix(), g.matrix());
    h.well_defined_ = h.injective_ = h.surjective_ = true;
    return h;
  }
  GroupHom h = induced_hom(S, from.group, to.group);
  h.kron_factors_ = std::make_pair(f.matrix(), g.matrix());
  if (f.well_defined() && g.well_defined()) h.well_defined_ = true;
  return h;
}

std::string to_string(PairVerdict v) {
  switch (v) {
    case PairVerdict::Equivalent:
      return "Equivalent";
    case PairVerdict::Inequivalent:
      return "Inequivalent";
    case PairVerdict::Indeterminate:
      return "Indeterminate";
  }
  return "?";
}

std::vector<Integer> prime_divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> primes;
  if (n < 2) return primes;
  for (Integer p = 2; p * p <= n; ++p) {
    if (!mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) continue;
    primes.push_back(p);
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

PairInvariant::PairInvariant(GroupElement element) : element_(std::move(element)) {
  const FgAbGroup& G = element_.group();
  summary_.invariant_factors = G.invariant_factors();
  summary_.free_rank = G.free_rank();
  summary_.element_order = order(element_);
  summary_.torsion_element = summary_.element_order.has_value();
  const IntVector c = element_.coordinates();
  const std::size_t k = G.invariant_factors().size();
  IntVector free_part(c.begin() + static_cast<std::ptrdiff_t>(k), c.end());
  summary_.free_content = content(free_part);
  if (summary_.torsion_element && k > 0)
    for (const auto& p : prime_divisors(G.invariant_factors().back()))
      summary_.heights[p] = height_sequence(element_, p);
}

std::string PairInvariant::to_string() const { return "(" + group().to_string() + "," + element_.to_string() + ")"; }

PairComparison pair_equiv(const PairInvariant& P, const PairInvariant& Q) {
  const PairSummary& a = P.summary();
  const PairSummary& b = Q.summary();
  if (a.invariant_factors != b.invariant_factors || a.free_rank != b.free_rank)
    return {PairVerdict::Inequivalent, "groups differ: " + P.group().to_string() + " vs " + Q.group().to_string()};
  if (a.element_order != b.element_order) {
    auto show = [](const std::optional<Integer>& o) { return o ? o->get_str() : std::string("infinite"); };
    return {PairVerdict::Inequivalent,
            "element orders differ: " + show(a.element_order) + " vs " + show(b.element_order)};
  }
  if (a.torsion_element) {
    // Automorphisms preserve the torsion subgroup and every automorphism
    // of it extends, so heights decide in finite and mixed groups alike.
    for (const auto& [p, seq] : a.heights)
      if (b.heights.at(p) != seq)
        return {PairVerdict::Inequivalent, "height sequences differ at p = " + p.get_str()};
    return {PairVerdict::Equivalent, "same invariant factors, order and height sequences"};
  }
  if (a.free_content != b.free_content)
    return {PairVerdict::Inequivalent,
            "free contents differ: " + a.free_content.get_str() + " vs " + b.free_content.get_str()};
  if (a.invariant_factors.empty()) return {PairVerdict::Equivalent, "free group, equal content"};
  return {PairVerdict::Indeterminate, "mixed group with matching summaries"};
}

}  // namespace shiftlab
