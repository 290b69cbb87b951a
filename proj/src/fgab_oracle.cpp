#include "shiftlab/fgab_oracle.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace shiftlab::oracle {

namespace {

// Finite group Z/d_1 + ... + Z/d_k with elements encoded in mixed radix.
struct FiniteModel {
  std::vector<unsigned long> d;
  std::size_t size = 1;

  explicit FiniteModel(const FgAbGroup& G, std::size_t bound) {
    if (!G.is_finite()) throw std::invalid_argument("oracle: group is infinite");
    const Integer n = *G.order();
    if (n > Integer(static_cast<unsigned long>(bound)))
      throw BoundExceeded("oracle: |G| = " + n.get_str() + " exceeds bound " + std::to_string(bound));
    for (const auto& x : G.invariant_factors()) d.push_back(x.get_ui());
    size = n.get_ui();
  }

  std::vector<unsigned long> decode(std::size_t idx) const {
    std::vector<unsigned long> c(d.size());
    for (std::size_t i = d.size(); i-- > 0;) {
      c[i] = idx % d[i];
      idx /= d[i];
    }
    return c;
  }

  std::size_t encode(const std::vector<unsigned long>& c) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < d.size(); ++i) idx = idx * d[i] + c[i] % d[i];
    return idx;
  }

  std::size_t add(std::size_t a, std::size_t b) const {
    auto x = decode(a);
    const auto y = decode(b);
    for (std::size_t i = 0; i < d.size(); ++i) x[i] = (x[i] + y[i]) % d[i];
    return encode(x);
  }

  std::size_t times(unsigned long n, std::size_t a) const {
    auto x = decode(a);
    for (std::size_t i = 0; i < d.size(); ++i) x[i] = static_cast<unsigned long>((static_cast<unsigned long long>(x[i]) * n) % d[i]);
    return encode(x);
  }

  std::size_t from_coordinates(const IntVector& c) const {
    std::vector<unsigned long> x(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      Integer r;
      mpz_fdiv_r_ui(r.get_mpz_t(), c[i].get_mpz_t(), d[i]);
      x[i] = r.get_ui();
    }
    return encode(x);
  }

  IntVector to_coordinates(std::size_t idx) const {
    const auto x = decode(idx);
    IntVector c;
    for (auto v : x) c.emplace_back(v);
    return c;
  }
};

struct OrbitSearch {
  const FiniteModel& model;
  std::vector<unsigned long> g;  // coordinates of the element being moved
  std::set<std::size_t> orbit;
  std::size_t budget;
  std::size_t nodes = 0;
  // The rest of the search depends only on (level, partial, H).
  std::set<std::string> seen;

  // H: membership bitmap of <phi(e_0), ..., phi(e_{level-1})>.
  void search(std::size_t level, std::size_t partial, const std::vector<char>& H, std::size_t h_size) {
    if (++nodes > budget) throw BoundExceeded("oracle: automorphism search budget exhausted");
    std::string key(H.begin(), H.end());
    key += ':' + std::to_string(level) + ':' + std::to_string(partial);
    if (!seen.insert(std::move(key)).second) return;
    if (level == model.d.size()) {
      orbit.insert(partial);
      return;
    }
    const unsigned long dl = model.d[level];
    for (std::size_t y = 0; y < model.size; ++y) {
      if (model.times(dl, y) != 0) continue;
      // Injective extension: k y not in H for 0 < k < d_level.
      bool ok = true;
      std::size_t ky = y;
      for (unsigned long k = 1; k < dl && ok; ++k) {
        if (H[ky]) ok = false;
        ky = model.add(ky, y);
      }
      if (!ok) continue;
      std::vector<char> H2(model.size, 0);
      std::size_t multiple = 0;
      for (unsigned long k = 0; k < dl; ++k) {
        for (std::size_t h = 0; h < model.size; ++h)
          if (H[h]) H2[model.add(h, multiple)] = 1;
        multiple = model.add(multiple, y);
      }
      const std::size_t next = model.add(partial, model.times(g[level], y));
      search(level + 1, next, H2, h_size * dl);
    }
  }
};

// Prime-power decomposition by trial division.
std::vector<std::pair<Integer, unsigned long>> factor(Integer n) {
  std::vector<std::pair<Integer, unsigned long>> out;
  for (Integer p = 2; p * p <= n; ++p) {
    unsigned long e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace

std::vector<GroupElement> elements(const FgAbGroup& G, std::size_t bound) {
  const FiniteModel model(G, bound);
  std::vector<GroupElement> out;
  out.reserve(model.size);
  for (std::size_t i = 0; i < model.size; ++i) out.push_back(G.element(G.lift(model.to_coordinates(i))));
  return out;
}

std::vector<GroupElement> aut_orbit(const FgAbGroup& G, const GroupElement& g, std::size_t bound,
                                    std::size_t node_budget) {
  const FiniteModel model(G, bound);
  OrbitSearch s{model, {}, {}, node_budget, 0, {}};
  const IntVector c = g.coordinates();
  for (const auto& x : c) s.g.push_back(x.get_ui());
  std::vector<char> H(model.size, 0);
  H[0] = 1;
  s.search(0, 0, H, 1);
  std::vector<GroupElement> out;
  for (std::size_t idx : s.orbit) out.push_back(G.element(G.lift(model.to_coordinates(idx))));
  return out;
}

bool in_aut_orbit(const FgAbGroup& G, const GroupElement& g, const GroupElement& h, std::size_t bound) {
  const FiniteModel model(G, bound);
  const std::size_t target = model.from_coordinates(h.coordinates());
  for (const auto& x : aut_orbit(G, g, bound))
    if (model.from_coordinates(x.coordinates()) == target) return true;
  return false;
}

IntVector normalise_cyclic(const IntVector& orders) {
  // prime -> exponents of the prime-power cyclic factors
  std::map<Integer, std::vector<unsigned long>> parts;
  for (const auto& c : orders) {
    if (c <= 1) continue;
    for (const auto& [p, e] : factor(c)) parts[p].push_back(e);
  }
  std::size_t len = 0;
  for (auto& [p, es] : parts) {
    std::sort(es.begin(), es.end(), std::greater<>());
    len = std::max(len, es.size());
  }
  // The i-th largest invariant factor collects the i-th largest power of
  // every prime.
  IntVector factors(len, Integer(1));
  for (const auto& [p, es] : parts)
    for (std::size_t i = 0; i < es.size(); ++i) {
      Integer pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), es[i]);
      factors[len - 1 - i] *= pe;
    }
  return factors;
}

IntVector tensor_invariant_factors(const IntVector& d, const IntVector& e) {
  IntVector cyc;
  for (const auto& x : d)
    for (const auto& y : e) cyc.push_back(gcd(x, y));
  return normalise_cyclic(cyc);
}

std::map<Integer, std::size_t> order_statistics(const FgAbGroup& G, std::size_t bound) {
  const FiniteModel model(G, bound);
  std::map<Integer, std::size_t> stats;
  for (std::size_t idx = 0; idx < model.size; ++idx) {
    unsigned long n = 1;
    std::size_t x = idx;
    while (x != 0) {
      x = model.add(x, idx);
      ++n;
    }
    ++stats[Integer(n)];
  }
  return stats;
}

}  // namespace shiftlab::oracle
