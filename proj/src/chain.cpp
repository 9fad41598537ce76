#include "blowdown/chain.hpp"

#include "blowdown/error.hpp"

namespace blowdown {

WeightList::WeightList(std::vector<Integer> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw ValidationError("weight list is empty");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] < 2) {
      throw ValidationError("weight < 2 at position " + std::to_string(i) + " (got " + to_string(weights_[i]) + ")");
    }
  }
}

WeightList::WeightList(std::initializer_list<long long> weights)
    : WeightList(std::vector<Integer>(weights.begin(), weights.end())) {}

WeightList hj_expand(const Integer& n, const Integer& d) {
  if (d < 1 || n <= d) throw DomainError("Hirzebruch-Jung expansion needs n > d >= 1");
  if (gcd(n, d) != 1) throw DomainError("Hirzebruch-Jung expansion needs coprime n, d");
  std::vector<Integer> out;
  Integer num = n;
  Integer den = d;
  while (den != 0) {
    Integer b = (num + den - 1) / den;
    out.push_back(b);
    Integer next = b * den - num;
    num = std::move(den);
    den = std::move(next);
  }
  return WeightList(std::move(out));
}

WeightList cf_expand(const Integer& p, const Integer& q) {
  if (q < 1 || p <= q) {
    throw DomainError("C_{p,q} needs p > q >= 1, got (" + to_string(p) + ", " + to_string(q) + ")");
  }
  if (gcd(p, q) != 1) {
    throw DomainError("C_{p,q} needs gcd(p, q) = 1, got (" + to_string(p) + ", " + to_string(q) + ")");
  }
  return hj_expand(p * p, p * q - 1);
}

Rational cf_eval(const WeightList& weights) {
  const auto& b = weights.values();
  Integer num = b.back();
  Integer den = 1;
  for (auto it = b.rbegin() + 1; it != b.rend(); ++it) {
    Integer next = *it * num - den;
    den = std::move(num);
    num = std::move(next);
  }
  const Integer g = gcd(num, den);
  return {num / g, den / g};
}

Integer plumbing_det(const WeightList& weights) {
  // Continuant: D_i = b_i D_{i-1} - D_{i-2}.
  Integer before = 1;
  Integer current = 1;
  bool first = true;
  for (const auto& b : weights.values()) {
    if (first) {
      current = b;
      first = false;
      continue;
    }
    Integer next = b * current - before;
    before = std::move(current);
    current = std::move(next);
  }
  return abs_value(current);
}

ChainBoundary ChainBoundary::scaled(const Integer& unit) const {
  if (gcd(unit, det) != 1) {
    throw DomainError(to_string(unit) + " is not a unit modulo " + to_string(det));
  }
  ChainBoundary out{det, {}};
  out.coefficients.reserve(coefficients.size());
  for (const auto& c : coefficients) out.coefficients.push_back(mod_floor(c * unit, det));
  return out;
}

ChainBoundary normal_circle_coeffs(const WeightList& weights) {
  const auto& b = weights.values();
  const std::size_t k = b.size();
  const Integer det = plumbing_det(weights);

  // Exact mu_1..mu_k walking from the rightmost curve.
  std::vector<Integer> mu(k + 1);
  mu[0] = 0;
  mu[1] = 1;
  for (std::size_t i = 1; i < k; ++i) mu[i + 1] = b[k - i] * mu[i] - mu[i - 1];
  const Integer closing = b[0] * mu[k] - mu[k - 1];
  if (closing != det || mod_floor(closing, det) != 0) {
    throw InternalError("normal circle recurrence does not close: b_k mu_k - mu_{k-1} = " + to_string(closing) +
                        ", det = " + to_string(det));
  }

  ChainBoundary out{det, std::vector<Integer>(k)};
  for (std::size_t i = 1; i <= k; ++i) out.coefficients[k - i] = mod_floor(mu[i], det);
  return out;
}

namespace {

std::vector<const LatticeClass*> resolve(const SurfaceState& state, const LinearChain& chain) {
  std::vector<const LatticeClass*> out;
  out.reserve(chain.curve_names.size());
  for (const auto& name : chain.curve_names) {
    if (!state.has_curve(name)) {
      throw ValidationError("chain " + chain.name + ": unknown curve '" + name + "'");
    }
    out.push_back(&state.curve(name));
  }
  return out;
}

}  // namespace

ChainReport validate_chain(const SurfaceState& state, const LinearChain& chain) {
  ChainReport report{chain.name, {}};
  const auto curves = resolve(state, chain);
  const auto& w = chain.weights.values();

  if (curves.size() != w.size()) {
    report.violations.push_back({ChainViolationKind::length, 0, 0, Integer(w.size()), Integer(curves.size()),
                                 "chain has " + std::to_string(curves.size()) + " curves but " +
                                     std::to_string(w.size()) + " weights"});
    return report;
  }

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const Integer square = state.pair(*curves[i], *curves[i]);
    if (square != -w[i]) {
      report.violations.push_back({ChainViolationKind::self_intersection, i, i, Integer(-w[i]), square,
                                   "weight mismatch at position " + std::to_string(i) + " (" +
                                       chain.curve_names[i] + "): self-intersection " + to_string(square) +
                                       " != " + to_string(Integer(-w[i]))});
    }
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      const Integer dot = state.pair(*curves[i], *curves[j]);
      const bool neighbours = j == i + 1;
      const Integer expected = neighbours ? 1 : 0;
      if (dot == expected) continue;
      report.violations.push_back(
          {neighbours ? ChainViolationKind::adjacency : ChainViolationKind::non_adjacent, i, j, expected, dot,
           std::string(neighbours ? "adjacency" : "non-adjacent") + " violation at positions " + std::to_string(i) +
               "-" + std::to_string(j) + " (" + chain.curve_names[i] + ", " + chain.curve_names[j] +
               "): intersection " + to_string(dot) + " != " + to_string(expected)});
    }
  }

  if (chain.cpq) {
    const auto& [p, q] = *chain.cpq;
    const WeightList expected = cf_expand(p, q);
    if (expected != chain.weights) {
      report.violations.push_back({ChainViolationKind::continued_fraction, 0, 0, 0, 0,
                                   "weights do not match the expansion of C_{" + to_string(p) + "," + to_string(q) +
                                       "}"});
    }
  }
  return report;
}

DisjointReport check_disjoint(const SurfaceState& state, std::span<const LinearChain> chains) {
  DisjointReport report;
  std::vector<std::vector<const LatticeClass*>> resolved;
  resolved.reserve(chains.size());
  for (const auto& c : chains) resolved.push_back(resolve(state, c));

  for (std::size_t a = 0; a < chains.size(); ++a)
    for (std::size_t b = a + 1; b < chains.size(); ++b)
      for (std::size_t i = 0; i < resolved[a].size(); ++i)
        for (std::size_t j = 0; j < resolved[b].size(); ++j) {
          Integer dot = state.pair(*resolved[a][i], *resolved[b][j]);
          const bool shared = chains[a].curve_names[i] == chains[b].curve_names[j];
          if (dot != 0 || shared) {
            report.violations.push_back({chains[a].name, chains[a].curve_names[i], chains[b].name,
                                         chains[b].curve_names[j], std::move(dot)});
          }
        }
  return report;
}

Integer boundary_image(const SurfaceState& state, const LinearChain& chain, const ChainBoundary& boundary,
                       const LatticeClass& x) {
  const auto curves = resolve(state, chain);
  if (curves.size() != boundary.coefficients.size()) {
    throw ValidationError("chain " + chain.name + ": boundary data does not match the chain length");
  }
  Integer total = 0;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const Integer dot = state.pair(x, *curves[i]);
    if (dot != 0) total += dot * boundary.coefficients[i];
  }
  return mod_floor(total, boundary.det);
}

Integer boundary_image(const SurfaceState& state, const LinearChain& chain, const LatticeClass& x) {
  return boundary_image(state, chain, normal_circle_coeffs(chain.weights), x);
}

}  // namespace blowdown
