#pragma once

#include "blowdown/filling.hpp"
#include "blowdown/integer.hpp"
#include "blowdown/surface.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace blowdown {

/// Chain weights [b_k, ..., b_1] listed left to right as the chain is drawn; the
/// i-th curve has self-intersection -b_i. Nonempty, every entry >= 2.
class WeightList {
 public:
  /// Throws ValidationError on an empty list or an entry below 2.
  explicit WeightList(std::vector<Integer> weights);
  WeightList(std::initializer_list<long long> weights);

  const std::vector<Integer>& values() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  const Integer& operator[](std::size_t i) const { return weights_[i]; }

  bool operator==(const WeightList&) const = default;

 private:
  std::vector<Integer> weights_;
};

struct Rational {
  Integer num;
  Integer den;

  bool operator==(const Rational&) const = default;
};

/// Hirzebruch-Jung expansion of p^2/(pq-1). Requires p > q >= 1 and gcd(p, q) = 1,
/// otherwise throws DomainError.
WeightList cf_expand(const Integer& p, const Integer& q);

/// Hirzebruch-Jung expansion of any n/d with n > d >= 1 coprime.
WeightList hj_expand(const Integer& n, const Integer& d);

/// b_k - 1/(b_{k-1} - 1/(... - 1/b_1)) in lowest terms.
Rational cf_eval(const WeightList& weights);

/// |det| of the tridiagonal plumbing matrix (diagonal b_i, off-diagonal -1).
Integer plumbing_det(const WeightList& weights);

/// H1 of the boundary lens space: Z/det generated by the normal circle of the
/// rightmost curve. coefficients[i] is the class of the normal circle of the i-th
/// curve (left to right), so coefficients.back() == 1.
struct ChainBoundary {
  Integer det;
  std::vector<Integer> coefficients;

  /// mu_i with i = 1 at the generator (rightmost) end.
  const Integer& mu(std::size_t i) const { return coefficients[coefficients.size() - i]; }

  /// Same boundary with every coefficient multiplied by a unit mod det.
  ChainBoundary scaled(const Integer& unit) const;

  bool operator==(const ChainBoundary&) const = default;
};

/// mu_1 = 1, mu_{i+1} = b_i mu_i - mu_{i-1}, reduced mod det. Throws InternalError if
/// the closing relation b_k mu_k = mu_{k-1} (mod det) fails.
ChainBoundary normal_circle_coeffs(const WeightList& weights);

/// A linear chain of curves in the surface together with the filling that replaces it.
struct LinearChain {
  std::string name;
  std::vector<std::string> curve_names;
  WeightList weights;
  std::optional<std::pair<Integer, Integer>> cpq;
  Filling filling;

  bool operator==(const LinearChain&) const = default;
};

enum class ChainViolationKind { length, self_intersection, adjacency, non_adjacent, continued_fraction };

struct ChainViolation {
  ChainViolationKind kind;
  std::size_t first = 0;
  std::size_t second = 0;
  Integer expected;
  Integer actual;
  std::string message;
};

struct ChainReport {
  std::string chain;
  std::vector<ChainViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks self-intersections against the weights, +1 between neighbours, 0 otherwise,
/// and the weights against cf_expand when (p, q) is given. Throws ValidationError for
/// an unresolved curve name.
ChainReport validate_chain(const SurfaceState& state, const LinearChain& chain);

struct DisjointViolation {
  std::string chain_a;
  std::string curve_a;
  std::string chain_b;
  std::string curve_b;
  Integer intersection;
};

struct DisjointReport {
  std::vector<DisjointViolation> violations;

  bool ok() const { return violations.empty(); }
};

DisjointReport check_disjoint(const SurfaceState& state, std::span<const LinearChain> chains);

/// Sum_i (x . c_i) mu_i mod det over the chain curves c_i.
Integer boundary_image(const SurfaceState& state, const LinearChain& chain, const LatticeClass& x);
Integer boundary_image(const SurfaceState& state, const LinearChain& chain, const ChainBoundary& boundary,
                       const LatticeClass& x);

}  // namespace blowdown
