#pragma once

#include "blowdown/chain.hpp"
#include "blowdown/integer.hpp"
#include "blowdown/surface.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace blowdown {

struct BoundaryRow {
  std::string name;
  LatticeClass cls;
  bool chain_member = false;
  /// Residue of the boundary map per chain, mod that chain's det.
  std::vector<Integer> boundary;
  /// Image in H1 of each filling, mod its h1_order.
  std::vector<Integer> induced;
};

struct BoundaryTable {
  std::vector<std::string> chain_names;
  std::vector<Integer> dets;
  std::vector<Integer> h1_orders;
  std::vector<BoundaryRow> rows;
};

/// One row per chain member (fixture order) followed by one row per extra class.
/// Throws ValidationError for unresolved names and ConfigurationError for a filling
/// incompatible with its chain.
BoundaryTable boundary_table(const SurfaceState& state, std::span<const LinearChain> chains,
                             std::span<const std::string> extra_classes);

/// Same, with the boundary generators supplied explicitly (one per chain).
BoundaryTable boundary_table(const SurfaceState& state, std::span<const LinearChain> chains,
                             std::span<const ChainBoundary> boundaries, std::span<const std::string> extra_classes);

/// Finite abelian group as invariant factors, each >= 2 and dividing the next.
struct AbelianGroup {
  std::vector<Integer> invariant_factors;

  Integer order() const;
  bool trivial() const { return invariant_factors.empty(); }
  /// "0", "Z/2", "Z/2 + Z/4", ...
  std::string to_string() const;

  bool operator==(const AbelianGroup&) const = default;
};

/// (+)_j Z/moduli_j modulo the subgroup generated by rows.
AbelianGroup cokernel(std::span<const std::vector<Integer>> rows, std::span<const Integer> moduli);

/// Cokernel of the induced rows of a table inside (+)_j Z/h1_order_j.
AbelianGroup h1_from_table(const BoundaryTable& table);

/// H1 of the rational blow-down. Throws SpanningError ("generators do not span H2")
/// when chain members and extras fail to span the lattice.
AbelianGroup h1_blowdown(const SurfaceState& state, std::span<const LinearChain> chains,
                         std::span<const std::string> extra_classes);

struct MembershipResult {
  bool member = false;
  /// One coefficient per table row, each reduced modulo the order of its row.
  std::vector<Integer> witness;
};

/// Whether target lies in the subgroup generated by the induced rows. Targets are
/// reduced mod each h1_order first. Throws ValidationError on a length mismatch.
MembershipResult membership(const BoundaryTable& table, std::span<const Integer> target);

/// Solvability of sum_i a_i rows_i = target over the prime field F_p. Every modulus
/// must be divisible by p so reduction is a homomorphism; otherwise DomainError.
bool solvable_mod_prime(const BoundaryTable& table, std::span<const Integer> target, int prime);

/// Exhaustive closure of the subgroup generated by a set of elements of (+)_j Z/m_j.
class SubgroupClosure {
 public:
  SubgroupClosure(std::vector<std::int64_t> moduli, std::vector<bool> members, std::uint64_t size);

  std::uint64_t size() const { return size_; }
  std::uint64_t group_order() const { return members_.size(); }
  std::uint64_t index() const { return group_order() / size_; }
  bool contains(std::span<const Integer> element) const;

 private:
  std::vector<std::int64_t> moduli_;
  std::vector<bool> members_;
  std::uint64_t size_;
};

inline constexpr std::uint64_t kDefaultOracleBound = 10'000'000;

/// Breadth-first closure; throws OracleUnavailable when prod(moduli) exceeds bound.
SubgroupClosure subgroup_closure_oracle(std::span<const std::vector<Integer>> rows, std::span<const Integer> moduli,
                                        std::uint64_t bound = kDefaultOracleBound);

struct ChainGain {
  std::string chain;
  std::size_t length = 0;
  int filling_b2 = 0;
  long long gain = 0;
};

/// Topological bookkeeping of the surgery, assuming b1 = 0 and p_g = q = 0 for the
/// result (stated in assumption).
struct InvariantReport {
  long long chi_top_ambient = 0;
  long long chi_top = 0;
  long long k_squared = 0;
  long long b2 = 0;
  std::vector<ChainGain> gains;
  std::string assumption;
};

InvariantReport numerical_invariants(const SurfaceState& state, std::span<const LinearChain> chains);

/// A numerical Campedelli surface has at most 9 torsion classes; returns a warning
/// message when the group is larger, std::nullopt otherwise.
std::optional<std::string> campedelli_lint(const AbelianGroup& group);

}  // namespace blowdown
