#pragma once

#include "blowdown/integer.hpp"

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace blowdown {

/// Name of one generator of H2, e.g. "H", "E7" or "e16".
struct BasisSymbol {
  std::string name;

  BasisSymbol() = default;
  explicit BasisSymbol(std::string n) : name(std::move(n)) {}

  auto operator<=>(const BasisSymbol&) const = default;
};

/// Integer combination of basis symbols. Absent symbols have coefficient zero and
/// zero coefficients are never stored, so equality is coordinate equality.
class LatticeClass {
 public:
  LatticeClass() = default;

  static LatticeClass generator(const BasisSymbol& s, Integer coefficient = 1);

  /// Reads expressions such as "3H-E1-2e1+e17". Symbols are [A-Za-z_][A-Za-z0-9_]*.
  static LatticeClass parse(std::string_view text);

  const Integer& coefficient(const BasisSymbol& s) const;
  void set(const BasisSymbol& s, Integer value);
  void add(const BasisSymbol& s, const Integer& delta);

  const std::map<BasisSymbol, Integer>& terms() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }

  LatticeClass& operator+=(const LatticeClass& other);
  LatticeClass& operator-=(const LatticeClass& other);
  friend LatticeClass operator+(LatticeClass a, const LatticeClass& b) { return a += b; }
  friend LatticeClass operator-(LatticeClass a, const LatticeClass& b) { return a -= b; }
  friend LatticeClass operator*(const Integer& k, const LatticeClass& a);

  bool operator==(const LatticeClass&) const = default;

 private:
  std::map<BasisSymbol, Integer> coords_;
};

/// H2 of P^2 blown up N times: the first symbol squares to +1, every other to -1.
class IntersectionLattice {
 public:
  IntersectionLattice() = default;
  /// Throws ValidationError on an empty basis or a repeated symbol.
  explicit IntersectionLattice(std::vector<BasisSymbol> basis);

  const std::vector<BasisSymbol>& basis() const { return basis_; }
  std::size_t rank() const { return basis_.size(); }
  const BasisSymbol& line() const { return basis_.front(); }
  bool contains(const BasisSymbol& s) const { return index_.contains(s); }
  std::size_t index_of(const BasisSymbol& s) const;

  /// Same lattice with one more exceptional generator appended.
  IntersectionLattice extended(const BasisSymbol& s) const;

  /// Throws ValidationError naming the first symbol of x foreign to this lattice.
  void validate(const LatticeClass& x) const;

  /// Coordinates in basis order.
  std::vector<Integer> coordinates(const LatticeClass& x) const;

  /// Human-readable form in basis order, e.g. "3H-E1-2e1". Zero prints as "0".
  std::string format(const LatticeClass& x) const;

  bool operator==(const IntersectionLattice& other) const { return basis_ == other.basis_; }

 private:
  std::vector<BasisSymbol> basis_;
  std::map<BasisSymbol, std::size_t> index_;
};

/// Intersection pairing diag(+1, -1, ..., -1) extended bilinearly.
Integer pair(const IntersectionLattice& lattice, const LatticeClass& x, const LatticeClass& y);

inline Integer self_intersection(const IntersectionLattice& lattice, const LatticeClass& x) {
  return pair(lattice, x, x);
}

}  // namespace blowdown
