#pragma once

#include "blowdown/integer.hpp"
#include "blowdown/lattice.hpp"

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace blowdown {

/// A curve passing through the blown-up point with the given multiplicity.
struct Incidence {
  std::string curve;
  Integer multiplicity;

  bool operator==(const Incidence&) const = default;
};

struct BlowUpStep {
  BasisSymbol symbol;
  std::vector<Incidence> incidences;

  bool operator==(const BlowUpStep&) const = default;
};

/// Ambient rational surface: its H2 lattice, named curve classes and blow-up history.
/// Curves keep insertion order so reports are reproducible.
class SurfaceState {
 public:
  SurfaceState() = default;
  explicit SurfaceState(IntersectionLattice lattice);

  /// Throws ValidationError on a duplicate name or a class foreign to the lattice.
  void add_curve(std::string name, LatticeClass cls);

  const IntersectionLattice& lattice() const { return lattice_; }
  const std::vector<BlowUpStep>& history() const { return history_; }
  const std::vector<std::pair<std::string, LatticeClass>>& curves() const { return curves_; }

  bool has_curve(const std::string& name) const { return index_.contains(name); }
  /// Throws ValidationError naming the curve when it is absent.
  const LatticeClass& curve(const std::string& name) const;

  Integer pair(const LatticeClass& x, const LatticeClass& y) const {
    return blowdown::pair(lattice_, x, y);
  }

  bool operator==(const SurfaceState& other) const {
    return lattice_ == other.lattice_ && curves_ == other.curves_ && history_ == other.history_;
  }

 private:
  friend SurfaceState blow_up(const SurfaceState&, const BasisSymbol&, std::span<const Incidence>);

  IntersectionLattice lattice_;
  std::vector<std::pair<std::string, LatticeClass>> curves_;
  std::map<std::string, std::size_t> index_;
  std::vector<BlowUpStep> history_;
};

/// Blows up one point. The lattice gains new_symbol (square -1), each incident curve c
/// with multiplicity m becomes c - m*new_symbol, and the exceptional curve itself is
/// registered under the name new_symbol.name with class new_symbol.
SurfaceState blow_up(const SurfaceState& state, const BasisSymbol& new_symbol,
                     std::span<const Incidence> incidences);

/// Applies the steps in order starting from initial.
SurfaceState replay(SurfaceState initial, std::span<const BlowUpStep> steps);

}  // namespace blowdown
