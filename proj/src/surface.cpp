#include "blowdown/surface.hpp"

#include "blowdown/error.hpp"

#include <set>

namespace blowdown {

SurfaceState::SurfaceState(IntersectionLattice lattice) : lattice_(std::move(lattice)) {}

void SurfaceState::add_curve(std::string name, LatticeClass cls) {
  if (name.empty()) throw ValidationError("empty curve name");
  if (index_.contains(name)) throw ValidationError("duplicate curve name '" + name + "'");
  try {
    lattice_.validate(cls);
  } catch (const ValidationError& e) {
    throw ValidationError("curve '" + name + "': " + e.what());
  }
  index_.emplace(name, curves_.size());
  curves_.emplace_back(std::move(name), std::move(cls));
}

const LatticeClass& SurfaceState::curve(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ValidationError("unknown curve '" + name + "'");
  return curves_[it->second].second;
}

SurfaceState blow_up(const SurfaceState& state, const BasisSymbol& new_symbol,
                     std::span<const Incidence> incidences) {
  if (state.lattice().contains(new_symbol)) {
    throw ValidationError("duplicate basis symbol '" + new_symbol.name + "'");
  }
  if (state.has_curve(new_symbol.name)) {
    throw ValidationError("blow-up symbol '" + new_symbol.name + "' collides with an existing curve name");
  }
  std::set<std::string> seen;
  for (const auto& inc : incidences) {
    if (!state.has_curve(inc.curve)) {
      throw ValidationError("blow-up " + new_symbol.name + ": unknown curve '" + inc.curve + "'");
    }
    if (inc.multiplicity < 1) {
      throw ValidationError("blow-up " + new_symbol.name + ": multiplicity of '" + inc.curve +
                            "' must be a positive integer");
    }
    if (!seen.insert(inc.curve).second) {
      throw ValidationError("blow-up " + new_symbol.name + ": curve '" + inc.curve + "' listed twice");
    }
  }

  SurfaceState next = state;
  next.lattice_ = state.lattice().extended(new_symbol);
  for (const auto& inc : incidences) {
    auto& cls = next.curves_[next.index_.at(inc.curve)].second;
    cls.add(new_symbol, -inc.multiplicity);
  }
  next.index_.emplace(new_symbol.name, next.curves_.size());
  next.curves_.emplace_back(new_symbol.name, LatticeClass::generator(new_symbol));
  next.history_.push_back(BlowUpStep{new_symbol, {incidences.begin(), incidences.end()}});
  return next;
}

SurfaceState replay(SurfaceState initial, std::span<const BlowUpStep> steps) {
  for (const auto& step : steps) initial = blow_up(initial, step.symbol, step.incidences);
  return initial;
}

}  // namespace blowdown
