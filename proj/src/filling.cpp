#include "blowdown/filling.hpp"

#include "blowdown/error.hpp"

namespace blowdown {

std::string_view to_string(FillingKind kind) {
  switch (kind) {
    case FillingKind::rational_ball:
      return "rational_ball";
    case FillingKind::milnor_fiber:
      return "milnor_fiber";
    case FillingKind::custom:
      return "custom";
  }
  return "custom";
}

FillingKind parse_filling_kind(std::string_view text) {
  if (text == "rational_ball") return FillingKind::rational_ball;
  if (text == "milnor_fiber") return FillingKind::milnor_fiber;
  if (text == "custom") return FillingKind::custom;
  throw ValidationError("unknown filling kind '" + std::string(text) + "'");
}

Filling Filling::rational_ball(const Integer& p) {
  if (p < 1) throw DomainError("rational ball needs p >= 1");
  return Filling{FillingKind::rational_ball, p, 0, 1};
}

Filling Filling::milnor_fiber(const Integer& h1_order, int b2, const Integer& gen_image) {
  return Filling{FillingKind::milnor_fiber, h1_order, b2, gen_image};
}

void Filling::check_compatible(const Integer& det) const {
  if (h1_order < 1) throw ConfigurationError("filling h1_order must be positive, got " + to_string(h1_order));
  if (b2 < 0) throw ConfigurationError("filling b2 must be nonnegative");
  if (det % h1_order != 0) {
    throw ConfigurationError("filling h1_order " + blowdown::to_string(h1_order) +
                             " does not divide boundary order " + blowdown::to_string(det));
  }
}

Integer induced_image(const Filling& filling, const Integer& residue, const Integer& det) {
  filling.check_compatible(det);
  return mod_floor(filling.gen_image * residue, filling.h1_order);
}

}  // namespace blowdown
