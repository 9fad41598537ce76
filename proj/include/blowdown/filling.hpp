#pragma once

#include "blowdown/integer.hpp"

#include <string>
#include <string_view>

namespace blowdown {

enum class FillingKind { rational_ball, milnor_fiber, custom };

std::string_view to_string(FillingKind kind);
/// Throws ValidationError for anything but "rational_ball", "milnor_fiber" or "custom".
FillingKind parse_filling_kind(std::string_view text);

/// What caps a chain's boundary lens space after the surgery. The boundary generator
/// maps to gen_image in H1(filling) = Z/h1_order.
struct Filling {
  FillingKind kind = FillingKind::rational_ball;
  Integer h1_order = 1;
  int b2 = 0;
  Integer gen_image = 1;

  /// B_{p,q}: H1 = Z/p, b2 = 0, generator maps to generator.
  static Filling rational_ball(const Integer& p);
  static Filling milnor_fiber(const Integer& h1_order, int b2 = 1, const Integer& gen_image = 1);

  /// Throws ConfigurationError unless h1_order is positive and divides det.
  void check_compatible(const Integer& det) const;

  bool operator==(const Filling&) const = default;
};

/// i_*: Z/det -> Z/h1_order, r |-> gen_image * r. Throws ConfigurationError when
/// h1_order does not divide det.
Integer induced_image(const Filling& filling, const Integer& residue, const Integer& det);

}  // namespace blowdown
