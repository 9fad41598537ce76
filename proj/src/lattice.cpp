#include "blowdown/lattice.hpp"

#include "blowdown/error.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace blowdown {

Integer parse_integer(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw ParseError("not an integer: '" + std::string(text) + "'");
  Integer value = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') throw ParseError("not an integer: '" + std::string(text) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? Integer(-value) : value;
}

namespace {
const Integer kZero = 0;

bool is_symbol_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_symbol_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
}  // namespace

LatticeClass LatticeClass::generator(const BasisSymbol& s, Integer coefficient) {
  LatticeClass c;
  c.set(s, std::move(coefficient));
  return c;
}

LatticeClass LatticeClass::parse(std::string_view text) {
  LatticeClass out;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) {
    throw ValidationError("cannot parse class '" + std::string(text) + "' at offset " +
                          std::to_string(i) + ": " + why);
  };
  skip_space();
  if (i < text.size() && text[i] == '0' && text.find_first_not_of("0 ") == std::string_view::npos) {
    return out;
  }
  bool first = true;
  while (true) {
    skip_space();
    if (i == text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip_space();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    std::size_t digits_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    Integer coefficient = 1;
    if (i > digits_begin) coefficient = parse_integer(text.substr(digits_begin, i - digits_begin));
    skip_space();
    if (i == text.size() || !is_symbol_start(text[i])) fail("expected a basis symbol");
    std::size_t sym_begin = i;
    while (i < text.size() && is_symbol_char(text[i])) ++i;
    out.add(BasisSymbol(std::string(text.substr(sym_begin, i - sym_begin))), sign * coefficient);
    first = false;
  }
  if (first) fail("empty expression");
  return out;
}

const Integer& LatticeClass::coefficient(const BasisSymbol& s) const {
  auto it = coords_.find(s);
  return it == coords_.end() ? kZero : it->second;
}

void LatticeClass::set(const BasisSymbol& s, Integer value) {
  if (value == 0) {
    coords_.erase(s);
  } else {
    coords_[s] = std::move(value);
  }
}

void LatticeClass::add(const BasisSymbol& s, const Integer& delta) {
  if (delta == 0) return;
  set(s, coefficient(s) + delta);
}

LatticeClass& LatticeClass::operator+=(const LatticeClass& other) {
  for (const auto& [s, v] : other.coords_) add(s, v);
  return *this;
}

LatticeClass& LatticeClass::operator-=(const LatticeClass& other) {
  for (const auto& [s, v] : other.coords_) add(s, -v);
  return *this;
}

LatticeClass operator*(const Integer& k, const LatticeClass& a) {
  LatticeClass out;
  if (k == 0) return out;
  for (const auto& [s, v] : a.coords_) out.coords_[s] = k * v;
  return out;
}

IntersectionLattice::IntersectionLattice(std::vector<BasisSymbol> basis) : basis_(std::move(basis)) {
  if (basis_.empty()) throw ValidationError("lattice basis is empty");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i].name.empty()) throw ValidationError("empty basis symbol at position " + std::to_string(i));
    if (!index_.emplace(basis_[i], i).second) {
      throw ValidationError("duplicate basis symbol '" + basis_[i].name + "'");
    }
  }
}

std::size_t IntersectionLattice::index_of(const BasisSymbol& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) throw ValidationError("unknown basis symbol '" + s.name + "'");
  return it->second;
}

IntersectionLattice IntersectionLattice::extended(const BasisSymbol& s) const {
  if (contains(s)) throw ValidationError("duplicate basis symbol '" + s.name + "'");
  auto basis = basis_;
  basis.push_back(s);
  return IntersectionLattice(std::move(basis));
}

void IntersectionLattice::validate(const LatticeClass& x) const {
  for (const auto& [s, v] : x.terms()) {
    if (!contains(s)) throw ValidationError("unknown basis symbol '" + s.name + "'");
  }
}

std::vector<Integer> IntersectionLattice::coordinates(const LatticeClass& x) const {
  validate(x);
  std::vector<Integer> out(rank());
  for (const auto& [s, v] : x.terms()) out[index_.at(s)] = v;
  return out;
}

std::string IntersectionLattice::format(const LatticeClass& x) const {
  const auto coords = coordinates(x);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const Integer& c = coords[i];
    if (c == 0) continue;
    if (c < 0) {
      os << '-';
    } else if (!first) {
      os << '+';
    }
    const Integer magnitude = abs_value(c);
    if (magnitude != 1) os << magnitude;
    os << basis_[i].name;
    first = false;
  }
  return first ? std::string("0") : os.str();
}

Integer pair(const IntersectionLattice& lattice, const LatticeClass& x, const LatticeClass& y) {
  lattice.validate(x);
  lattice.validate(y);
  const LatticeClass& small = x.terms().size() <= y.terms().size() ? x : y;
  const LatticeClass& large = &small == &x ? y : x;
  Integer total = 0;
  for (const auto& [s, v] : small.terms()) {
    const Integer& w = large.coefficient(s);
    if (w == 0) continue;
    if (s == lattice.line()) {
      total += v * w;
    } else {
      total -= v * w;
    }
  }
  return total;
}

}  // namespace blowdown
