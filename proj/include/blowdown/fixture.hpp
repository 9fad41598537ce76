#pragma once

#include "blowdown/chain.hpp"
#include "blowdown/filling.hpp"
#include "blowdown/integer.hpp"
#include "blowdown/json_value.hpp"
#include "blowdown/lattice.hpp"
#include "blowdown/surface.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace blowdown {

struct FillingSpec {
  FillingKind kind = FillingKind::rational_ball;
  std::optional<Integer> h1_order;
  std::optional<int> b2;
  std::optional<Integer> gen_image;

  bool operator==(const FillingSpec&) const = default;
};

struct ChainSpec {
  std::string name;
  std::vector<std::string> curves;
  std::optional<std::vector<Integer>> weights;
  std::optional<std::pair<Integer, Integer>> pq;
  FillingSpec filling;

  bool operator==(const ChainSpec&) const = default;
};

struct TableRowExpectation {
  std::string cls;
  std::vector<Integer> boundary;
  std::vector<Integer> induced;

  bool operator==(const TableRowExpectation&) const = default;
};

struct MembershipExpectation {
  std::vector<Integer> target;
  bool member = false;

  bool operator==(const MembershipExpectation&) const = default;
};

/// Values a fixture claims; each one is checked against the computation, never assumed.
struct Expectations {
  std::optional<std::vector<Integer>> h1;
  std::optional<Integer> k_squared;
  std::optional<Integer> chi_top;
  std::optional<Integer> b2;
  std::optional<bool> spans;
  std::vector<TableRowExpectation> boundary_table;
  std::vector<MembershipExpectation> membership;

  bool operator==(const Expectations&) const = default;
};

/// A surface description: lattice basis, initial curves, an optional blow-up program,
/// the chains to blow down and the extra classes completing a spanning set.
struct FixtureDocument {
  std::string name;
  std::vector<BasisSymbol> basis;
  std::vector<std::pair<std::string, LatticeClass>> initial_curves;
  std::optional<std::vector<BlowUpStep>> blowup_program;
  std::vector<ChainSpec> chains;
  std::vector<std::string> extra_classes;
  std::optional<Expectations> expectations;

  bool operator==(const FixtureDocument&) const = default;
};

/// Parses and eagerly validates a fixture: unknown keys, unknown basis symbols,
/// duplicate names, weights below 2, chain/weight mismatches and unresolvable curve
/// names all throw (ParseError or ValidationError naming the offending element).
FixtureDocument load_fixture(std::string_view text);
FixtureDocument load_fixture(std::istream& in);

JsonValue fixture_to_json(const FixtureDocument& doc);
std::string serialize_fixture(const FixtureDocument& doc);

/// Installs the initial curves and replays the blow-up program.
SurfaceState resolve_curves(const FixtureDocument& doc);

/// Weights from `weights` or `pq` and fillings with their defaults filled in.
std::vector<LinearChain> build_chains(const FixtureDocument& doc, const SurfaceState& state);

/// Everything a computation needs from one fixture.
struct PreparedFixture {
  FixtureDocument doc;
  SurfaceState state;
  std::vector<LinearChain> chains;
};

PreparedFixture prepare(FixtureDocument doc);

/// Names of the fixtures compiled into the library.
std::vector<std::string> bundled_fixture_names();
/// Text of a bundled fixture, or std::nullopt.
std::optional<std::string_view> bundled_fixture(std::string_view name);

/// A readable file path wins over a bundled name. Throws IoError when neither
/// exists.
FixtureDocument load_fixture_by_reference(const std::string& reference);

}  // namespace blowdown
