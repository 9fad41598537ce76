#include "support/oracles.hpp"

#include "blowdown/blowdown.hpp"
#include "blowdown/error.hpp"
#include "blowdown/fixture.hpp"
#include "blowdown/snf.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace blowdown;

namespace {

const char* kSmall = R"({
  "name": "small",
  "basis": ["H", "E1", "E2", "E3", "e1"],
  "initial_curves": {
    "a": {"E1": 1, "E2": -1},
    "b": {"E2": 1, "E3": -1},
    "L": {"H": 1, "E1": -1},
    "E3": {"E3": 1}
  },
  "blowup_program": [{"symbol": "e1", "incidences": [["L", 1]]}],
  "chains": [{"name": "c", "curves": ["a", "b"], "weights": [2, 2], "filling": {"kind": "custom", "h1_order": 3}}],
  "extra_classes": ["L", "E3", "e1"]
})";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  if (pos != std::string::npos) text.replace(pos, from.size(), to);
  return text;
}

template <class E>
std::string error_of(const std::string& text) {
  try {
    load_fixture(text);
  } catch (const E& e) {
    return e.what();
  } catch (const std::exception& e) {
    return std::string("wrong exception type: ") + e.what();
  }
  return "no error";
}

bool mentions(const std::string& message, const std::string& what) { return message.find(what) != std::string::npos; }

}  // namespace

TEST(Fixture, SmallDocumentLoads) {
  const auto doc = load_fixture(kSmall);
  EXPECT_EQ(doc.name, "small");
  EXPECT_EQ(doc.basis.size(), 5u);
  const auto pf = prepare(doc);
  EXPECT_EQ(pf.state.curve("L"), LatticeClass::parse("H-E1-e1"));
  ASSERT_EQ(pf.chains.size(), 1u);
  EXPECT_EQ(pf.chains[0].filling.kind, FillingKind::custom);
  EXPECT_EQ(pf.chains[0].filling.h1_order, 3);
  EXPECT_EQ(pf.chains[0].filling.b2, 0);
}

TEST(Fixture, BundledExample1Shape) {
  const auto doc = load_fixture_by_reference("example1");
  EXPECT_EQ(doc.basis.size(), 28u);
  EXPECT_EQ(doc.basis.front().name, "H");
  EXPECT_EQ(doc.chains.size(), 4u);
  EXPECT_EQ(doc.extra_classes.size(), 12u);
  ASSERT_TRUE(doc.blowup_program.has_value());
  EXPECT_EQ(doc.blowup_program->size(), 18u);
}

TEST(Fixture, BundledNames) {
  const auto names = bundled_fixture_names();
  for (const char* n : {"example1", "example1_resolved", "example2"})
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
  EXPECT_FALSE(bundled_fixture("nope"));
  EXPECT_THROW(load_fixture_by_reference("no-such-fixture"), IoError);
}

TEST(Fixture, FilePathIsAccepted) {
  const auto path = std::filesystem::temp_directory_path() / "blowdown_fixture_test_small.json";
  {
    std::ofstream out(path);
    out << kSmall;
  }
  EXPECT_EQ(load_fixture_by_reference(path.string()).name, "small");
  std::filesystem::remove(path);
}

TEST(Fixture, UndefinedCurveIsNamed) {
  const auto msg = error_of<ValidationError>(replace(kSmall, R"(["a", "b"])", R"(["a", "u_99"])"));
  EXPECT_TRUE(mentions(msg, "u_99")) << msg;
  const auto extra = error_of<ValidationError>(replace(kSmall, R"(["L", "E3", "e1"])", R"(["L", "u_99"])"));
  EXPECT_TRUE(mentions(extra, "u_99")) << extra;
}

TEST(Fixture, ZeroWeightIsRejected) {
  const auto msg = error_of<ValidationError>(replace(kSmall, R"("weights": [2, 2])", R"("weights": [2, 0])"));
  EXPECT_TRUE(mentions(msg, "weight < 2")) << msg;
}

TEST(Fixture, ChainWeightMismatch) {
  const auto msg = error_of<ValidationError>(replace(kSmall, R"("weights": [2, 2])", R"("weights": [2, 2, 2])"));
  EXPECT_TRUE(mentions(msg, "chain/weight mismatch")) << msg;
  const auto both = error_of<ValidationError>(replace(kSmall, R"("weights": [2, 2])", R"("weights": [2, 2], "pq": [2, 1])"));
  EXPECT_TRUE(mentions(both, "chain/weight mismatch")) << both;
}

TEST(Fixture, UnknownKeysAndSymbols) {
  EXPECT_TRUE(mentions(error_of<ValidationError>(replace(kSmall, R"("name": "small")", R"("name": "small", "extra": 1)")),
                       "unknown key 'extra'"));
  EXPECT_TRUE(mentions(error_of<ValidationError>(replace(kSmall, R"("kind": "custom")", R"("kind": "custom", "q": 1)")),
                       "unknown key 'q'"));
  EXPECT_TRUE(mentions(error_of<ValidationError>(replace(kSmall, R"({"E1": 1, "E2": -1})", R"({"E1": 1, "E7": -1})")),
                       "E7"));
  EXPECT_TRUE(mentions(error_of<ValidationError>(replace(kSmall, R"("kind": "custom")", R"("kind": "sphere")")),
                       "sphere"));
}

TEST(Fixture, DuplicatesAreRejected) {
  EXPECT_TRUE(mentions(error_of<ParseError>(replace(kSmall, R"("L": {"H": 1, "E1": -1},)", R"("a": {"H": 1},)")),
                       "duplicate key 'a'"));
  EXPECT_TRUE(mentions(error_of<ValidationError>(replace(kSmall, R"(["H", "E1",)", R"(["H", "H", "E1",)")), "H"));
  EXPECT_TRUE(mentions(error_of<ValidationError>(replace(kSmall, R"(["L", "E3", "e1"])", R"(["L", "L"])")), "L"));
}

TEST(Fixture, ParseErrorsCarryPosition) {
  const auto msg = error_of<ParseError>("{\n  \"name\": \"x\",\n  \"basis\": [\"H\" \"E1\"]\n}");
  EXPECT_TRUE(mentions(msg, "line 3")) << msg;
  EXPECT_TRUE(mentions(error_of<ParseError>(replace(kSmall, R"("E1": 1, "E2": -1)", R"("E1": 1.5, "E2": -1)")),
                       "non-integer"));
}

TEST(Fixture, ArbitraryPrecisionIntegers) {
  const auto doc = load_fixture(
      replace(kSmall, R"("E3": {"E3": 1})", R"("E3": {"E3": 1}, "big": {"E3": 123456789012345678901234567890})"));
  EXPECT_EQ(doc.initial_curves.back().second.coefficient(BasisSymbol("E3")), Integer("123456789012345678901234567890"));
}

TEST(Fixture, RationalBallNeedsSquareBoundary) {
  const auto msg = error_of<ValidationError>(replace(kSmall, R"({"kind": "custom", "h1_order": 3})", R"({"kind": "rational_ball"})"));
  EXPECT_TRUE(mentions(msg, "det = p^2")) << msg;
  const auto wrong = error_of<ValidationError>(replace(kSmall, R"("h1_order": 3)", R"("h1_order": 2)"));
  EXPECT_TRUE(mentions(wrong, "does not divide")) << wrong;
}

TEST(Fixture, ProgramSymbolsMustBeListedInOrder) {
  const auto msg = error_of<ValidationError>(replace(kSmall, R"("symbol": "e1")", R"("symbol": "e2")"));
  EXPECT_TRUE(mentions(msg, "e2")) << msg;
}

TEST(Fixture, EmptyProgramLeavesCurvesUnchanged) {
  auto doc = load_fixture(kSmall);
  doc.blowup_program = std::vector<BlowUpStep>{};
  doc.basis.pop_back();
  doc.extra_classes = {"L", "E3"};
  const auto state = resolve_curves(doc);
  for (const auto& [name, cls] : doc.initial_curves) EXPECT_EQ(state.curve(name), cls);
}

TEST(Fixture, SerializationRoundTrip) {
  for (const auto& name : bundled_fixture_names()) {
    const auto doc = load_fixture_by_reference(name);
    const auto text = serialize_fixture(doc);
    EXPECT_EQ(load_fixture(text), doc) << name;
    EXPECT_EQ(serialize_fixture(load_fixture(text)), text) << name;
  }
}

TEST(Fixture, BundledFixturesAreValid) {
  for (const auto& name : bundled_fixture_names()) {
    const auto pf = prepare(load_fixture_by_reference(name));
    for (const auto& chain : pf.chains) EXPECT_TRUE(validate_chain(pf.state, chain).ok()) << name << " " << chain.name;
    EXPECT_TRUE(check_disjoint(pf.state, pf.chains).ok()) << name;
    std::vector<LatticeClass> classes;
    for (const auto& chain : pf.chains)
      for (const auto& c : chain.curve_names) classes.push_back(pf.state.curve(c));
    for (const auto& c : pf.doc.extra_classes) classes.push_back(pf.state.curve(c));
    EXPECT_TRUE(spans(pf.state.lattice(), classes).spans) << name;
  }
}

TEST(Fixture, ProgramAndResolvedFormsAgree) {
  const auto program = prepare(load_fixture_by_reference("example1"));
  const auto resolved = prepare(load_fixture_by_reference("example1_resolved"));
  EXPECT_EQ(program.state.lattice(), resolved.state.lattice());
  for (const auto& [name, cls] : resolved.state.curves()) EXPECT_EQ(program.state.curve(name), cls) << name;
  EXPECT_EQ(program.chains, resolved.chains);
}

TEST(Fixture, LineComponentIsForcedByConstraints) {
  const auto pf = prepare(load_fixture_by_reference("example1"));
  const std::vector<std::string> chain_classes{
      "e15-e16", "e14-e15", "E7-e3-e4-e5-e9-e10-e11-e12-e13-e14", "E4-E7", "E1-E4", "H-E1-E2-E3", "E2-E5", "E5-E8",
      "E8-e6-e7-e8", "e17-e18", "e2-e17", "F2-2e2-e4-e7-e17-e18", "e4-e11", "e11-e12", "e12-e13", "e13-e14-e15-e16",
      "F1-2e1-e3-e6", "e3-e9", "e9-e10", "B-e5-e8"};
  const auto found = oracle::line_component_candidates(pf.state.lattice(), chain_classes);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0], LatticeClass::parse("H-E3-E6-E9"));
  EXPECT_EQ(pf.state.curve("A"), found[0]);
}
