#include "blowdown/cli.hpp"

#include "blowdown/blowdown.hpp"
#include "blowdown/chain.hpp"
#include "blowdown/error.hpp"
#include "blowdown/fixture.hpp"
#include "blowdown/snf.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>

namespace blowdown::cli {

const char* to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::warn:
      return "warn";
    default:
      return "fail";
  }
}

JsonValue RunReport::to_json() const {
  JsonValue j;
  j.set("command", command);
  j.set("fixture", fixture.empty() ? JsonValue(nullptr) : JsonValue(fixture));
  j.set("status", to_string(status));
  j.set("exit_code", exit_code);
  j.set("payload", payload);
  JsonValue::Array d;
  for (const auto& diff : diffs) {
    JsonValue e;
    e.set("field", diff.field);
    e.set("expected", diff.expected);
    e.set("actual", diff.actual);
    d.push_back(std::move(e));
  }
  j.set("diffs", std::move(d));
  JsonValue::Array w(warnings.begin(), warnings.end());
  j.set("warnings", std::move(w));
  j.set("error", error.empty() ? JsonValue(nullptr) : JsonValue(error));
  return j;
}

namespace {

std::string tuple_text(std::span<const Integer> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + blowdown::to_string(v[i]);
  return s + ")";
}

std::string list_text(std::span<const Integer> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + blowdown::to_string(v[i]);
  return s + "]";
}

JsonValue int_array(std::span<const Integer> v) { return JsonValue::Array(v.begin(), v.end()); }

/// Left-aligned columns separated by two spaces; trailing blanks trimmed.
void print_table(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
}

std::string filling_text(const Filling& f) {
  std::string s(blowdown::to_string(f.kind));
  s += " H1=Z/" + blowdown::to_string(f.h1_order);
  if (f.b2) s += " b2=" + std::to_string(f.b2);
  return s;
}

void expect(RunReport& report, const std::string& field, const std::string& expected, const std::string& actual) {
  if (expected != actual) report.diffs.push_back({field, expected, actual});
}

std::uint64_t oracle_bound() {
  const char* env = std::getenv("BLOWDOWN_ORACLE_BOUND");
  if (!env || !*env) return kDefaultOracleBound;
  std::uint64_t v = 0;
  const std::string_view s(env);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw CLI::ValidationError("BLOWDOWN_ORACLE_BOUND must be a decimal integer, got '" + std::string(s) + "'");
  }
  return v;
}

struct Checked {
  PreparedFixture fixture;
  std::vector<ChainReport> chain_reports;
  DisjointReport disjoint;
  SpanningReport spanning;
  std::size_t spanning_classes = 0;

  bool chains_ok() const {
    return disjoint.ok() && std::all_of(chain_reports.begin(), chain_reports.end(), [](const auto& r) { return r.ok(); });
  }
};

Checked load_checked(const std::string& reference) {
  Checked c{prepare(load_fixture_by_reference(reference)), {}, {}, {}, 0};
  const auto& pf = c.fixture;
  for (const auto& chain : pf.chains) c.chain_reports.push_back(validate_chain(pf.state, chain));
  c.disjoint = check_disjoint(pf.state, pf.chains);
  std::vector<LatticeClass> classes;
  for (const auto& chain : pf.chains)
    for (const auto& name : chain.curve_names) classes.push_back(pf.state.curve(name));
  for (const auto& name : pf.doc.extra_classes) classes.push_back(pf.state.curve(name));
  c.spanning_classes = classes.size();
  c.spanning = spans(pf.state.lattice(), classes);
  return c;
}

std::string first_violation(const Checked& c) {
  for (const auto& r : c.chain_reports)
    if (!r.ok()) return "chain " + r.chain + ": " + r.violations.front().message;
  const auto& v = c.disjoint.violations.front();
  return "chains " + v.chain_a + " and " + v.chain_b + " meet: " + v.curve_a + "." + v.curve_b + " = " +
         blowdown::to_string(v.intersection);
}

/// Computations on a fixture need its chains to be well formed.
void require_valid_chains(const Checked& c) {
  if (!c.chains_ok()) throw ValidationError(first_violation(c));
}

const Expectations* expectations_of(const Checked& c) {
  return c.fixture.doc.expectations ? &*c.fixture.doc.expectations : nullptr;
}

// ---- validate --------------------------------------------------------------

void cmd_validate(const Checked& c, RunReport& report, bool json, std::ostream& out) {
  const auto& pf = c.fixture;
  JsonValue chains = JsonValue::Array{};
  std::vector<std::vector<std::string>> rows{{"chain", "curves", "weights", "det", "filling", "status"}};
  for (std::size_t i = 0; i < pf.chains.size(); ++i) {
    const auto& ch = pf.chains[i];
    const auto& rep = c.chain_reports[i];
    JsonValue j;
    j.set("name", ch.name);
    j.set("weights", int_array(ch.weights.values()));
    j.set("det", plumbing_det(ch.weights));
    JsonValue f;
    f.set("kind", std::string(blowdown::to_string(ch.filling.kind)));
    f.set("h1_order", ch.filling.h1_order);
    f.set("b2", ch.filling.b2);
    f.set("gen_image", ch.filling.gen_image);
    j.set("filling", std::move(f));
    JsonValue::Array v;
    for (const auto& viol : rep.violations) v.emplace_back(viol.message);
    j.set("violations", std::move(v));
    chains.as_array().push_back(std::move(j));
    rows.push_back({ch.name, std::to_string(ch.curve_names.size()), list_text(ch.weights.values()),
                    blowdown::to_string(plumbing_det(ch.weights)), filling_text(ch.filling),
                    rep.ok() ? "ok" : std::to_string(rep.violations.size()) + " violation(s)"});
  }
  JsonValue disjoint = JsonValue::Array{};
  for (const auto& v : c.disjoint.violations) {
    JsonValue j;
    j.set("chain_a", v.chain_a);
    j.set("curve_a", v.curve_a);
    j.set("chain_b", v.chain_b);
    j.set("curve_b", v.curve_b);
    j.set("intersection", v.intersection);
    disjoint.as_array().push_back(std::move(j));
  }
  JsonValue spanning;
  spanning.set("classes", c.spanning_classes);
  spanning.set("rank", c.spanning.rank);
  spanning.set("spans", c.spanning.spans);
  spanning.set("invariant_factors", int_array(c.spanning.invariant_factors));

  report.payload.set("chains", std::move(chains));
  report.payload.set("disjoint", std::move(disjoint));
  report.payload.set("spanning", std::move(spanning));

  if (const auto* e = expectations_of(c); e && e->spans) {
    expect(report, "spans", *e->spans ? "true" : "false", c.spanning.spans ? "true" : "false");
  }
  if (!c.chains_ok() || !c.spanning.spans) report.exit_code = kValidationFailure;

  if (json) return;
  out << "fixture " << pf.doc.name << ": " << pf.state.lattice().rank() << " basis symbols, " << pf.chains.size()
      << " chains, " << pf.doc.extra_classes.size() << " extra classes\n";
  print_table(out, rows);
  for (const auto& rep : c.chain_reports)
    for (const auto& v : rep.violations) out << "  " << rep.chain << ": " << v.message << '\n';
  out << "disjoint: " << (c.disjoint.ok() ? "ok" : std::to_string(c.disjoint.violations.size()) + " violation(s)")
      << '\n';
  for (const auto& v : c.disjoint.violations) {
    out << "  " << v.chain_a << "/" << v.curve_a << " . " << v.chain_b << "/" << v.curve_b << " = " << v.intersection
        << '\n';
  }
  const bool unimodular = std::all_of(c.spanning.invariant_factors.begin(), c.spanning.invariant_factors.end(),
                                      [](const Integer& d) { return d == 1; });
  out << "spanning: " << c.spanning_classes << " classes, rank " << c.spanning.rank << ", "
      << (unimodular ? "all invariant factors 1" : "invariant factors " + list_text(c.spanning.invariant_factors))
      << " -> " << (c.spanning.spans ? "spans" : "does not span") << '\n';
}

// ---- boundary-table --------------------------------------------------------

void cmd_boundary_table(const Checked& c, RunReport& report, bool json, std::ostream& out) {
  require_valid_chains(c);
  const auto& pf = c.fixture;
  const BoundaryTable table = boundary_table(pf.state, pf.chains, pf.doc.extra_classes);

  JsonValue chains = JsonValue::Array{};
  for (std::size_t j = 0; j < table.chain_names.size(); ++j) {
    JsonValue e;
    e.set("name", table.chain_names[j]);
    e.set("det", table.dets[j]);
    e.set("h1_order", table.h1_orders[j]);
    chains.as_array().push_back(std::move(e));
  }
  JsonValue rows = JsonValue::Array{};
  for (const auto& r : table.rows) {
    JsonValue e;
    e.set("class", r.name);
    e.set("formula", pf.state.lattice().format(r.cls));
    e.set("chain_member", r.chain_member);
    e.set("boundary", int_array(r.boundary));
    e.set("induced", int_array(r.induced));
    rows.as_array().push_back(std::move(e));
  }
  report.payload.set("chains", std::move(chains));
  report.payload.set("rows", std::move(rows));

  if (const auto* e = expectations_of(c)) {
    for (const auto& want : e->boundary_table) {
      auto it = std::find_if(table.rows.begin(), table.rows.end(), [&](const auto& r) { return r.name == want.cls; });
      if (it == table.rows.end()) {
        report.diffs.push_back({"boundary_table." + want.cls, tuple_text(want.boundary), "(absent)"});
        continue;
      }
      expect(report, "boundary_table." + want.cls + ".boundary", tuple_text(want.boundary), tuple_text(it->boundary));
      expect(report, "boundary_table." + want.cls + ".induced", tuple_text(want.induced), tuple_text(it->induced));
    }
  }
  if (json) return;

  out << "fixture " << pf.doc.name << '\n';
  for (std::size_t j = 0; j < table.chain_names.size(); ++j) {
    out << "  column " << j + 1 << ": " << table.chain_names[j] << "  boundary Z/" << table.dets[j] << " -> Z/"
        << table.h1_orders[j] << '\n';
  }
  std::vector<std::vector<std::string>> lines{{"class", "formula", "boundary", "", "image in H1"}};
  const std::vector<Integer> zeros(table.chain_names.size(), Integer(0));
  std::size_t members = 0;
  bool members_vanish = true;
  for (const auto& r : table.rows) {
    if (!r.chain_member) continue;
    ++members;
    members_vanish = members_vanish && r.boundary == zeros && r.induced == zeros;
  }
  // Chain members all vanish under the boundary map; one line stands for them.
  if (members && members_vanish) {
    lines.push_back({"chain curves", std::to_string(members) + " classes", tuple_text(zeros), "->", tuple_text(zeros)});
  }
  for (const auto& r : table.rows) {
    if (r.chain_member && members_vanish) continue;
    lines.push_back({r.name, pf.state.lattice().format(r.cls), tuple_text(r.boundary), "->", tuple_text(r.induced)});
  }
  print_table(out, lines);
}

// ---- h1 ------------------------------------------------------------------

void cmd_h1(const Checked& c, RunReport& report, bool json, std::ostream& out) {
  require_valid_chains(c);
  const auto& pf = c.fixture;
  const AbelianGroup group = h1_blowdown(pf.state, pf.chains, pf.doc.extra_classes);
  report.payload.set("group", group.to_string());
  report.payload.set("invariant_factors", int_array(group.invariant_factors));
  report.payload.set("order", group.order());

  const auto inv = numerical_invariants(pf.state, pf.chains);
  if (inv.k_squared == 2) {
    if (auto warning = campedelli_lint(group)) report.warnings.push_back(*warning);
  }
  if (const auto* e = expectations_of(c); e && e->h1) {
    expect(report, "h1", list_text(*e->h1), list_text(group.invariant_factors));
  }
  if (!json) out << "H1 = " << group.to_string() << '\n';
}

// ---- invariants ------------------------------------------------------------

void cmd_invariants(const Checked& c, RunReport& report, bool json, std::ostream& out) {
  require_valid_chains(c);
  const auto& pf = c.fixture;
  const InvariantReport inv = numerical_invariants(pf.state, pf.chains);
  report.payload.set("chi_top_ambient", inv.chi_top_ambient);
  JsonValue gains = JsonValue::Array{};
  for (const auto& g : inv.gains) {
    JsonValue e;
    e.set("chain", g.chain);
    e.set("length", g.length);
    e.set("filling_b2", g.filling_b2);
    e.set("gain", g.gain);
    gains.as_array().push_back(std::move(e));
  }
  report.payload.set("gains", std::move(gains));
  report.payload.set("chi_top", inv.chi_top);
  report.payload.set("K2", inv.k_squared);
  report.payload.set("b2", inv.b2);
  report.payload.set("assumption", inv.assumption);

  if (const auto* e = expectations_of(c)) {
    if (e->k_squared) expect(report, "K2", blowdown::to_string(*e->k_squared), std::to_string(inv.k_squared));
    if (e->chi_top) expect(report, "chi_top", blowdown::to_string(*e->chi_top), std::to_string(inv.chi_top));
    if (e->b2) expect(report, "b2", blowdown::to_string(*e->b2), std::to_string(inv.b2));
  }
  if (json) return;
  out << "fixture " << pf.doc.name << '\n';
  out << "chi_top before blow-down = " << inv.chi_top_ambient << '\n';
  std::vector<std::vector<std::string>> rows{{"chain", "length", "filling b2", "gain"}};
  for (const auto& g : inv.gains)
    rows.push_back({g.chain, std::to_string(g.length), std::to_string(g.filling_b2), std::to_string(g.gain)});
  print_table(out, rows);
  out << "chi_top = " << inv.chi_top << '\n';
  out << "K^2 = " << inv.k_squared << '\n';
  out << "b2 = " << inv.b2 << '\n';
  out << "assuming " << inv.assumption << '\n';
}

// ---- cf --------------------------------------------------------------------

Integer integer_argument(const std::string& text, const char* what) {
  try {
    return parse_integer(text);
  } catch (const Error&) {
    throw CLI::ValidationError(std::string(what) + " must be an integer, got '" + text + "'");
  }
}

void cmd_cf(const std::string& p_text, const std::string& q_text, RunReport& report, bool json, std::ostream& out) {
  const Integer p = integer_argument(p_text, "p");
  const Integer q = integer_argument(q_text, "q");
  const WeightList weights = cf_expand(p, q);
  const Rational r = cf_eval(weights);
  report.payload.set("p", p);
  report.payload.set("q", q);
  report.payload.set("numerator", r.num);
  report.payload.set("denominator", r.den);
  report.payload.set("weights", int_array(weights.values()));
  if (!json) out << r.num << "/" << r.den << " = " << list_text(weights.values()) << '\n';
}

// ---- membership ------------------------------------------------------------

std::vector<Integer> parse_target(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(integer_argument(item, "target entry"));
  if (out.empty()) throw CLI::ValidationError("target must be a comma-separated list of integers");
  return out;
}

/// Small primes dividing every modulus; reduction mod such a prime is a homomorphism
/// on the whole group.
std::vector<int> common_small_primes(std::span<const Integer> moduli) {
  Integer g = 0;
  for (const auto& m : moduli) g = gcd(g, m);
  std::vector<int> primes;
  for (int p = 2; p < 1000 && g > 1; ++p) {
    if (g % p != 0) continue;
    primes.push_back(p);
    while (g % p == 0) g /= p;
  }
  return primes;
}

void cmd_membership(const Checked& c, const std::string& target_text, RunReport& report, bool json,
                    std::ostream& out) {
  require_valid_chains(c);
  const auto& pf = c.fixture;
  const BoundaryTable table = boundary_table(pf.state, pf.chains, pf.doc.extra_classes);
  std::vector<Integer> target = parse_target(target_text);
  if (target.size() != table.h1_orders.size()) {
    throw ValidationError("target has " + std::to_string(target.size()) + " entries but the fixture has " +
                          std::to_string(table.h1_orders.size()) + " chains");
  }
  for (std::size_t j = 0; j < target.size(); ++j) target[j] = mod_floor(target[j], table.h1_orders[j]);

  const MembershipResult result = membership(table, target);
  report.payload.set("target", int_array(target));
  report.payload.set("member", result.member);
  report.payload.set("witness", result.member ? int_array(result.witness) : JsonValue(nullptr));

  // Independent cross-check by exhaustive closure when the group is small enough.
  std::vector<std::vector<Integer>> rows;
  for (const auto& r : table.rows) rows.push_back(r.induced);
  JsonValue oracle;
  std::string oracle_line;
  try {
    const SubgroupClosure closure = subgroup_closure_oracle(rows, table.h1_orders, oracle_bound());
    const bool agrees = closure.contains(target) == result.member;
    oracle.set("available", true);
    oracle.set("subgroup_size", closure.size());
    oracle.set("group_order", closure.group_order());
    oracle.set("agrees", agrees);
    if (!agrees) throw InternalError("membership: Smith normal form and subgroup closure disagree");
    oracle_line = "oracle: agrees (subgroup of order " + std::to_string(closure.size()) + ", index " +
                  std::to_string(closure.index()) + ")";
  } catch (const OracleUnavailable& e) {
    oracle.set("available", false);
    oracle.set("reason", e.what());
    oracle_line = std::string("oracle: unavailable (") + e.what() + ")";
  }
  report.payload.set("oracle", std::move(oracle));

  JsonValue parity = JsonValue::Array{};
  std::vector<std::string> parity_lines;
  for (int p : common_small_primes(table.h1_orders)) {
    const bool ok = solvable_mod_prime(table, target, p);
    JsonValue e;
    e.set("prime", p);
    e.set("solvable", ok);
    parity.as_array().push_back(std::move(e));
    if (!ok) parity_lines.push_back("mod " + std::to_string(p) + ": unsolvable");
  }
  report.payload.set("mod_prime", std::move(parity));

  if (const auto* e = expectations_of(c)) {
    for (const auto& m : e->membership) {
      std::vector<Integer> want = m.target;
      for (std::size_t j = 0; j < want.size(); ++j) want[j] = mod_floor(want[j], table.h1_orders[j]);
      if (want == target) {
        expect(report, "membership" + tuple_text(want), m.member ? "true" : "false", result.member ? "true" : "false");
      }
    }
  }
  if (json) return;
  out << tuple_text(target) << (result.member ? " in image" : " not in image") << '\n';
  if (result.member) out << "witness: " << tuple_text(result.witness) << '\n';
  out << oracle_line << '\n';
  for (const auto& l : parity_lines) out << l << '\n';
}

}  // namespace

RunReport run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunReport report;
  bool json = false;
  std::string fixture_ref;
  std::string p_text;
  std::string q_text;
  std::string target_text;

  CLI::App app{"Exact first homology of rational blow-downs", "blowdown"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", json, "Print the report as one JSON object");

  auto* validate = app.add_subcommand("validate", "Check chains, disjointness and spanning");
  validate->add_option("fixture", fixture_ref, "Fixture file or bundled name")->required();
  auto* table = app.add_subcommand("boundary-table", "Boundary map and induced map on every listed class");
  table->add_option("fixture", fixture_ref, "Fixture file or bundled name")->required();
  auto* h1 = app.add_subcommand("h1", "First homology of the blow-down");
  h1->add_option("fixture", fixture_ref, "Fixture file or bundled name")->required();
  auto* invariants = app.add_subcommand("invariants", "chi_top, K^2 and b2 of the blow-down");
  invariants->add_option("fixture", fixture_ref, "Fixture file or bundled name")->required();
  auto* cf = app.add_subcommand("cf", "Continued fraction of p^2/(pq-1)");
  cf->add_option("p", p_text)->required();
  cf->add_option("q", q_text)->required();
  auto* member = app.add_subcommand("membership", "Is a tuple in the image of the induced rows?");
  member->add_option("fixture", fixture_ref, "Fixture file or bundled name")->required();
  member->add_option("target", target_text, "Comma-separated residues, one per chain")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    report.exit_code = code == 0 ? kOk : kUsageError;
    report.status = code == 0 ? Status::pass : Status::fail;
    report.error = code == 0 ? "" : e.what();
    return report;
  }

  CLI::App* chosen = app.get_subcommands().front();
  report.command = chosen->get_name();
  report.fixture = fixture_ref;
  report.payload = JsonValue(JsonValue::Object{});

  try {
    if (chosen == cf) {
      cmd_cf(p_text, q_text, report, json, out);
    } else {
      const Checked checked = load_checked(fixture_ref);
      report.fixture = checked.fixture.doc.name;
      if (chosen == validate) cmd_validate(checked, report, json, out);
      if (chosen == table) cmd_boundary_table(checked, report, json, out);
      if (chosen == h1) cmd_h1(checked, report, json, out);
      if (chosen == invariants) cmd_invariants(checked, report, json, out);
      if (chosen == member) cmd_membership(checked, target_text, report, json, out);
    }
    if (report.exit_code == kOk && !report.diffs.empty()) report.exit_code = kExpectationMismatch;
  } catch (const IoError& e) {
    report.error = e.what();
    report.exit_code = kUsageError;
  } catch (const CLI::ValidationError& e) {
    report.error = e.what();
    report.exit_code = kUsageError;
  } catch (const InternalError& e) {
    report.error = std::string("internal error: ") + e.what();
    report.exit_code = kValidationFailure;
  } catch (const Error& e) {
    report.error = e.what();
    report.exit_code = kValidationFailure;
  }

  if (report.exit_code != kOk) {
    report.status = Status::fail;
  } else if (!report.warnings.empty()) {
    report.status = Status::warn;
  }
  for (const auto& d : report.diffs) {
    err << "expectation " << d.field << ": expected " << d.expected << ", got " << d.actual << '\n';
  }
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  if (!report.error.empty()) err << "error: " << report.error << '\n';
  if (json) out << report.to_json().dump() << '\n';
  return report;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr).exit_code;
}

}  // namespace blowdown::cli
