#include "blowdown/fixture.hpp"

#include "blowdown/error.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <set>
#include <sstream>

namespace blowdown {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

void check_keys(const JsonValue& obj, const std::string& where, std::initializer_list<std::string_view> required,
                std::initializer_list<std::string_view> optional) {
  if (!obj.is_object()) fail(where, std::string("expected an object, got ") + obj.type_name());
  for (const auto& [key, value] : obj.as_object()) {
    const auto match = [&](std::string_view k) { return k == key; };
    if (std::none_of(required.begin(), required.end(), match) && std::none_of(optional.begin(), optional.end(), match)) {
      fail(where, "unknown key '" + key + "'");
    }
  }
  for (auto key : required) {
    if (!obj.find(key)) fail(where, "missing key '" + std::string(key) + "'");
  }
}

const JsonValue& require(const JsonValue& obj, std::string_view key) { return *obj.find(key); }

std::string get_string(const JsonValue& v, const std::string& where) {
  if (!v.is_string()) fail(where, std::string("expected a string, got ") + v.type_name());
  return v.as_string();
}

Integer get_integer(const JsonValue& v, const std::string& where) {
  if (!v.is_integer()) fail(where, std::string("expected an integer, got ") + v.type_name());
  return v.as_integer();
}

const JsonValue::Array& get_array(const JsonValue& v, const std::string& where) {
  if (!v.is_array()) fail(where, std::string("expected an array, got ") + v.type_name());
  return v.as_array();
}

std::vector<Integer> get_integer_list(const JsonValue& v, const std::string& where) {
  std::vector<Integer> out;
  const auto& arr = get_array(v, where);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(get_integer(arr[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::string> get_string_list(const JsonValue& v, const std::string& where) {
  std::vector<std::string> out;
  const auto& arr = get_array(v, where);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(get_string(arr[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

int small_int(const Integer& v, const std::string& where) {
  if (v < 0 || v > 1'000'000) fail(where, "value out of range: " + to_string(v));
  return v.convert_to<int>();
}

FillingSpec parse_filling(const JsonValue& v, const std::string& where) {
  check_keys(v, where, {"kind"}, {"h1_order", "b2", "gen_image"});
  FillingSpec spec;
  try {
    spec.kind = parse_filling_kind(get_string(require(v, "kind"), where + ".kind"));
  } catch (const ValidationError& e) {
    fail(where, e.what());
  }
  if (auto* h = v.find("h1_order")) spec.h1_order = get_integer(*h, where + ".h1_order");
  if (auto* b = v.find("b2")) spec.b2 = small_int(get_integer(*b, where + ".b2"), where + ".b2");
  if (auto* g = v.find("gen_image")) spec.gen_image = get_integer(*g, where + ".gen_image");
  return spec;
}

Expectations parse_expectations(const JsonValue& v) {
  const std::string where = "expectations";
  check_keys(v, where, {}, {"h1", "K2", "chi_top", "b2", "spans", "boundary_table", "membership"});
  Expectations e;
  if (auto* h = v.find("h1")) e.h1 = get_integer_list(*h, where + ".h1");
  if (auto* k = v.find("K2")) e.k_squared = get_integer(*k, where + ".K2");
  if (auto* c = v.find("chi_top")) e.chi_top = get_integer(*c, where + ".chi_top");
  if (auto* b = v.find("b2")) e.b2 = get_integer(*b, where + ".b2");
  if (auto* s = v.find("spans")) {
    if (!s->is_bool()) fail(where + ".spans", "expected a boolean");
    e.spans = s->as_bool();
  }
  if (auto* t = v.find("boundary_table")) {
    const auto& rows = get_array(*t, where + ".boundary_table");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string w = where + ".boundary_table[" + std::to_string(i) + "]";
      check_keys(rows[i], w, {"class", "boundary", "induced"}, {});
      e.boundary_table.push_back({get_string(require(rows[i], "class"), w + ".class"),
                                  get_integer_list(require(rows[i], "boundary"), w + ".boundary"),
                                  get_integer_list(require(rows[i], "induced"), w + ".induced")});
    }
  }
  if (auto* m = v.find("membership")) {
    const auto& items = get_array(*m, where + ".membership");
    for (std::size_t i = 0; i < items.size(); ++i) {
      const std::string w = where + ".membership[" + std::to_string(i) + "]";
      check_keys(items[i], w, {"target", "member"}, {});
      const auto& member = require(items[i], "member");
      if (!member.is_bool()) fail(w + ".member", "expected a boolean");
      e.membership.push_back({get_integer_list(require(items[i], "target"), w + ".target"), member.as_bool()});
    }
  }
  return e;
}

FixtureDocument parse_document(const JsonValue& root) {
  check_keys(root, "fixture", {"name", "basis", "initial_curves", "chains", "extra_classes"},
             {"blowup_program", "expectations"});
  FixtureDocument doc;
  doc.name = get_string(require(root, "name"), "name");

  for (auto& s : get_string_list(require(root, "basis"), "basis")) doc.basis.emplace_back(std::move(s));

  const auto& curves = require(root, "initial_curves");
  if (!curves.is_object()) fail("initial_curves", "expected an object");
  for (const auto& [name, coords] : curves.as_object()) {
    const std::string where = "initial_curves." + name;
    if (!coords.is_object()) fail(where, "expected an object of symbol -> integer");
    LatticeClass cls;
    for (const auto& [sym, value] : coords.as_object()) cls.add(BasisSymbol(sym), get_integer(value, where + "." + sym));
    doc.initial_curves.emplace_back(name, std::move(cls));
  }

  if (auto* program = root.find("blowup_program")) {
    std::vector<BlowUpStep> steps;
    const auto& arr = get_array(*program, "blowup_program");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "blowup_program[" + std::to_string(i) + "]";
      check_keys(arr[i], where, {"symbol", "incidences"}, {});
      BlowUpStep step{BasisSymbol(get_string(require(arr[i], "symbol"), where + ".symbol")), {}};
      const auto& incs = get_array(require(arr[i], "incidences"), where + ".incidences");
      for (std::size_t j = 0; j < incs.size(); ++j) {
        const std::string w = where + ".incidences[" + std::to_string(j) + "]";
        const auto& pair = get_array(incs[j], w);
        if (pair.size() != 2) fail(w, "expected [curve name, multiplicity]");
        step.incidences.push_back({get_string(pair[0], w + "[0]"), get_integer(pair[1], w + "[1]")});
      }
      steps.push_back(std::move(step));
    }
    doc.blowup_program = std::move(steps);
  }

  const auto& chains = get_array(require(root, "chains"), "chains");
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const std::string where = "chains[" + std::to_string(i) + "]";
    check_keys(chains[i], where, {"name", "curves", "filling"}, {"weights", "pq"});
    ChainSpec spec;
    spec.name = get_string(require(chains[i], "name"), where + ".name");
    const std::string w = "chain " + spec.name;
    spec.curves = get_string_list(require(chains[i], "curves"), w + ".curves");
    if (auto* weights = chains[i].find("weights")) spec.weights = get_integer_list(*weights, w + ".weights");
    if (auto* pq = chains[i].find("pq")) {
      auto values = get_integer_list(*pq, w + ".pq");
      if (values.size() != 2) fail(w + ".pq", "expected [p, q]");
      spec.pq = std::pair{values[0], values[1]};
    }
    spec.filling = parse_filling(require(chains[i], "filling"), w + ".filling");
    doc.chains.push_back(std::move(spec));
  }

  doc.extra_classes = get_string_list(require(root, "extra_classes"), "extra_classes");
  if (auto* e = root.find("expectations")) doc.expectations = parse_expectations(*e);
  return doc;
}

Filling resolve_filling(const ChainSpec& spec, const WeightList& weights) {
  const std::string where = "chain " + spec.name + ".filling";
  const Integer det = plumbing_det(weights);
  const auto& f = spec.filling;
  Filling out;
  out.kind = f.kind;
  switch (f.kind) {
    case FillingKind::rational_ball: {
      Integer p;
      if (spec.pq) {
        p = spec.pq->first;
      } else {
        p = boost::multiprecision::sqrt(det);
        if (p * p != det) fail(where, "rational ball needs det = p^2, got " + to_string(det));
      }
      out = Filling::rational_ball(p);
      if (f.h1_order && *f.h1_order != p) fail(where, "rational ball B_{p,q} has h1_order = p = " + to_string(p));
      if (f.b2 && *f.b2 != 0) fail(where, "rational ball has b2 = 0");
      if (f.gen_image && *f.gen_image != 1) fail(where, "rational ball sends the generator to the generator (gen_image = 1)");
      break;
    }
    case FillingKind::milnor_fiber:
    case FillingKind::custom:
      if (!f.h1_order) fail(where, "h1_order is required for kind " + std::string(to_string(f.kind)));
      out.h1_order = *f.h1_order;
      out.b2 = f.b2.value_or(f.kind == FillingKind::milnor_fiber ? 1 : 0);
      out.gen_image = f.gen_image.value_or(1);
      break;
  }
  try {
    out.check_compatible(det);
  } catch (const ConfigurationError& e) {
    fail(where, e.what());
  }
  return out;
}

WeightList resolve_weights(const ChainSpec& spec) {
  const std::string where = "chain " + spec.name;
  if (!spec.weights && !spec.pq) fail(where, "one of 'weights' or 'pq' is required");
  std::optional<WeightList> from_pq;
  if (spec.pq) {
    try {
      from_pq = cf_expand(spec.pq->first, spec.pq->second);
    } catch (const DomainError& e) {
      fail(where, e.what());
    }
  }
  if (!spec.weights) return *from_pq;
  std::optional<WeightList> given;
  try {
    given.emplace(*spec.weights);
  } catch (const ValidationError& e) {
    fail(where, e.what());
  }
  if (from_pq && *from_pq != *given) fail(where, "chain/weight mismatch: weights disagree with the expansion of pq");
  return *given;
}

}  // namespace

SurfaceState resolve_curves(const FixtureDocument& doc) {
  // The basis lists every symbol of the final lattice; those introduced by the
  // program come into being when their step runs.
  std::set<BasisSymbol> introduced;
  if (doc.blowup_program) {
    for (const auto& step : *doc.blowup_program) {
      if (std::find(doc.basis.begin(), doc.basis.end(), step.symbol) == doc.basis.end()) {
        fail("blowup_program", "symbol '" + step.symbol.name + "' is not listed in basis");
      }
      introduced.insert(step.symbol);
    }
  }
  std::vector<BasisSymbol> initial;
  for (const auto& s : doc.basis)
    if (!introduced.contains(s)) initial.push_back(s);
  if (initial.empty()) fail("basis", "no symbols left before the blow-up program");

  SurfaceState state{IntersectionLattice(initial)};
  for (const auto& [name, cls] : doc.initial_curves) {
    try {
      state.add_curve(name, cls);
    } catch (const ValidationError& e) {
      fail("initial_curves." + name, e.what());
    }
  }
  if (doc.blowup_program) {
    for (std::size_t i = 0; i < doc.blowup_program->size(); ++i) {
      const auto& step = (*doc.blowup_program)[i];
      try {
        state = blow_up(state, step.symbol, step.incidences);
      } catch (const ValidationError& e) {
        fail("blowup_program[" + std::to_string(i) + "]", e.what());
      }
    }
  }
  if (state.lattice().basis() != doc.basis) {
    fail("basis", "blow-up symbols must appear in basis in the order the program introduces them");
  }
  return state;
}

std::vector<LinearChain> build_chains(const FixtureDocument& doc, const SurfaceState& state) {
  std::vector<LinearChain> out;
  std::set<std::string> names;
  for (const auto& spec : doc.chains) {
    if (!names.insert(spec.name).second) fail("chains", "duplicate chain name '" + spec.name + "'");
    WeightList weights = resolve_weights(spec);
    if (weights.size() != spec.curves.size()) {
      fail("chain " + spec.name, "chain/weight mismatch: " + std::to_string(spec.curves.size()) + " curves but " +
                                     std::to_string(weights.size()) + " weights");
    }
    for (const auto& c : spec.curves) {
      if (!state.has_curve(c)) fail("chain " + spec.name, "undefined curve '" + c + "'");
    }
    Filling filling = resolve_filling(spec, weights);
    out.push_back(LinearChain{spec.name, spec.curves, std::move(weights), spec.pq, std::move(filling)});
  }
  return out;
}

PreparedFixture prepare(FixtureDocument doc) {
  SurfaceState state = resolve_curves(doc);
  auto chains = build_chains(doc, state);
  std::set<std::string> seen;
  for (const auto& name : doc.extra_classes) {
    if (!state.has_curve(name)) fail("extra_classes", "undefined curve '" + name + "'");
    if (!seen.insert(name).second) fail("extra_classes", "duplicate class '" + name + "'");
  }
  if (doc.expectations) {
    const std::size_t n = chains.size();
    for (const auto& row : doc.expectations->boundary_table) {
      if (!state.has_curve(row.cls)) fail("expectations.boundary_table", "undefined curve '" + row.cls + "'");
      if (row.boundary.size() != n || row.induced.size() != n) {
        fail("expectations.boundary_table", "row '" + row.cls + "' needs one entry per chain");
      }
    }
    for (const auto& m : doc.expectations->membership) {
      if (m.target.size() != n) fail("expectations.membership", "target needs one entry per chain");
    }
  }
  return PreparedFixture{std::move(doc), std::move(state), std::move(chains)};
}

FixtureDocument load_fixture(std::string_view text) {
  FixtureDocument doc = parse_document(parse_json(text));
  prepare(doc);
  return doc;
}

FixtureDocument load_fixture(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return load_fixture(std::string_view(text));
}

JsonValue fixture_to_json(const FixtureDocument& doc) {
  auto integers = [](const std::vector<Integer>& v) {
    JsonValue::Array a;
    for (const auto& x : v) a.emplace_back(x);
    return JsonValue(std::move(a));
  };
  auto strings = [](const std::vector<std::string>& v) {
    JsonValue::Array a;
    for (const auto& x : v) a.emplace_back(x);
    return JsonValue(std::move(a));
  };

  JsonValue root;
  root.set("name", doc.name);
  JsonValue::Array basis;
  for (const auto& s : doc.basis) basis.emplace_back(s.name);
  root.set("basis", std::move(basis));

  const IntersectionLattice lattice(doc.basis);
  JsonValue curves{JsonValue::Object{}};
  for (const auto& [name, cls] : doc.initial_curves) {
    JsonValue coords{JsonValue::Object{}};
    const auto values = lattice.coordinates(cls);
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] != 0) coords.set(lattice.basis()[i].name, values[i]);
    curves.set(name, std::move(coords));
  }
  root.set("initial_curves", std::move(curves));

  if (doc.blowup_program) {
    JsonValue::Array steps;
    for (const auto& step : *doc.blowup_program) {
      JsonValue s;
      s.set("symbol", step.symbol.name);
      JsonValue::Array incs;
      for (const auto& inc : step.incidences) incs.emplace_back(JsonValue::Array{inc.curve, inc.multiplicity});
      s.set("incidences", std::move(incs));
      steps.push_back(std::move(s));
    }
    root.set("blowup_program", std::move(steps));
  }

  JsonValue::Array chains;
  for (const auto& c : doc.chains) {
    JsonValue chain;
    chain.set("name", c.name);
    chain.set("curves", strings(c.curves));
    if (c.weights) chain.set("weights", integers(*c.weights));
    if (c.pq) chain.set("pq", JsonValue::Array{c.pq->first, c.pq->second});
    JsonValue filling;
    filling.set("kind", std::string(to_string(c.filling.kind)));
    if (c.filling.h1_order) filling.set("h1_order", *c.filling.h1_order);
    if (c.filling.b2) filling.set("b2", *c.filling.b2);
    if (c.filling.gen_image) filling.set("gen_image", *c.filling.gen_image);
    chain.set("filling", std::move(filling));
    chains.push_back(std::move(chain));
  }
  root.set("chains", std::move(chains));
  root.set("extra_classes", strings(doc.extra_classes));

  if (doc.expectations) {
    const auto& e = *doc.expectations;
    JsonValue ex{JsonValue::Object{}};
    if (e.h1) ex.set("h1", integers(*e.h1));
    if (e.k_squared) ex.set("K2", *e.k_squared);
    if (e.chi_top) ex.set("chi_top", *e.chi_top);
    if (e.b2) ex.set("b2", *e.b2);
    if (e.spans) ex.set("spans", *e.spans);
    if (!e.boundary_table.empty()) {
      JsonValue::Array rows;
      for (const auto& r : e.boundary_table) {
        JsonValue row;
        row.set("class", r.cls);
        row.set("boundary", integers(r.boundary));
        row.set("induced", integers(r.induced));
        rows.push_back(std::move(row));
      }
      ex.set("boundary_table", std::move(rows));
    }
    if (!e.membership.empty()) {
      JsonValue::Array items;
      for (const auto& m : e.membership) {
        JsonValue item;
        item.set("target", integers(m.target));
        item.set("member", m.member);
        items.push_back(std::move(item));
      }
      ex.set("membership", std::move(items));
    }
    root.set("expectations", std::move(ex));
  }
  return root;
}

std::string serialize_fixture(const FixtureDocument& doc) { return fixture_to_json(doc).dump(2) + "\n"; }

FixtureDocument load_fixture_by_reference(const std::string& reference) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(reference, ec)) {
    std::ifstream in(reference, std::ios::binary);
    if (!in) throw IoError("cannot read fixture file '" + reference + "'");
    return load_fixture(in);
  }
  if (auto text = bundled_fixture(reference)) return load_fixture(*text);
  throw IoError("no fixture file or bundled fixture named '" + reference + "'");
}

}  // namespace blowdown
