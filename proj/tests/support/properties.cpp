#include "properties.hpp"

#include "oracles.hpp"

#include "blowdown/blowdown.hpp"
#include "blowdown/chain.hpp"
#include "blowdown/fixture.hpp"
#include "blowdown/snf.hpp"
#include "blowdown/surface.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace properties {

using blowdown::BasisSymbol;
using blowdown::Integer;
using blowdown::LatticeClass;

namespace {

class Recorder {
 public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }

  void pass() { ++result_.cases; }
  void fail(const std::string& what) {
    ++result_.cases;
    if (result_.failures++ == 0) result_.first_failure = what;
  }
  void check(bool ok, const std::string& what) { ok ? pass() : fail(what); }
  Result done() { return result_; }

 private:
  Result result_;
};

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string text(const std::vector<Integer>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

std::vector<Integer> random_weights(std::mt19937_64& rng, int max_len, int max_weight) {
  std::vector<Integer> w(static_cast<std::size_t>(uniform(rng, 1, max_len)));
  for (auto& b : w) b = uniform(rng, 2, max_weight);
  return w;
}

/// A chain with the given weights inside diag(+1, -1, ...): curve i is
/// x_i - x_{i+1} minus (b_i - 2) private symbols.
struct RealizedChain {
  blowdown::SurfaceState state;
  blowdown::LinearChain chain;
};

RealizedChain realize(const std::vector<Integer>& weights) {
  const std::size_t k = weights.size();
  std::vector<BasisSymbol> basis{BasisSymbol("H")};
  for (std::size_t i = 0; i <= k; ++i) basis.emplace_back("x" + std::to_string(i));
  std::vector<LatticeClass> classes;
  for (std::size_t i = 0; i < k; ++i) {
    LatticeClass c = LatticeClass::generator(BasisSymbol("x" + std::to_string(i))) -
                     LatticeClass::generator(BasisSymbol("x" + std::to_string(i + 1)));
    for (int extra = 0; extra < weights[i] - 2; ++extra) {
      BasisSymbol s("y" + std::to_string(i) + "_" + std::to_string(extra));
      basis.push_back(s);
      c -= LatticeClass::generator(s);
    }
    classes.push_back(std::move(c));
  }
  blowdown::SurfaceState state{blowdown::IntersectionLattice(basis)};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) {
    names.push_back("c" + std::to_string(i));
    state.add_curve(names.back(), classes[i]);
  }
  const blowdown::WeightList wl(weights);
  const Integer det = blowdown::plumbing_det(wl);
  blowdown::Filling filling{blowdown::FillingKind::custom, det, 0, 1};
  return {std::move(state), blowdown::LinearChain{"chain", names, wl, std::nullopt, filling}};
}

LatticeClass random_class(std::mt19937_64& rng, const blowdown::IntersectionLattice& lattice, int spread) {
  LatticeClass x;
  for (const auto& s : lattice.basis()) x.add(s, uniform(rng, -spread, spread));
  return x;
}

}  // namespace

Result plumbing_kernel(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  Recorder rec("plumbing-relation kernel");
  for (int n = 0; n < cases; ++n) {
    const auto weights = random_weights(rng, 5, 6);
    const auto realized = realize(weights);
    const auto& chain = realized.chain;
    bool ok = true;
    for (const auto& name : chain.curve_names) {
      ok = ok && blowdown::boundary_image(realized.state, chain, realized.state.curve(name)) == 0;
    }
    // A random class against coefficients found by brute force.
    const auto mu = oracle::normal_circles_by_search(weights);
    const Integer det = blowdown::plumbing_det(chain.weights);
    const auto x = random_class(rng, realized.state.lattice(), 4);
    Integer expected = 0;
    for (std::size_t i = 0; i < mu.size(); ++i)
      expected += realized.state.pair(x, realized.state.curve(chain.curve_names[i])) * mu[i];
    ok = ok && blowdown::boundary_image(realized.state, chain, x) == blowdown::mod_floor(expected, det);
    rec.check(ok, "weights " + text(weights));
  }
  return rec.done();
}

Result recurrence_consistency(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  Recorder rec("normal-circle recurrence");
  for (int n = 0; n < cases; ++n) {
    const auto weights = random_weights(rng, 5, 6);
    const blowdown::WeightList wl(weights);
    const auto boundary = blowdown::normal_circle_coeffs(wl);
    const std::size_t k = weights.size();
    const Integer& det = boundary.det;
    // b_i is the weight of the curve carrying mu_i, counted from the right.
    auto b = [&](std::size_t i) { return weights[k - i]; };
    auto mu = [&](std::size_t i) { return i == 0 ? Integer(0) : boundary.mu(i); };
    bool ok = boundary.mu(1) == 1;
    for (std::size_t i = 1; i < k; ++i) ok = ok && blowdown::mod_floor(b(i) * mu(i) - mu(i - 1) - mu(i + 1), det) == 0;
    ok = ok && blowdown::mod_floor(b(k) * mu(k) - mu(k - 1), det) == 0;

    blowdown::IntMatrix q(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      q(i, i) = weights[i];
      if (i + 1 < k) q(i, i + 1) = q(i + 1, i) = -1;
    }
    ok = ok && det == oracle::rational_determinant(q) && det == blowdown::determinant(q);
    ok = ok && boundary.coefficients == oracle::normal_circles_by_search(weights);
    rec.check(ok, "weights " + text(weights));
  }
  return rec.done();
}

Result continued_fraction_round_trip(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  Recorder rec("continued fraction round trip");
  while (rec.done().cases < cases) {
    const int p = uniform(rng, 2, 200);
    const int q = uniform(rng, 1, p - 1);
    if (std::gcd(p, q) != 1) continue;
    const auto weights = blowdown::cf_expand(p, q);
    const auto r = blowdown::cf_eval(weights);
    const auto [num, den] = oracle::continued_fraction_value(weights.values());
    const bool all_ge_2 = std::all_of(weights.values().begin(), weights.values().end(), [](const Integer& b) { return b >= 2; });
    rec.check(all_ge_2 && r.num == Integer(p) * p && r.den == Integer(p) * q - 1 && num == r.num && den == r.den &&
                  blowdown::plumbing_det(weights) == Integer(p) * p,
              "p=" + std::to_string(p) + " q=" + std::to_string(q));
  }
  return rec.done();
}

Result snf_postconditions(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  Recorder rec("Smith normal form postconditions");
  for (int n = 0; n < cases; ++n) {
    const std::size_t rows = static_cast<std::size_t>(uniform(rng, 1, 4));
    const std::size_t cols = static_cast<std::size_t>(uniform(rng, 1, 4));
    blowdown::IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform(rng, -12, 12);
    // Force rank deficiency now and then.
    if (rows >= 2 && uniform(rng, 0, 3) == 0) {
      const int k = uniform(rng, -3, 3);
      for (std::size_t c = 0; c < cols; ++c) m(rows - 1, c) = m(0, c) * k;
    }
    const auto snf = blowdown::smith_normal_form(m);
    bool ok = snf.u * m * snf.v == snf.d;
    ok = ok && blowdown::abs_value(oracle::rational_determinant(snf.u)) == 1 && blowdown::abs_value(oracle::rational_determinant(snf.v)) == 1;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (r != c) ok = ok && snf.d(r, c) == 0;
    const auto& f = snf.invariant_factors;
    for (std::size_t i = 0; i < f.size(); ++i) {
      ok = ok && f[i] >= 0 && f[i] == snf.d(i, i);
      if (i + 1 < f.size()) ok = ok && (f[i + 1] == 0 || (f[i] != 0 && f[i + 1] % f[i] == 0));
    }
    ok = ok && f == oracle::invariant_factors_from_minors(m);
    rec.check(ok, std::to_string(rows) + "x" + std::to_string(cols) + " matrix, case " + std::to_string(n));
  }
  return rec.done();
}

Result blowup_intersection_formula(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  Recorder rec("blow-up intersection formula");
  const blowdown::IntersectionLattice lattice({BasisSymbol("H"), BasisSymbol("E1"), BasisSymbol("E2"), BasisSymbol("E3"),
                                               BasisSymbol("E4")});
  for (int n = 0; n < cases; ++n) {
    blowdown::SurfaceState state{lattice};
    const auto a = random_class(rng, lattice, 3);
    const auto b = random_class(rng, lattice, 3);
    const auto c = random_class(rng, lattice, 3);
    state.add_curve("A", a);
    state.add_curve("B", b);
    state.add_curve("C", c);
    const int ma = uniform(rng, 1, 3);
    const int mb = uniform(rng, 1, 3);
    const std::vector<blowdown::Incidence> inc{{"A", ma}, {"B", mb}};
    const auto after = blowdown::blow_up(state, BasisSymbol("e"), inc);
    const auto& at = after.curve("A");
    const auto& bt = after.curve("B");
    const auto& e = after.curve("e");
    bool ok = after.pair(at, bt) == state.pair(a, b) - ma * mb;
    ok = ok && after.pair(at, at) == state.pair(a, a) - ma * ma;
    ok = ok && after.curve("C") == c && after.pair(e, e) == -1;
    ok = ok && after.pair(e, at) == ma && after.pair(e, bt) == mb;
    rec.check(ok, "case " + std::to_string(n));
  }
  return rec.done();
}

Result generator_choice_robustness(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  Recorder rec("generator-choice robustness");
  std::vector<blowdown::PreparedFixture> fixtures;
  for (const char* name : {"example1", "example2"}) fixtures.push_back(blowdown::prepare(blowdown::load_fixture_by_reference(name)));
  std::vector<blowdown::AbelianGroup> baseline;
  for (const auto& f : fixtures) baseline.push_back(blowdown::h1_blowdown(f.state, f.chains, f.doc.extra_classes));

  auto random_unit = [&](const Integer& modulus) {
    if (modulus <= 2) return Integer(1);
    const int m = modulus.convert_to<int>();
    for (;;) {
      const int u = uniform(rng, 1, m - 1);
      if (std::gcd(u, m) == 1) return Integer(u);
    }
  };

  for (int n = 0; n < cases; ++n) {
    const std::size_t which = static_cast<std::size_t>(n) % fixtures.size();
    const auto& f = fixtures[which];
    auto chains = f.chains;
    std::vector<blowdown::ChainBoundary> boundaries;
    std::string units;
    for (auto& chain : chains) {
      const auto base = blowdown::normal_circle_coeffs(chain.weights);
      const Integer u = random_unit(base.det);
      boundaries.push_back(base.scaled(u));
      chain.filling.gen_image = random_unit(chain.filling.h1_order);
      units += " " + chain.name + ":" + blowdown::to_string(u) + "/" + blowdown::to_string(chain.filling.gen_image);
    }
    const auto table = blowdown::boundary_table(f.state, chains, boundaries, f.doc.extra_classes);
    rec.check(blowdown::h1_from_table(table) == baseline[which], f.doc.name + units);
  }
  return rec.done();
}

Result closure_equivalence(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  Recorder rec("closure equivalence");
  for (int n = 0; n < cases; ++n) {
    const int dims = uniform(rng, 1, 3);
    blowdown::BoundaryTable table;
    std::vector<long long> moduli;
    for (int j = 0; j < dims; ++j) {
      moduli.push_back(uniform(rng, 2, 12));
      table.chain_names.push_back("c" + std::to_string(j));
      table.dets.push_back(moduli.back() * moduli.back());
      table.h1_orders.push_back(moduli.back());
    }
    std::vector<std::vector<long long>> rows;
    std::vector<std::vector<Integer>> int_rows;
    const int count = uniform(rng, 0, 4);
    for (int i = 0; i < count; ++i) {
      std::vector<long long> r;
      std::vector<Integer> ri;
      for (int j = 0; j < dims; ++j) {
        r.push_back(uniform(rng, 0, static_cast<int>(moduli[j]) - 1));
        ri.push_back(r.back());
      }
      rows.push_back(r);
      int_rows.push_back(ri);
      table.rows.push_back({"r" + std::to_string(i), {}, false, ri, ri});
    }
    const oracle::Closure closure(rows, moduli);
    const auto group = blowdown::cokernel(int_rows, table.h1_orders);
    bool ok = group.order() * closure.size() == closure.group_order();
    const auto lib = blowdown::subgroup_closure_oracle(int_rows, table.h1_orders);
    ok = ok && lib.size() == closure.size();
    for (int t = 0; t < 5; ++t) {
      std::vector<long long> target;
      std::vector<Integer> ti;
      for (int j = 0; j < dims; ++j) {
        target.push_back(uniform(rng, 0, static_cast<int>(moduli[j]) - 1));
        ti.push_back(target.back());
      }
      const auto m = blowdown::membership(table, ti);
      ok = ok && m.member == closure.contains(target) && lib.contains(ti) == m.member;
      if (m.member) {
        // The witness must actually produce the target.
        std::vector<long long> sum(static_cast<std::size_t>(dims), 0);
        for (std::size_t i = 0; i < rows.size(); ++i)
          for (int j = 0; j < dims; ++j) sum[j] += m.witness[i].convert_to<long long>() * rows[i][j];
        for (int j = 0; j < dims; ++j) ok = ok && ((sum[j] - target[j]) % moduli[j]) == 0;
      }
    }
    rec.check(ok, "case " + std::to_string(n));
  }
  return rec.done();
}

Result spanning_permutation_invariance(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  Recorder rec("spanning permutation invariance");
  const blowdown::IntersectionLattice lattice({BasisSymbol("H"), BasisSymbol("E1"), BasisSymbol("E2"), BasisSymbol("E3")});
  for (int n = 0; n < cases; ++n) {
    std::vector<LatticeClass> classes;
    const int count = uniform(rng, 1, 6);
    for (int i = 0; i < count; ++i) classes.push_back(random_class(rng, lattice, 2));
    const auto before = blowdown::spans(lattice, classes);
    std::shuffle(classes.begin(), classes.end(), rng);
    const auto after = blowdown::spans(lattice, classes);
    rec.check(before.spans == after.spans && before.rank == after.rank &&
                  before.invariant_factors == after.invariant_factors,
              "case " + std::to_string(n));
  }
  return rec.done();
}

}  // namespace properties
