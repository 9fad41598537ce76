#include "blowdown/blowdown.hpp"

#include "blowdown/error.hpp"
#include "blowdown/snf.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace blowdown {

BoundaryTable boundary_table(const SurfaceState& state, std::span<const LinearChain> chains,
                             std::span<const ChainBoundary> boundaries, std::span<const std::string> extra_classes) {
  if (boundaries.size() != chains.size()) throw ValidationError("one boundary per chain is required");
  BoundaryTable table;
  for (std::size_t j = 0; j < chains.size(); ++j) {
    chains[j].filling.check_compatible(boundaries[j].det);
    table.chain_names.push_back(chains[j].name);
    table.dets.push_back(boundaries[j].det);
    table.h1_orders.push_back(chains[j].filling.h1_order);
  }

  auto make_row = [&](const std::string& name, bool member) {
    if (!state.has_curve(name)) throw ValidationError("unknown class '" + name + "'");
    BoundaryRow row{name, state.curve(name), member, {}, {}};
    for (std::size_t j = 0; j < chains.size(); ++j) {
      Integer r = boundary_image(state, chains[j], boundaries[j], row.cls);
      row.induced.push_back(induced_image(chains[j].filling, r, boundaries[j].det));
      row.boundary.push_back(std::move(r));
    }
    table.rows.push_back(std::move(row));
  };

  for (const auto& chain : chains)
    for (const auto& curve : chain.curve_names) make_row(curve, true);
  for (const auto& name : extra_classes) make_row(name, false);
  return table;
}

BoundaryTable boundary_table(const SurfaceState& state, std::span<const LinearChain> chains,
                             std::span<const std::string> extra_classes) {
  std::vector<ChainBoundary> boundaries;
  boundaries.reserve(chains.size());
  for (const auto& c : chains) boundaries.push_back(normal_circle_coeffs(c.weights));
  return boundary_table(state, chains, boundaries, extra_classes);
}

Integer AbelianGroup::order() const {
  Integer n = 1;
  for (const auto& f : invariant_factors) n *= f;
  return n;
}

std::string AbelianGroup::to_string() const {
  if (trivial()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
    if (i) os << " + ";
    if (invariant_factors[i] == 0) {
      os << "Z";
    } else {
      os << "Z/" << invariant_factors[i];
    }
  }
  return os.str();
}

AbelianGroup cokernel(std::span<const std::vector<Integer>> rows, std::span<const Integer> moduli) {
  const std::size_t n = moduli.size();
  IntMatrix m(rows.size() + n, n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) throw ValidationError("row " + std::to_string(i) + " has the wrong number of entries");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  for (std::size_t j = 0; j < n; ++j) m(rows.size() + j, j) = moduli[j];

  const auto snf = smith_normal_form(m);
  AbelianGroup group;
  for (const auto& d : snf.invariant_factors)
    if (d != 1) group.invariant_factors.push_back(d);
  return group;
}

namespace {

std::vector<std::vector<Integer>> induced_rows(const BoundaryTable& table) {
  std::vector<std::vector<Integer>> rows;
  rows.reserve(table.rows.size());
  for (const auto& r : table.rows) rows.push_back(r.induced);
  return rows;
}

Integer element_order(std::span<const Integer> element, std::span<const Integer> moduli) {
  Integer order = 1;
  for (std::size_t j = 0; j < moduli.size(); ++j) order = lcm(order, moduli[j] / gcd(moduli[j], element[j]));
  return order;
}

}  // namespace

AbelianGroup h1_from_table(const BoundaryTable& table) {
  const auto rows = induced_rows(table);
  return cokernel(rows, table.h1_orders);
}

AbelianGroup h1_blowdown(const SurfaceState& state, std::span<const LinearChain> chains,
                         std::span<const std::string> extra_classes) {
  std::vector<LatticeClass> generators;
  for (const auto& chain : chains)
    for (const auto& curve : chain.curve_names) generators.push_back(state.curve(curve));
  for (const auto& name : extra_classes) generators.push_back(state.curve(name));
  const auto report = spans(state.lattice(), generators);
  if (!report.spans) throw SpanningError("generators do not span H2");
  return h1_from_table(boundary_table(state, chains, extra_classes));
}

MembershipResult membership(const BoundaryTable& table, std::span<const Integer> target) {
  const std::size_t n = table.h1_orders.size();
  if (target.size() != n) {
    throw ValidationError("target has " + std::to_string(target.size()) + " entries but the table has " +
                          std::to_string(n) + " chains");
  }
  const std::size_t r = table.rows.size();

  // Columns of a are the generators: induced rows, then the modulus relations.
  IntMatrix a(n, r + n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) a(j, i) = table.rows[i].induced[j];
  for (std::size_t j = 0; j < n; ++j) a(j, r + j) = table.h1_orders[j];

  std::vector<Integer> t(n);
  for (std::size_t j = 0; j < n; ++j) t[j] = mod_floor(target[j], table.h1_orders[j]);

  // a x = t  <=>  d y = u t  with  x = v y.
  const auto snf = smith_normal_form(a);
  std::vector<Integer> ut(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) ut[i] += snf.u(i, k) * t[k];

  std::vector<Integer> y(r + n);
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& d = snf.d(i, i);
    if (d == 0) {
      if (ut[i] != 0) return {false, {}};
      continue;
    }
    if (ut[i] % d != 0) return {false, {}};
    y[i] = ut[i] / d;
  }

  MembershipResult result{true, std::vector<Integer>(r)};
  for (std::size_t i = 0; i < r; ++i) {
    Integer x = 0;
    for (std::size_t k = 0; k < r + n; ++k) x += snf.v(i, k) * y[k];
    result.witness[i] = mod_floor(x, element_order(table.rows[i].induced, table.h1_orders));
  }

  for (std::size_t j = 0; j < n; ++j) {
    Integer sum = 0;
    for (std::size_t i = 0; i < r; ++i) sum += result.witness[i] * table.rows[i].induced[j];
    if (mod_floor(sum - t[j], table.h1_orders[j]) != 0) {
      throw InternalError("membership witness fails to reproduce the target");
    }
  }
  return result;
}

bool solvable_mod_prime(const BoundaryTable& table, std::span<const Integer> target, int prime) {
  const std::size_t n = table.h1_orders.size();
  if (target.size() != n) throw ValidationError("target length does not match the table");
  if (prime < 2) throw DomainError("prime must be at least 2");
  for (const auto& m : table.h1_orders) {
    if (m % prime != 0) throw DomainError("modulus " + to_string(m) + " is not divisible by " + std::to_string(prime));
  }
  const std::size_t r = table.rows.size();
  const Integer p = prime;
  // Augmented system: one equation per coordinate, one unknown per row.
  std::vector<std::vector<long long>> m(n, std::vector<long long>(r + 1));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < r; ++i) m[j][i] = mod_floor(table.rows[i].induced[j], p).convert_to<long long>();
    m[j][r] = mod_floor(target[j], p).convert_to<long long>();
  }

  auto inverse = [prime](long long a) {
    long long result = 1;
    long long base = a % prime;
    for (int e = prime - 2; e > 0; e >>= 1) {
      if (e & 1) result = result * base % prime;
      base = base * base % prime;
    }
    return result;
  };

  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < r && pivot_row < n; ++col) {
    std::size_t sel = pivot_row;
    while (sel < n && m[sel][col] == 0) ++sel;
    if (sel == n) continue;
    std::swap(m[sel], m[pivot_row]);
    const long long inv = inverse(m[pivot_row][col]);
    for (auto& v : m[pivot_row]) v = v * inv % prime;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == pivot_row || m[j][col] == 0) continue;
      const long long f = m[j][col];
      for (std::size_t c = 0; c <= r; ++c) m[j][c] = ((m[j][c] - f * m[pivot_row][c]) % prime + prime) % prime;
    }
    ++pivot_row;
  }
  for (std::size_t j = pivot_row; j < n; ++j)
    if (m[j][r] != 0) return false;
  return true;
}

SubgroupClosure::SubgroupClosure(std::vector<std::int64_t> moduli, std::vector<bool> members, std::uint64_t size)
    : moduli_(std::move(moduli)), members_(std::move(members)), size_(size) {}

bool SubgroupClosure::contains(std::span<const Integer> element) const {
  if (element.size() != moduli_.size()) throw ValidationError("element length does not match the group");
  std::uint64_t code = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    const auto digit = mod_floor(element[j], Integer(moduli_[j])).convert_to<std::uint64_t>();
    code = code * static_cast<std::uint64_t>(moduli_[j]) + digit;
  }
  return members_[code];
}

SubgroupClosure subgroup_closure_oracle(std::span<const std::vector<Integer>> rows, std::span<const Integer> moduli,
                                        std::uint64_t bound) {
  Integer order = 1;
  for (const auto& m : moduli) {
    if (m < 1) throw ValidationError("moduli must be positive");
    order *= m;
  }
  if (order > bound) {
    throw OracleUnavailable("group order " + to_string(order) + " exceeds the oracle bound " + std::to_string(bound));
  }
  const std::size_t n = moduli.size();
  std::vector<std::int64_t> mods;
  for (const auto& m : moduli) mods.push_back(m.convert_to<std::int64_t>());
  const auto total = order.convert_to<std::uint64_t>();

  auto encode = [&](const std::vector<std::int64_t>& e) {
    std::uint64_t code = 0;
    for (std::size_t j = 0; j < n; ++j) code = code * static_cast<std::uint64_t>(mods[j]) + e[j];
    return code;
  };

  std::set<std::vector<std::int64_t>> generator_set;
  for (const auto& row : rows) {
    if (row.size() != n) throw ValidationError("row length does not match the moduli");
    std::vector<std::int64_t> g(n);
    bool zero = true;
    for (std::size_t j = 0; j < n; ++j) {
      g[j] = mod_floor(row[j], moduli[j]).convert_to<std::int64_t>();
      zero = zero && g[j] == 0;
    }
    if (!zero) generator_set.insert(std::move(g));
  }
  const std::vector<std::vector<std::int64_t>> generators(generator_set.begin(), generator_set.end());

  std::vector<bool> seen(total, false);
  std::deque<std::vector<std::int64_t>> queue;
  queue.emplace_back(n, 0);
  seen[0] = true;
  std::uint64_t size = 1;
  while (!queue.empty()) {
    const auto current = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : generators) {
      std::vector<std::int64_t> next(n);
      for (std::size_t j = 0; j < n; ++j) next[j] = (current[j] + g[j]) % mods[j];
      const auto code = encode(next);
      if (seen[code]) continue;
      seen[code] = true;
      ++size;
      queue.push_back(std::move(next));
    }
  }
  return SubgroupClosure(std::move(mods), std::move(seen), size);
}

InvariantReport numerical_invariants(const SurfaceState& state, std::span<const LinearChain> chains) {
  InvariantReport report;
  report.chi_top_ambient = 3 + static_cast<long long>(state.lattice().rank()) - 1;
  long long total_gain = 0;
  for (const auto& chain : chains) {
    ChainGain g{chain.name, chain.curve_names.size(), chain.filling.b2, 0};
    g.gain = static_cast<long long>(g.length) - g.filling_b2;
    total_gain += g.gain;
    report.gains.push_back(std::move(g));
  }
  report.chi_top = report.chi_top_ambient - total_gain;
  report.k_squared = 12 - report.chi_top;
  report.b2 = report.chi_top - 2;
  report.assumption = "b1 = 0 and p_g = q = 0 for the blow-down (K^2 = 12 - chi_top, b2 = chi_top - 2)";
  return report;
}

std::optional<std::string> campedelli_lint(const AbelianGroup& group) {
  const Integer order = group.order();
  if (order > 9) {
    return "torsion of order " + to_string(order) + " exceeds 9, impossible for a numerical Campedelli surface";
  }
  return std::nullopt;
}

}  // namespace blowdown
