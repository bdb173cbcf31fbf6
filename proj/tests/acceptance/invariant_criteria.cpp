#include <map>
#include <random>
#include <set>
#include <sstream>

#include "criteria.hpp"
#include "raagkit/invariant.hpp"
#include "support.hpp"

namespace raag::acceptance {

namespace {

using namespace raag::testing;

Outcome closure_suite() {
  std::mt19937_64 rng(seed() + 4);
  int groups = 0, attempts = 0;
  std::size_t violations = 0, mismatched = 0;
  std::map<std::size_t, int> orders;
  std::set<std::string> checks;
  while (groups < 30 && attempts < 400) {
    ++attempts;
    const GraphPtr g = random_graph(rng, 2 + attempts % 4);
    const auto pool = involutions_u0(g);
    std::vector<RaagMap> gens;
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) gens.push_back(pool[rng() % pool.size()]);
    FiniteOuterGroup h = FiniteOuterGroup::trivial(g);
    try {
      h = close_group(g, gens, {8, {}});
    } catch (const CapExceeded&) {
      continue;
    }
    ++groups;
    ++orders[h.size()];
    const InvariantSystem l = compute_L(h);
    if (!(l == compute_L_parallel(h))) ++mismatched;
    const ClosureReport r = verify_closure(l, {true, 4});
    violations += r.violation_count();
    for (const auto& c : r.checks) checks.insert(c.check);
  }
  std::ostringstream s;
  s << groups << " groups (orders";
  for (auto [o, n] : orders) s << " " << o << "x" << n;
  s << "), " << checks.size() << " closure checks each, " << violations << " violations, " << mismatched
    << " serial/parallel mismatches";
  return {groups >= 25 && violations == 0 && mismatched == 0, s.str()};
}

}  // namespace

std::vector<Criterion> invariant_criteria() { return {{4, "closure of L under the invariant-system laws", closure_suite}}; }

}  // namespace raag::acceptance
