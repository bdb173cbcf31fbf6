#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "raagkit/invariant.hpp"

using namespace raag;
using namespace raag::testing;

namespace {

std::string table_text(const InvariantSystem& l) {
  std::ostringstream out;
  const auto& g = *l.graph();
  for (std::uint64_t s = 0; s < (1ULL << g.vertex_count()); ++s)
    out << g.set(s).to_string() << " " << (l.contains(s) ? 1 : 0) << "\n";
  return out.str();
}

}  // namespace

TEST_CASE("close_group examples") {
  auto f2 = SimplicialGraph::make({"a", "b"}, {});
  CHECK(close_group(f2, {make_inversion(f2, 0)}).size() == 2);
  CHECK(close_group(f2, {}).size() == 1);
  auto c4 = cycle_graph(4);
  CHECK_THROWS_AS(close_group(c4, {make_transvection(c4, 0, 2)}, {10, {}}), CapExceeded);

  auto klein = close_group(f2, {make_inversion(f2, 0), make_inversion(f2, 1)});
  CHECK(klein.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(klein.multiply(i, klein.inverse_index(i)) == 0);
    CHECK(klein.order(i) == (i == 0 ? 1 : 2));
  }
  // inner automorphisms collapse: <c(a)> is trivial in Out
  CHECK(close_group(f2, {RaagMap::inner(parse_element(f2, "a b"))}).size() == 1);
}

TEST_CASE("group table is associative and matches composition") {
  auto g = path_graph(4);
  auto invs = involutions_u0(g);
  auto h = close_group(g, {invs[0], invs[invs.size() - 1]}, {16, {}});
  const int n = static_cast<int>(h.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        CHECK(h.multiply(h.multiply(a, b), c) == h.multiply(a, h.multiply(b, c)));
}

TEST_CASE("is_invariant examples") {
  auto f2 = SimplicialGraph::make({"a", "b"}, {});
  auto inv = close_group(f2, {make_inversion(f2, 0), make_inversion(f2, 1)});
  for (std::uint64_t s = 0; s < 4; ++s) CHECK(is_invariant(inv, f2->set(s)));

  auto p4 = path_graph(4);
  auto pc = make_partial_conjugation(p4, 2, p4->vertex(0));
  CHECK(maps_into_conjugate(pc, p4->vertex(0)));
  // {a, d}: a and d would have to be conjugated into A_{a,d} by one element
  CHECK(maps_into_conjugate(pc, p4->set({0, 3})) ==
        brute_maps_into_conjugate(pc, p4->set({0, 3}), ball(p4, 6)));
}

TEST_CASE("compute_L examples and serial/parallel agreement") {
  auto f2 = SimplicialGraph::make({"a", "b"}, {});
  CHECK(compute_L(FiniteOuterGroup::trivial(f2)).size() == 4);
  CHECK(compute_L(close_group(f2, {make_inversion(f2, 0)})).size() == 4);
  auto p5 = path_graph(5);
  CHECK(compute_L(FiniteOuterGroup::trivial(p5)).size() == 32);
  for (const auto& inv : involutions_u0(p5)) {
    auto h = close_group(p5, {inv});
    CHECK(compute_L(h) == compute_L_parallel(h, 4));
  }
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(RAAGKIT_GOLDEN_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TEST_CASE("4-path golden membership tables") {
  auto p4 = path_graph(4);
  // conjugating a by c is inner on the 4-path, so H is trivial in Out
  auto pc = close_group(p4, {make_partial_conjugation(p4, 2, p4->vertex(0))});
  CHECK(pc.size() == 1);
  CHECK(table_text(compute_L(pc)) == golden("path4_partial_conjugation_L.txt"));

  auto fold = close_group(p4, {compose(make_inversion(p4, 2), make_transvection(p4, 0, 2))});
  CHECK(fold.size() == 2);
  auto l = compute_L(fold);
  CHECK(table_text(l) == golden("path4_fold_involution_L.txt"));
  auto conj = ball(p4, 6);
  for (std::uint64_t s = 0; s < 16; ++s)
    CHECK(l.contains(s) == brute_maps_into_conjugate(fold.element(1), p4->set(s), conj));
}

TEST_CASE("is_invariant agrees with brute-force conjugator search on graphs up to 4 vertices") {
  std::mt19937_64 rng(seed() + 31);
  int groups = 0;
  for (int n = 1; n <= 4; ++n) {
    auto graphs = all_graphs(n);
    for (const auto& g : graphs) {
      if (n == 4 && rng() % 8 != 0) continue;
      auto conj = ball(g, n <= 3 ? 6 : 5);
      auto invs = involutions_u0(g);
      for (std::size_t i = 0; i < invs.size(); ++i) {
        std::vector<RaagMap> gens{invs[i]};
        if (rng() % 2) gens.push_back(invs[rng() % invs.size()]);
        FiniteOuterGroup h = FiniteOuterGroup::trivial(g);
        try {
          h = close_group(g, gens, {4, {}});
        } catch (const CapExceeded&) {
          continue;
        }
        ++groups;
        for (std::uint64_t s = 0; s < (1ULL << n); ++s) {
          bool oracle = true;
          for (std::size_t e = 1; e < h.size() && oracle; ++e)
            oracle = brute_maps_into_conjugate(h.element(static_cast<int>(e)), g->set(s), conj);
          CHECK_MESSAGE(is_invariant(h, g->set(s)) == oracle, g->set(s).to_string());
        }
      }
    }
  }
  CHECK(groups > 50);
}

TEST_CASE("closure laws for U0 groups on graphs up to 5 vertices") {
  std::mt19937_64 rng(seed() + 41);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_graph(rng, 3 + trial % 3);
    auto invs = involutions_u0(g);
    std::vector<RaagMap> gens{invs[rng() % invs.size()], invs[rng() % invs.size()]};
    FiniteOuterGroup h = FiniteOuterGroup::trivial(g);
    try {
      h = close_group(g, gens, {8, {}});
    } catch (const CapExceeded&) {
      continue;
    }
    auto l = compute_L(h);
    auto report = verify_closure(l, {true, 8});
    for (const auto& c : report.checks) CHECK_MESSAGE(c.passed, c.check);
  }
}

TEST_CASE("verify_closure flags a hand-built system") {
  auto f2 = SimplicialGraph::make({"a", "b"}, {});
  InvariantSystem bad(f2, {0, 1});
  auto r = verify_closure(bad);
  CHECK_FALSE(r.ok());
  CHECK_THROWS_AS(require_closure(bad), ViolationFound);
  require_closure(compute_L(FiniteOuterGroup::trivial(f2)));
}

TEST_CASE("assembly plans") {
  auto two_edges = SimplicialGraph::make({"a", "b", "c", "d"}, {{0, 1}, {2, 3}});
  auto l = compute_L(FiniteOuterGroup::trivial(two_edges));
  const VertexSet xi = two_edges->set({0, 1});
  CHECK_THROWS_AS(assembly_plan(l, xi), AmbiguousMaximal);
  auto plan = assembly_plan(l, xi, TiePolicy::least_lex);
  CHECK(plan.gamma_prime == two_edges->set({0, 1, 2}));
  CHECK(plan.part == AssemblyCase::all_but_one);
  CHECK(plan.maximal_candidates.size() == 2);
  CHECK_THROWS_AS(assembly_plan(l, two_edges->all()), NoProperSupergraph);

  // a connected graph always lands in the second case
  auto p4 = path_graph(4);
  auto lp = compute_L(FiniteOuterGroup::trivial(p4));
  auto pp = assembly_plan(lp, p4->set({0, 1, 2}));
  CHECK(pp.part == AssemblyCase::all_but_one);
  CHECK(pp.theta == p4->vertex(3));
  CHECK(pp.theta_bar == p4->set({2, 3}));
  CHECK(pp.delta == p4->set({2}));

  // components case: Γ′ is the edge of an edge plus an isolated vertex
  auto ev = SimplicialGraph::make({"a", "b", "c"}, {{0, 1}});
  auto le = compute_L(FiniteOuterGroup::trivial(ev));
  auto pe = assembly_plan(le, ev->set({0, 1}));
  CHECK(pe.part == AssemblyCase::components);
  CHECK(pe.theta == ev->vertex(2));
  CHECK(pe.theta_bar == ev->vertex(2));
}
