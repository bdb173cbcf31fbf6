#include "doctest.h"

#include <map>
#include <random>

#include "raagkit/action.hpp"
#include "support.hpp"

using namespace raag;
using namespace raag::testing;

namespace {

std::vector<CircleMove> fixed_moves(int n) {
  std::vector<CircleMove> mv;
  for (int v = 0; v < n; ++v) mv.push_back({v, false, 0});
  return mv;
}

// Z/2 flipping the circles in `mask`.
ComplexAction flip_action(const MarkedComplex& m, std::uint64_t mask) {
  const int n = m.graph->vertex_count();
  auto mv = fixed_moves(n);
  for (int v = 0; v < n; ++v)
    if ((mask >> v) & 1U) mv[static_cast<std::size_t>(v)].flip = true;
  return coordinate_action(m, {{0, 1}, {1, 0}}, {fixed_moves(n), mv});
}

RaagMap inversions(const GraphPtr& g, std::uint64_t mask) {
  RaagMap f = RaagMap::identity(g);
  for (int v = 0; v < g->vertex_count(); ++v)
    if ((mask >> v) & 1U) f = compose(f, make_inversion(g, v));
  return f;
}

int add_square(CubeComplex& x, int left, int right, int bottom, int top) {
  Cell c;
  c.lengths = {Length(1), Length(1)};
  c.facets.push_back({FacetRef{left, {0}, {false}}, FacetRef{right, {0}, {false}}});
  c.facets.push_back({FacetRef{bottom, {0}, {false}}, FacetRef{top, {0}, {false}}});
  return x.add_cell(std::move(c));
}

// Cells keyed by torus coordinates, edges with their labels.
std::map<std::vector<int>, std::string> by_coords(const MarkedComplex& m) {
  std::map<std::vector<int>, std::string> out;
  for (int k = 0; k <= m.complex.dimension(); ++k)
    for (int c = 0; c < m.complex.count(k); ++c)
      out[m.complex.cell(k, c).coords] = k == 1 ? m.labels[static_cast<std::size_t>(c)].to_string() : "";
  return out;
}

GraphPtr labelled(std::vector<std::string> labels, std::vector<std::pair<std::string, std::string>> edges) {
  return SimplicialGraph::from_labels(std::move(labels), edges);
}

}  // namespace

TEST_CASE("salvetti examples") {
  const auto point = salvetti(labelled({"a"}, {}));
  CHECK(point.complex.vertex_count() == 2);
  CHECK(point.complex.edge_count() == 2);
  CHECK(point.complex.dimension() == 1);

  const auto torus = salvetti(labelled({"a", "b"}, {{"a", "b"}}));
  CHECK(torus.complex.dimension() == 2);
  CHECK(torus.complex.count(2) == 4);
  CHECK(torus.complex.vertex_count() == 4);

  const auto three = salvetti(labelled({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}));
  CHECK(three.complex.dimension() == 3);
  CHECK(three.complex.count(3) == 8);
}

TEST_CASE("salvetti is valid, marked and NPC on small graphs") {
  for (const auto& g : all_graphs_up_to(4)) {
    const auto m = salvetti(g);
    m.complex.validate();
    CHECK(m.complex.dimension() == dimension(*g));
    CHECK(check_marking(m).ok());
    const auto r = npc_check(m.complex);
    CHECK(r.ok);
    CHECK(npc_check_parallel(m.complex, 2).ok == r.ok);
  }
}

TEST_CASE("cube corner without the cube fails the link condition") {
  CubeComplex x;
  const int o = x.add_vertex(), px = x.add_vertex(), py = x.add_vertex(), pz = x.add_vertex();
  const int pxy = x.add_vertex(), pyz = x.add_vertex(), pxz = x.add_vertex();
  const int ex = x.add_edge(o, px, 1), ey = x.add_edge(o, py, 1), ez = x.add_edge(o, pz, 1);
  const int ex_y = x.add_edge(py, pxy, 1), ey_x = x.add_edge(px, pxy, 1);
  const int ey_z = x.add_edge(pz, pyz, 1), ez_y = x.add_edge(py, pyz, 1);
  const int ex_z = x.add_edge(pz, pxz, 1), ez_x = x.add_edge(px, pxz, 1);
  add_square(x, ey, ey_x, ex, ex_y);
  add_square(x, ez, ez_y, ey, ey_z);
  add_square(x, ez, ez_x, ex, ex_z);
  x.validate();
  const auto r = npc_check(x);
  REQUIRE_FALSE(r.ok);
  CHECK(r.witness->kind == "empty_simplex");
  CHECK(r.witness->vertex == o);
  CHECK(r.witness->simplex == std::vector<HalfEdge>{{ex, 0}, {ey, 0}, {ez, 0}});
  CHECK_FALSE(npc_check_parallel(x).ok);

  CubeComplex sq;
  const int a = sq.add_vertex(), b = sq.add_vertex(), c = sq.add_vertex(), d = sq.add_vertex();
  add_square(sq, sq.add_edge(a, c, 1), sq.add_edge(b, d, 1), sq.add_edge(a, b, 1), sq.add_edge(c, d, 1));
  sq.validate();
  CHECK(npc_check(sq).ok);
}

TEST_CASE("malformed complexes are rejected") {
  CubeComplex x;
  const int a = x.add_vertex(), b = x.add_vertex();
  CHECK_THROWS_AS(x.add_edge(a, 7, 1), ComplexError);
  x.add_edge(a, b, 0);
  CHECK_THROWS_AS(x.validate(), ComplexError);
}

TEST_CASE("products") {
  const auto ca = salvetti(labelled({"a"}, {}));
  const auto cb = salvetti(labelled({"b"}, {}));
  const auto t = product(ca, cb);
  const auto s = salvetti(labelled({"a", "b"}, {{"a", "b"}}));
  t.complex.validate();
  for (int k = 0; k <= 2; ++k) CHECK(t.complex.count(k) == s.complex.count(k));
  CHECK(check_marking(t).ok());
  CHECK(npc_check(t.complex).ok);
  CHECK(by_coords(t) == by_coords(s));

  const auto pt = salvetti(SimplicialGraph::make({}, {}));
  const auto same = product(s, pt);
  CHECK(same.complex == s.complex);

  const auto bc = salvetti(labelled({"b", "c"}, {{"b", "c"}}));
  const auto abc = product(ca, bc);
  CHECK(abc.complex.dimension() == 3);
  CHECK(abc.graph->edge_count() == 3);
  CHECK(check_marking(abc).ok());
}

TEST_CASE("product marking abelianises as a direct sum") {
  const auto x = salvetti(labelled({"a", "b"}, {}));
  const auto y = salvetti(labelled({"c"}, {}));
  const auto p = product(x, y);
  CHECK(check_marking(p).ok());
  std::vector<long long> sum(3, 0);
  for (const auto& [e, w] : marking_words(p)) {
    const auto ab = abelianize(w);
    for (int i = 0; i < 3; ++i) sum[static_cast<std::size_t>(i)] += ab[static_cast<std::size_t>(i)] != 0;
  }
  for (long long s : sum) CHECK(s >= 1);
}

TEST_CASE("edge-path readings agree with spanning-tree words") {
  std::mt19937_64 rng(seed());
  for (const auto& g : all_graphs_up_to(4)) {
    const auto m = salvetti(g);
    const auto t = spanning_tree(m.complex, m.basepoint);
    const auto words = marking_words(m, t);
    for (int trial = 0; trial < 10; ++trial) {
      EdgePath p;
      int at = m.basepoint;
      std::uniform_int_distribution<int> len(1, 6);
      const int steps = len(rng);
      for (int i = 0; i < steps; ++i) {
        std::vector<EdgeStep> out;
        for (int e = 0; e < m.complex.edge_count(); ++e) {
          if (m.complex.source(e) == at) out.push_back({e, true});
          if (m.complex.target(e) == at) out.push_back({e, false});
        }
        const EdgeStep s = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
        p.push_back(s);
        at = step_end(m.complex, s);
      }
      const EdgePath home = tree_path(m.complex, t, at);
      const EdgePath back = reverse_path(home);
      p.insert(p.end(), back.begin(), back.end());
      NormalForm tree = identity(g);
      for (const auto& s : p) {
        if (t.tree_edge[static_cast<std::size_t>(s.edge)]) continue;
        const NormalForm& w = words.at(s.edge);
        tree = tree * (s.forward ? w : inverse(w));
      }
      CHECK(read_path(m, p) == tree);
      CHECK(read_path(m, p).is_identity() == tree.is_identity());
    }
    for (int sq = 0; sq < m.complex.count(2); ++sq) CHECK(square_boundary(m, sq).is_identity());
  }
}

TEST_CASE("induced outer action examples") {
  const auto ga = labelled({"a"}, {});
  const auto circle = salvetti(ga);
  const auto id = induced_outer_action(circle, trivial_action(circle.complex), 0);
  CHECK(id == RaagMap::identity(ga));
  const auto flip = flip_action(circle, 1);
  CHECK(induced_outer_action(circle, flip, 1).image(0) == parse_element(ga, "a^-1"));

  const auto gab = labelled({"a", "b"}, {{"a", "b"}});
  const auto torus = salvetti(gab);
  const auto both = flip_action(torus, 3);
  const auto f = induced_outer_action(torus, both, 1);
  CHECK(f.image(0) == parse_element(gab, "a^-1"));
  CHECK(f.image(1) == parse_element(gab, "b^-1"));
}

TEST_CASE("realises examples") {
  const auto ga = labelled({"a"}, {});
  const auto circle = salvetti(ga);
  const auto flip = flip_action(circle, 1);
  CHECK(realises(circle, flip, {RaagMap::identity(ga), make_inversion(ga, 0)}));
  CHECK_FALSE(realises(circle, flip, {RaagMap::identity(ga), RaagMap::identity(ga)}));
  const auto group = close_group(ga, {make_inversion(ga, 0)});
  CHECK(realises(circle, flip, group));
  for (const auto& g : all_graphs_up_to(3)) {
    const auto m = salvetti(g);
    CHECK(realises(m, trivial_action(m.complex), FiniteOuterGroup::trivial(g)));
  }
}

TEST_CASE("graph symmetries and flips act on salvetti complexes") {
  const auto g = path_graph(3);
  const auto m = salvetti(g);
  std::vector<CircleMove> swap{{2, false, 0}, {1, true, 0}, {0, false, 0}};
  const auto a = coordinate_action(m, {{0, 1}, {1, 0}}, {fixed_moves(3), swap});
  const auto f = induced_outer_action(m, a, 1);
  const auto expected = compose(make_graph_symmetry(g, {2, 1, 0}), make_inversion(g, 1));
  CHECK(outer_equal(f, expected));
  const auto moved = coordinate_action(m, {{0}}, {fixed_moves(3)});
  CHECK(moved == trivial_action(m.complex));
}

TEST_CASE("cocycle consistency and basepoint independence") {
  std::mt19937_64 rng(seed());
  for (int trial = 0; trial < 12; ++trial) {
    const auto g = random_graph(rng, 4);
    const std::uint64_t mask = std::uniform_int_distribution<std::uint64_t>(1, 15)(rng);
    const auto m = salvetti(g);
    const auto a = flip_action(m, mask);
    CHECK(realises(m, a, {RaagMap::identity(g), inversions(g, mask)}));
    const auto f1 = induced_outer_action(m, a, 1);
    CHECK(outer_equal(compose(f1, f1), induced_outer_action(m, a, 0)));
    for (int k = 0; k < 3; ++k) {
      const int root = std::uniform_int_distribution<int>(0, m.complex.vertex_count() - 1)(rng);
      CHECK(outer_equal(induced_outer_action(m, a, 1, root), f1));
    }
  }
}

TEST_CASE("subdivision keeps marking, curvature and the action") {
  const auto g = labelled({"a", "b", "c"}, {{"a", "b"}});
  const auto m = salvetti(g);
  const auto s = subdivide(m);
  const auto& x = s.marked.complex;
  x.validate();
  CHECK(x.count(2) == 4 * m.complex.count(2));
  CHECK(x.edge_count() == 2 * m.complex.edge_count() + 4 * m.complex.count(2));
  CHECK(check_marking(s.marked).ok());
  CHECK(npc_check(x).ok);
  CHECK(s.marked.moduli == std::vector<int>{4, 4, 4});
  // Same cells as the finer complex; labels differ by a gauge.
  std::vector<std::vector<int>> fine, halved;
  for (const auto& [c, l] : by_coords(s.marked)) halved.push_back(c);
  for (const auto& [c, l] : by_coords(salvetti(g, 4))) fine.push_back(c);
  CHECK(halved == fine);

  const auto a = flip_action(m, 5);
  const auto sa = subdivide_action(m, s, a);
  CHECK(outer_equal(induced_outer_action(s.marked, sa, 1), induced_outer_action(m, a, 1)));
  CHECK(realises(s.marked, sa, {RaagMap::identity(g), inversions(g, 5)}));
}
