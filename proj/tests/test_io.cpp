#include "doctest.h"

#include "raagkit/io.hpp"
#include "raagkit/realisation.hpp"
#include "support.hpp"

using namespace raag;
using namespace raag::testing;

TEST_CASE("graph json") {
  const auto g = graph_from_json(Json::parse(R"({"vertices": ["a","b","c"], "edges": [["b","a"],["b","c"]]})"));
  CHECK(g->adjacent(0, 1));
  CHECK(g->edge_count() == 2);
  CHECK(*graph_from_json(graph_to_json(*g)) == *g);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"vertices": ["a","b"], "edges": [["a","b"],["b","a"]]})")), GraphError);
  CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"vertices": ["a"]})")), FormatError);
}

TEST_CASE("automorphism json round trip keeps tags") {
  const auto g = path_graph(4);
  const RaagMap f = compose(make_transvection(g, 0, 1), make_inversion(g, 2));
  const Json j = map_to_json(f);
  const RaagMap back = map_from_json(g, j);
  CHECK(back == f);
  CHECK(back.factors() == f.factors());
  CHECK(dump(map_to_json(back)) == dump(j));

  Json untagged = j;
  untagged.erase("tag");
  untagged.erase("factors");
  CHECK_FALSE(map_from_json(g, untagged).tagged());
  untagged["images"]["a"] = "a a";
  CHECK_THROWS(map_from_json(g, untagged));
}

TEST_CASE("lengths") {
  CHECK(length_to_string(Length(1, 2)) == "1/2");
  CHECK(length_to_string(Length(3)) == "3");
  CHECK(length_from_string("2/4") == Length(1, 2));
  CHECK_THROWS_AS(length_from_string("1/0"), FormatError);
  CHECK_THROWS_AS(length_from_string("x"), FormatError);
}

TEST_CASE("complex, marking and action round trips are bit exact") {
  for (const auto& g : all_graphs_up_to(3)) {
    const auto m = salvetti(g, 4);
    std::vector<CircleMove> id, fl;
    for (int v = 0; v < g->vertex_count(); ++v) {
      id.push_back({v, false, 0});
      fl.push_back({v, true, g->vertex_count() == 1 ? 1 : 0});
    }
    const auto a = coordinate_action(m, {{0, 1}, {1, 0}}, {id, fl});
    const Json mj = marked_to_json(m), aj = action_to_json(a);
    const auto m2 = marked_from_json(Json::parse(dump(mj)));
    CHECK(m2.complex == m.complex);
    CHECK(m2.labels == m.labels);
    CHECK(m2.basepoint == m.basepoint);
    CHECK(dump(marked_to_json(m2)) == dump(mj));
    CHECK(action_from_json(Json::parse(dump(aj))) == a);
  }
}

TEST_CASE("bundle round trip and validation") {
  const auto g = SimplicialGraph::from_labels({"a", "b"}, {{"a", "b"}});
  Bundle b{salvetti(g), {}, {RaagMap::identity(g), compose(make_inversion(g, 0), make_inversion(g, 1))}};
  b.action = coordinate_action(b.marked, {{0, 1}, {1, 0}}, {{{0, false, 0}, {1, false, 0}}, {{0, true, 0}, {1, true, 0}}});
  const Json j = bundle_to_json(b);
  const Bundle back = bundle_from_json(Json::parse(dump(j)));
  CHECK(dump(bundle_to_json(back)) == dump(j));
  CHECK(realises(back.marked, back.action, back.phi));

  Json broken = j;
  broken["automorphisms"].erase(1);
  CHECK_THROWS_AS(bundle_from_json(broken), FormatError);
  broken = j;
  broken["marked"]["complex"]["cells"][1][0]["facets"][0][0]["cell"] = 99;
  CHECK_THROWS(bundle_from_json(broken));
}
