#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace raag;
using namespace raag::testing;

namespace {

GraphPtr edge_ab() { return SimplicialGraph::make({"a", "b"}, {{0, 1}}); }
GraphPtr free2() { return SimplicialGraph::make({"a", "b"}, {}); }

std::string nf(const GraphPtr& g, const char* w) { return parse_element(g, w).to_string(); }

}  // namespace

TEST_CASE("reduce examples") {
  CHECK(nf(edge_ab(), "a b a^-1") == "b");
  CHECK(nf(free2(), "a b a^-1") == "a b a^-1");
  CHECK(nf(edge_ab(), "b a") == "a b");
  CHECK(nf(edge_ab(), "") == "");
  CHECK_THROWS_AS(parse_word(edge_ab(), "a z"), WordError);
}

TEST_CASE("cyclic reduction examples") {
  auto g = free2();
  auto [y, core] = cyclically_reduce(parse_word(g, "a b a^-1"));
  CHECK(y.to_string() == "a^-1");
  CHECK(core.to_string() == "b");
  CHECK(conjugate(core, y) == parse_element(g, "a b a^-1"));

  auto r2 = cyclically_reduce(parse_word(g, "a b"));
  CHECK(r2.conjugator.is_identity());
  CHECK(r2.core.to_string() == "a b");
  auto r3 = cyclically_reduce(parse_word(g, "a a^-1"));
  CHECK(r3.conjugator.is_identity());
  CHECK(r3.core.is_identity());
}

TEST_CASE("conjugacy examples") {
  auto g = free2();
  auto c = is_conjugate(parse_word(g, "a b"), parse_word(g, "b a"));
  REQUIRE(c);
  CHECK(c->to_string() == "a");
  CHECK_FALSE(is_conjugate(parse_word(g, "a b"), parse_word(g, "a b^-1")));
  auto e = is_conjugate(parse_word(edge_ab(), "a b"), parse_word(edge_ab(), "b a"));
  REQUIRE(e);
  CHECK(e->is_identity());
}

TEST_CASE("support, special subgroups, abelianisation") {

  auto g = edge_ab();
  CHECK(support(parse_element(g, "a b a^-1")).members() == std::vector<int>{1});
  auto f2 = free2();
  CHECK_FALSE(in_special_subgroup(parse_word(f2, "a b"), f2->vertex(0)));
  CHECK(abelianize(parse_word(free2(), "a b a b^-1")) == std::vector<long long>{2, 0});
}

TEST_CASE("normal form matches randomized reduction plus exhaustive swap minimum") {
  std::mt19937_64 rng(seed());
  for (int t = 0; t < 400; ++t) {
    auto g = random_graph(rng, 1 + static_cast<int>(rng() % 5));
    auto w = random_word(rng, g, static_cast<int>(rng() % 11));
    Letters a = swap_class_min(*g, random_reduction(rng, *g, w.letters));
    Letters b = swap_class_min(*g, random_reduction(rng, *g, w.letters));
    CHECK(a == b);
    CHECK(reduce(w).letters() == a);
  }
}

TEST_CASE("reduce is compatible with multiplication and idempotent") {
  std::mt19937_64 rng(seed() + 7);
  for (int t = 0; t < 300; ++t) {
    auto g = random_graph(rng, 1 + static_cast<int>(rng() % 5));
    auto u = random_word(rng, g, static_cast<int>(rng() % 9));
    auto v = random_word(rng, g, static_cast<int>(rng() % 9));
    Letters uv = u.letters;
    uv.insert(uv.end(), v.letters.begin(), v.letters.end());
    CHECK(reduce(Word(g, uv)) == reduce(u) * reduce(v));
    CHECK(reduce(reduce(u).word()) == reduce(u));
    CHECK((reduce(u) * inverse(reduce(u))).is_identity());
  }
}

TEST_CASE("cyclic reduction returns a genuinely cyclically reduced core") {
  std::mt19937_64 rng(seed() + 3);
  for (int t = 0; t < 300; ++t) {
    auto g = random_graph(rng, 1 + static_cast<int>(rng() % 5));
    auto w = reduce(random_word(rng, g, static_cast<int>(rng() % 12)));
    auto [y, core] = cyclically_reduce(w);
    CHECK(conjugate(core, y) == w);
    // no letter at the front has its inverse movable to the back
    Letters doubled = core.letters();
    doubled.insert(doubled.end(), core.letters().begin(), core.letters().end());
    CHECK(reduce(Word(g, doubled)).length() == 2 * core.length());
  }
}

TEST_CASE("conjugacy agrees with bounded brute force on small graphs") {
  std::mt19937_64 rng(seed() + 11);
  for (int t = 0; t < 60; ++t) {
    auto g = random_graph(rng, 1 + static_cast<int>(rng() % 3));
    ConjugacySolver solver(g);
    auto w1 = reduce(random_word(rng, g, static_cast<int>(rng() % 5)));
    // half the time a genuine conjugate
    NormalForm w2 = (t % 2) ? conjugate(w1, reduce(random_word(rng, g, 2))) :
                              reduce(random_word(rng, g, static_cast<int>(rng() % 5)));
    auto c = solver.is_conjugate(w1, w2);
    auto b = brute_conjugate(w1, w2, 4);
    if (b) CHECK(c.has_value());
    if (c) {
      CHECK(conjugate(w1, *c) == w2);
    }
    if (!c) CHECK_FALSE(b.has_value());
  }
}

TEST_CASE("cores of conjugates of special subgroup elements stay in the subgroup") {
  std::mt19937_64 rng(seed() + 5);
  for (int t = 0; t < 300; ++t) {
    auto g = random_graph(rng, 2 + static_cast<int>(rng() % 4));
    const VertexSet sigma = g->set((rng() & g->all().bits()) | 1ULL);
    Letters ls;
    auto mem = sigma.members();
    for (int i = 0; i < 6; ++i) ls.emplace_back(mem[rng() % mem.size()], rng() % 2);
    auto u = reduce(Word(g, ls));
    auto x = reduce(random_word(rng, g, 5));
    auto core = cyclically_reduce(conjugate(u, x)).core;
    CHECK(support(core).subset_of(sigma));
  }
}

TEST_CASE("translate between graphs with the same labels") {
  auto g1 = free2();
  auto g2 = SimplicialGraph::make({"b", "a", "c"}, {});
  auto w = translate(parse_element(g1, "a b^-1"), g2);
  CHECK(w.to_string() == "a b^-1");
  CHECK_THROWS_AS(translate(parse_element(g2, "c"), g1), WordError);
}
