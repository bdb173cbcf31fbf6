#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "raagkit/graph.hpp"
#include "raagkit/aut.hpp"
#include "raagkit/word.hpp"

namespace raag::testing {

inline std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

/// Graph on n vertices a, b, c, ... whose edges are selected by the bits of
/// `code` over the pairs (0,1), (0,2), ..., (n-2,n-1).
inline GraphPtr graph_from_code(int n, std::uint64_t code) {
  std::vector<std::pair<int, int>> edges;
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit)
      if ((code >> bit) & 1U) edges.emplace_back(u, v);
  return SimplicialGraph::make(default_labels(n), edges);
}

inline std::uint64_t pair_count(int n) { return static_cast<std::uint64_t>(n * (n - 1) / 2); }

/// Every labelled graph on n vertices.
inline std::vector<GraphPtr> all_graphs(int n) {
  std::vector<GraphPtr> out;
  for (std::uint64_t c = 0; c < (1ULL << pair_count(n)); ++c) out.push_back(graph_from_code(n, c));
  return out;
}

inline std::vector<GraphPtr> all_graphs_up_to(int n_max, int n_min = 1) {
  std::vector<GraphPtr> out;
  for (int n = n_min; n <= n_max; ++n) {
    auto g = all_graphs(n);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

inline GraphPtr random_graph(std::mt19937_64& rng, int n, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  std::uint64_t code = 0;
  for (std::uint64_t b = 0; b < pair_count(n); ++b)
    if (coin(rng)) code |= 1ULL << b;
  return graph_from_code(n, code);
}

inline GraphPtr path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return SimplicialGraph::make(default_labels(n), e);
}

inline GraphPtr cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return SimplicialGraph::make(default_labels(n), e);
}

inline Word random_word(std::mt19937_64& rng, const GraphPtr& g, int len) {
  std::uniform_int_distribution<int> vd(0, g->vertex_count() - 1);
  std::bernoulli_distribution sign(0.5);
  Letters ls;
  for (int i = 0; i < len; ++i) ls.emplace_back(vd(rng), sign(rng));
  return Word(g, ls);
}

inline std::uint64_t seed() {
  if (const char* s = std::getenv("RAAGKIT_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240917ULL;
}

/// All words of exactly `len` letters, in lexicographic code order.
template <typename F>
void for_each_word(const GraphPtr& g, int len, F&& f) {
  const int k = 2 * g->vertex_count();
  std::vector<int> digits(static_cast<std::size_t>(len), 0);
  while (true) {
    Letters ls;
    for (int d : digits) ls.push_back(Letter::from_code(static_cast<std::uint16_t>(d)));
    f(Word(g, ls));
    int i = len - 1;
    while (i >= 0 && ++digits[static_cast<std::size_t>(i)] == k) digits[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
  }
}

/// Order-two automorphisms built only from inversions, folds and partial
/// conjugations (so their outer classes lie in U0): single inversions,
/// i_v composed with a partial conjugation by v, and i_v composed with a
/// fold w -> w v.
inline std::vector<RaagMap> involutions_u0(const GraphPtr& g) {
  std::vector<RaagMap> out;
  const int n = g->vertex_count();
  for (int v = 0; v < n; ++v) out.push_back(make_inversion(g, v));
  for (int v = 0; v < n; ++v) {
    const VertexSet outside = g->all() - star(g->vertex(v));
    auto comps = components(outside);
    if (comps.size() < 2) continue;
    for (const auto& c : comps)
      out.push_back(compose(make_inversion(g, v), make_partial_conjugation(g, v, c)));
  }
  for (int w = 0; w < n; ++w)
    for (int v = 0; v < n; ++v)
      if (transvection_valid(*g, w, v) && !g->adjacent(v, w))
        out.push_back(compose(make_inversion(g, v), make_transvection(g, w, v)));
  return out;
}

}  // namespace raag::testing
