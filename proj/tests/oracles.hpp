#pragma once

// Brute-force reference computations used to cross-check the library.
// They deliberately avoid the library's canonical-form and conjugacy code
// paths where possible.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "raagkit/aut.hpp"
#include "raagkit/word.hpp"

namespace raag::testing {

inline bool commute(const SimplicialGraph& g, Letter a, Letter b) {
  return g.adjacent(a.vertex(), b.vertex());
}

/// Lexicographically least word reachable by swapping adjacent commuting
/// letters (exhaustive BFS over the swap class).
inline Letters swap_class_min(const SimplicialGraph& g, const Letters& w) {
  std::set<Letters> seen{w};
  std::deque<Letters> q{w};
  while (!q.empty()) {
    Letters cur = q.front();
    q.pop_front();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (cur[i] == cur[i + 1] || !commute(g, cur[i], cur[i + 1])) continue;
      Letters nxt = cur;
      std::swap(nxt[i], nxt[i + 1]);
      if (seen.insert(nxt).second) q.push_back(nxt);
    }
  }
  return *seen.begin();
}

/// Applies the two basic moves in random order until no reduction applies.
inline Letters random_reduction(std::mt19937_64& rng, const SimplicialGraph& g, Letters w) {
  while (true) {
    for (int s = 0; s < 3 && w.size() > 1; ++s) {
      std::size_t i = rng() % (w.size() - 1);
      if (commute(g, w[i], w[i + 1])) std::swap(w[i], w[i + 1]);
    }
    std::vector<std::pair<std::size_t, std::size_t>> moves;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        if (w[j] != w[i].inv()) continue;
        bool ok = true;
        for (std::size_t k = i + 1; k < j && ok; ++k) ok = commute(g, w[i], w[k]);
        if (ok) moves.emplace_back(i, j);
      }
    if (moves.empty()) return w;
    auto [i, j] = moves[rng() % moves.size()];
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
  }
}

/// Every element of word length at most r, as normal forms.
inline std::vector<NormalForm> ball(const GraphPtr& g, int r) {
  std::set<Letters> seen;
  std::vector<NormalForm> out{identity(g)};
  seen.insert(Letters{});
  std::size_t lo = 0;
  for (int step = 0; step < r; ++step) {
    const std::size_t hi = out.size();
    for (std::size_t i = lo; i < hi; ++i)
      for (int v = 0; v < g->vertex_count(); ++v)
        for (bool inv : {false, true}) {
          NormalForm n = out[i] * generator(g, v, inv);
          if (seen.insert(n.letters()).second) out.push_back(n);
        }
    lo = hi;
  }
  return out;
}

/// Exhaustive conjugator search of length at most r.
inline std::optional<NormalForm> brute_conjugate(const NormalForm& w1, const NormalForm& w2,
                                                 int r) {
  for (const auto& c : ball(w1.graph(), r))
    if (conjugate(w1, c) == w2) return c;
  return std::nullopt;
}

/// Searches `conjugators` for y with y^-1 h(v) y in A_Δ for every v in Δ.
inline bool brute_maps_into_conjugate(const RaagMap& h, const VertexSet& delta,
                                      const std::vector<NormalForm>& conjugators) {
  for (const auto& y : conjugators) {
    bool ok = true;
    for (int v : delta.members()) {
      const NormalForm t = inverse(y) * h.image(v) * y;
      for (auto l : t.letters())
        if (!delta.contains(l.vertex())) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace raag::testing
