#include "raagkit/marked.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace raag {

int step_start(const CubeComplex& x, EdgeStep s) {
  return s.forward ? x.source(s.edge) : x.target(s.edge);
}

int step_end(const CubeComplex& x, EdgeStep s) {
  return s.forward ? x.target(s.edge) : x.source(s.edge);
}

EdgePath reverse_path(const EdgePath& p) {
  EdgePath r;
  r.reserve(p.size());
  for (auto it = p.rbegin(); it != p.rend(); ++it) r.push_back({it->edge, !it->forward});
  return r;
}

NormalForm read_path(const MarkedComplex& m, const EdgePath& p) {
  Letters ls;
  for (const auto& s : p) {
    const NormalForm& l = m.labels.at(static_cast<std::size_t>(s.edge));
    if (s.forward) {
      ls.insert(ls.end(), l.letters().begin(), l.letters().end());
    } else {
      for (auto it = l.letters().rbegin(); it != l.letters().rend(); ++it) ls.push_back(it->inv());
    }
  }
  return reduce(Word(m.graph, std::move(ls)));
}

namespace {

std::vector<std::vector<EdgeStep>> out_steps(const CubeComplex& x) {
  std::vector<std::vector<EdgeStep>> adj(static_cast<std::size_t>(x.vertex_count()));
  for (int e = 0; e < x.edge_count(); ++e) {
    adj[static_cast<std::size_t>(x.source(e))].push_back({e, true});
    adj[static_cast<std::size_t>(x.target(e))].push_back({e, false});
  }
  return adj;
}

}  // namespace

SpanningTree spanning_tree(const CubeComplex& x, int root) {
  if (root < 0 || root >= x.vertex_count()) throw ComplexError("root is not a vertex");
  const auto adj = out_steps(x);
  SpanningTree t;
  t.root = root;
  t.parent.assign(static_cast<std::size_t>(x.vertex_count()), EdgeStep{-1, true});
  t.depth.assign(static_cast<std::size_t>(x.vertex_count()), -1);
  t.tree_edge.assign(static_cast<std::size_t>(x.edge_count()), false);
  t.depth[static_cast<std::size_t>(root)] = 0;
  std::deque<int> queue{root};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const auto& s : adj[static_cast<std::size_t>(u)]) {
      const int w = step_end(x, s);
      if (t.depth[static_cast<std::size_t>(w)] >= 0) continue;
      t.depth[static_cast<std::size_t>(w)] = t.depth[static_cast<std::size_t>(u)] + 1;
      t.parent[static_cast<std::size_t>(w)] = s;
      t.tree_edge[static_cast<std::size_t>(s.edge)] = true;
      queue.push_back(w);
    }
  }
  return t;
}

EdgePath tree_path(const CubeComplex& x, const SpanningTree& t, int v) {
  if (t.depth.at(static_cast<std::size_t>(v)) < 0) throw ComplexError("vertex unreachable from root");
  EdgePath p;
  while (v != t.root) {
    const EdgeStep s = t.parent[static_cast<std::size_t>(v)];
    p.push_back(s);
    v = step_start(x, s);
  }
  std::reverse(p.begin(), p.end());
  return p;
}

EdgePath shortest_path(const CubeComplex& x, int from, int to) {
  return tree_path(x, spanning_tree(x, from), to);
}

std::map<int, NormalForm> marking_words(const MarkedComplex& m, const SpanningTree& t) {
  const CubeComplex& x = m.complex;
  std::vector<NormalForm> pot(static_cast<std::size_t>(x.vertex_count()), identity(m.graph));
  std::vector<int> order(static_cast<std::size_t>(x.vertex_count()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return t.depth[static_cast<std::size_t>(a)] < t.depth[static_cast<std::size_t>(b)];
  });
  for (int v : order) {
    if (v == t.root || t.depth[static_cast<std::size_t>(v)] < 0) continue;
    const EdgeStep s = t.parent[static_cast<std::size_t>(v)];
    pot[static_cast<std::size_t>(v)] = pot[static_cast<std::size_t>(step_start(x, s))] * read_path(m, {s});
  }
  std::map<int, NormalForm> out;
  for (int e = 0; e < x.edge_count(); ++e) {
    if (t.tree_edge[static_cast<std::size_t>(e)]) continue;
    const auto s = static_cast<std::size_t>(x.source(e));
    const auto d = static_cast<std::size_t>(x.target(e));
    if (t.depth[s] < 0) continue;
    out.emplace(e, pot[s] * m.labels[static_cast<std::size_t>(e)] * inverse(pot[d]));
  }
  return out;
}

std::map<int, NormalForm> marking_words(const MarkedComplex& m) {
  return marking_words(m, spanning_tree(m.complex, m.basepoint));
}

NormalForm square_boundary(const MarkedComplex& m, int square) {
  EdgePath p;
  const std::pair<std::uint32_t, int> steps[] = {{0, 0}, {1, 1}, {3, 0}, {2, 1}};
  for (const auto& [bits, axis] : steps) {
    const HalfEdge h = m.complex.corner_edge(2, square, bits, axis);
    p.push_back({h.edge, h.end == 0});
  }
  return read_path(m, p);
}

namespace {

// True iff the columns span Z^n.
bool spans_lattice(std::vector<std::vector<long long>> cols, int n) {
  for (int r = 0; r < n; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    for (;;) {
      std::size_t best = cols.size();
      for (std::size_t i = 0; i < cols.size(); ++i)
        if (cols[i][ur] != 0 && (best == cols.size() || std::llabs(cols[i][ur]) < std::llabs(cols[best][ur])))
          best = i;
      if (best == cols.size()) return false;
      bool reduced = true;
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i == best || cols[i][ur] == 0) continue;
        const long long q = cols[i][ur] / cols[best][ur];
        for (std::size_t k = 0; k < cols[i].size(); ++k) cols[i][k] -= q * cols[best][k];
        if (cols[i][ur] != 0) reduced = false;
      }
      if (!reduced) continue;
      if (std::llabs(cols[best][ur]) != 1) return false;
      cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(best));
      break;
    }
  }
  return true;
}

}  // namespace

MarkingReport check_marking(const MarkedComplex& m) {
  MarkingReport rep;
  if (static_cast<int>(m.labels.size()) != m.complex.edge_count())
    throw MarkingError("one label per edge required");
  const SpanningTree t = spanning_tree(m.complex, m.basepoint);
  for (int d : t.depth)
    if (d < 0) rep.connected = false;
  for (int sq = 0; sq < m.complex.count(2); ++sq)
    if (!square_boundary(m, sq).is_identity()) {
      rep.relators_killed = false;
      rep.bad_square = sq;
      break;
    }
  std::vector<std::vector<long long>> cols;
  for (const auto& [e, w] : marking_words(m, t)) cols.push_back(abelianize(w));
  rep.surjective = spans_lattice(std::move(cols), m.graph->vertex_count());
  return rep;
}

std::vector<EdgePath> generator_loops(const MarkedComplex& m, int root) {
  const CubeComplex& x = m.complex;
  const SpanningTree t = spanning_tree(x, root);
  const auto words = marking_words(m, t);
  const int n = m.graph->vertex_count();
  std::vector<EdgePath> loops(static_cast<std::size_t>(n));
  std::vector<bool> known(static_cast<std::size_t>(n), false);
  auto edge_loop = [&](int e, bool forward) {
    EdgePath p = tree_path(x, t, x.source(e));
    p.push_back({e, true});
    const EdgePath back = reverse_path(tree_path(x, t, x.target(e)));
    p.insert(p.end(), back.begin(), back.end());
    return forward ? p : reverse_path(p);
  };
  for (const auto& [e, w] : words) {
    if (w.length() != 1) continue;
    const Letter l = w.letters()[0];
    const auto v = static_cast<std::size_t>(l.vertex());
    if (known[v]) continue;
    loops[v] = edge_loop(e, !l.inverse());
    known[v] = true;
  }
  // Conjugates y^-1 v y of a generator, with y spelled by known loops.
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [e, w] : words) {
      const CyclicReduction cr = cyclically_reduce(w);
      if (cr.core.length() != 1) continue;
      const Letter l = cr.core.letters()[0];
      const auto v = static_cast<std::size_t>(l.vertex());
      if (known[v]) continue;
      bool spelled = true;
      for (const Letter& y : cr.conjugator.letters())
        if (!known[static_cast<std::size_t>(y.vertex())]) spelled = false;
      if (!spelled) continue;
      EdgePath ly;
      for (const Letter& y : cr.conjugator.letters()) {
        const EdgePath& base = loops[static_cast<std::size_t>(y.vertex())];
        const EdgePath piece = y.inverse() ? reverse_path(base) : base;
        ly.insert(ly.end(), piece.begin(), piece.end());
      }
      EdgePath p = ly;
      const EdgePath mid = edge_loop(e, !l.inverse());
      p.insert(p.end(), mid.begin(), mid.end());
      const EdgePath back = reverse_path(ly);
      p.insert(p.end(), back.begin(), back.end());
      loops[v] = std::move(p);
      known[v] = true;
      progress = true;
    }
  }
  for (int v = 0; v < n; ++v)
    if (!known[static_cast<std::size_t>(v)])
      throw MarkingError("no loop reading generator " + m.graph->label(v));
  return loops;
}

}  // namespace raag
