#include <algorithm>
#include <map>

#include "raagkit/marked.hpp"

namespace raag {

MarkedComplex salvetti(const GraphPtr& g, int subdivision) {
  if (subdivision < 1) throw ComplexError("subdivision must be positive");
  const int n = g->vertex_count();
  const int states = 2 * subdivision;
  std::vector<std::vector<int>> tuples;
  for (std::uint64_t k : cliques(g->all())) {
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if ((k >> v) & 1U) members.push_back(v);
    std::vector<int> s(static_cast<std::size_t>(n), 0);
    for (int v : members) s[static_cast<std::size_t>(v)] = 1;
    for (;;) {
      tuples.push_back(s);
      std::size_t i = 0;
      for (; i < members.size(); ++i) {
        int& c = s[static_cast<std::size_t>(members[i])];
        if (++c < states) break;
        c = 1;
      }
      if (i == members.size()) break;
    }
  }
  auto dim_of = [](const std::vector<int>& s) {
    return static_cast<int>(std::count_if(s.begin(), s.end(), [](int c) { return c % 2 == 1; }));
  };
  std::sort(tuples.begin(), tuples.end(), [&](const auto& a, const auto& b) {
    const int da = dim_of(a), db = dim_of(b);
    return da != db ? da < db : a < b;
  });

  MarkedComplex m;
  m.graph = g;
  m.moduli.assign(static_cast<std::size_t>(n), subdivision);
  m.coordinates = true;
  std::map<std::vector<int>, int> index;
  const Length len(1, subdivision);
  for (const auto& s : tuples) {
    std::vector<int> axes;
    for (int v = 0; v < n; ++v)
      if (s[static_cast<std::size_t>(v)] % 2 == 1) axes.push_back(v);
    const int k = static_cast<int>(axes.size());
    Cell c;
    c.coords = s;
    c.lengths.assign(static_cast<std::size_t>(k), len);
    std::vector<int> ident(static_cast<std::size_t>(k > 0 ? k - 1 : 0));
    for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = static_cast<int>(i);
    for (int v : axes) {
      std::vector<int> lo = s, hi = s;
      lo[static_cast<std::size_t>(v)] -= 1;
      hi[static_cast<std::size_t>(v)] = (hi[static_cast<std::size_t>(v)] + 1) % states;
      c.facets.push_back({FacetRef{index.at(lo), ident, std::vector<bool>(ident.size(), false)},
                          FacetRef{index.at(hi), ident, std::vector<bool>(ident.size(), false)}});
    }
    index[s] = m.complex.add_cell(std::move(c));
    if (k == 1) {
      const int v = axes[0];
      m.labels.push_back(s[static_cast<std::size_t>(v)] == 1 ? generator(g, v) : identity(g));
    }
  }
  m.basepoint = 0;
  return m;
}

std::pair<int, int> ProductIndex::operator()(int dx, int idx, int dy, int idy) const {
  auto cx = [&](int d) { return d < static_cast<int>(counts_x.size()) ? counts_x[static_cast<std::size_t>(d)] : 0; };
  auto cy = [&](int d) { return d < static_cast<int>(counts_y.size()) ? counts_y[static_cast<std::size_t>(d)] : 0; };
  int offset = 0;
  for (int d = 0; d < dx; ++d) offset += cx(d) * cy(dx + dy - d);
  return {dx + dy, offset + idx * cy(dy) + idy};
}

MarkedComplex product(const MarkedComplex& x, const MarkedComplex& y, GraphPtr target) {
  const SimplicialGraph& gx = *x.graph;
  const SimplicialGraph& gy = *y.graph;
  const int nx = gx.vertex_count(), ny = gy.vertex_count();
  std::vector<std::string> labels = gx.labels();
  labels.insert(labels.end(), gy.labels().begin(), gy.labels().end());
  std::vector<std::pair<int, int>> edges;
  for (const auto& [a, b] : gx.edges()) edges.emplace_back(a, b);
  for (const auto& [a, b] : gy.edges()) edges.emplace_back(nx + a, nx + b);
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < ny; ++b) edges.emplace_back(a, nx + b);
  const GraphPtr join = SimplicialGraph::make(labels, edges);
  if (!target) target = join;
  if (target->vertex_count() != join->vertex_count())
    throw ComplexError("product target is not the join of the factors");
  std::vector<int> pos(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    pos[i] = target->index_of(labels[i]);
    if (pos[i] < 0) throw ComplexError("product target lacks label " + labels[i]);
  }
  for (int a = 0; a < nx + ny; ++a)
    for (int b = a + 1; b < nx + ny; ++b)
      if (join->adjacent(a, b) != target->adjacent(pos[static_cast<std::size_t>(a)], pos[static_cast<std::size_t>(b)]))
        throw ComplexError("product target is not the join of the factors");

  const CubeComplex& cx = x.complex;
  const CubeComplex& cy = y.complex;
  ProductIndex idx;
  for (int d = 0; d <= cx.dimension(); ++d) idx.counts_x.push_back(cx.count(d));
  for (int d = 0; d <= cy.dimension(); ++d) idx.counts_y.push_back(cy.count(d));
  // Coordinates need axes in generator order.
  const bool coords = x.has_coords() && y.has_coords() && std::is_sorted(pos.begin(), pos.end());

  MarkedComplex m;
  m.graph = target;
  m.coordinates = coords;
  if (coords) {
    m.moduli.assign(labels.size(), 0);
    for (std::size_t i = 0; i < labels.size(); ++i)
      m.moduli[static_cast<std::size_t>(pos[i])] =
          i < static_cast<std::size_t>(nx) ? x.moduli[i] : y.moduli[i - static_cast<std::size_t>(nx)];
  }
  const int top = cx.dimension() + cy.dimension();
  for (int k = 0; k <= top; ++k) {
    for (int dx = 0; dx <= k; ++dx) {
      const int dy = k - dx;
      for (int ix = 0; ix < cx.count(dx); ++ix)
        for (int iy = 0; iy < cy.count(dy); ++iy) {
          const Cell& a = cx.cell(dx, ix);
          const Cell& b = cy.cell(dy, iy);
          Cell c;
          c.lengths = a.lengths;
          c.lengths.insert(c.lengths.end(), b.lengths.begin(), b.lengths.end());
          if (coords) {
            c.coords.assign(labels.size(), 0);
            for (std::size_t i = 0; i < labels.size(); ++i)
              c.coords[static_cast<std::size_t>(pos[i])] =
                  i < static_cast<std::size_t>(nx) ? a.coords[i] : b.coords[i - static_cast<std::size_t>(nx)];
          }
          for (int i = 0; i < dx; ++i) {
            std::array<FacetRef, 2> pair;
            for (int s = 0; s < 2; ++s) {
              const FacetRef& r = a.facets[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
              FacetRef f{idx(dx - 1, r.cell, dy, iy).second, r.axes, r.flips};
              for (int j = 0; j < dy; ++j) {
                f.axes.push_back(dx - 1 + j);
                f.flips.push_back(false);
              }
              pair[static_cast<std::size_t>(s)] = std::move(f);
            }
            c.facets.push_back(std::move(pair));
          }
          for (int j = 0; j < dy; ++j) {
            std::array<FacetRef, 2> pair;
            for (int s = 0; s < 2; ++s) {
              const FacetRef& r = b.facets[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)];
              FacetRef f{idx(dx, ix, dy - 1, r.cell).second, {}, {}};
              for (int i = 0; i < dx; ++i) {
                f.axes.push_back(i);
                f.flips.push_back(false);
              }
              for (std::size_t t = 0; t < r.axes.size(); ++t) {
                f.axes.push_back(dx + r.axes[t]);
                f.flips.push_back(r.flips[t]);
              }
              pair[static_cast<std::size_t>(s)] = std::move(f);
            }
            c.facets.push_back(std::move(pair));
          }
          m.complex.add_cell(std::move(c));
          if (k == 1)
            m.labels.push_back(dx == 1 ? translate(x.labels[static_cast<std::size_t>(ix)], target)
                                       : translate(y.labels[static_cast<std::size_t>(iy)], target));
        }
    }
  }
  m.basepoint = idx(0, x.basepoint, 0, y.basepoint).second;
  return m;
}

}  // namespace raag
