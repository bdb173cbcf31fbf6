#include "raagkit/action.hpp"

#include <algorithm>
#include <map>

namespace raag {

const CellImage& ComplexAction::image(int h, int dim, int cell) const {
  if (h < 0 || h >= size()) throw ActionError("no such group element");
  const auto& per = maps[static_cast<std::size_t>(h)];
  if (dim < 0 || dim >= static_cast<int>(per.size()) || cell < 0 ||
      cell >= static_cast<int>(per[static_cast<std::size_t>(dim)].size()))
    throw ActionError("action does not cover the cell");
  return per[static_cast<std::size_t>(dim)][static_cast<std::size_t>(cell)];
}

EdgeStep ComplexAction::apply(int h, EdgeStep s) const {
  const CellImage& img = image(h, 1, s.edge);
  return {img.cell, s.forward != img.flips[0]};
}

EdgePath ComplexAction::apply(int h, const EdgePath& p) const {
  EdgePath out;
  out.reserve(p.size());
  for (const auto& s : p) out.push_back(apply(h, s));
  return out;
}

int ComplexAction::identity() const {
  for (int e = 0; e < size(); ++e) {
    bool ok = true;
    for (int j = 0; j < size() && ok; ++j) ok = table[static_cast<std::size_t>(e)][static_cast<std::size_t>(j)] == j;
    if (ok) return e;
  }
  throw ActionError("group table has no identity");
}

int ComplexAction::inverse(int h) const {
  const int e = identity();
  for (int k = 0; k < size(); ++k)
    if (table[static_cast<std::size_t>(h)][static_cast<std::size_t>(k)] == e) return k;
  throw ActionError("group table has no inverse");
}

namespace {

CellImage compose_image(const ComplexAction& a, int g, int dim, const CellImage& first) {
  const CellImage& second = a.image(g, dim, first.cell);
  CellImage out{second.cell, {}, {}};
  for (std::size_t i = 0; i < first.axes.size(); ++i) {
    const auto p = static_cast<std::size_t>(first.axes[i]);
    out.axes.push_back(second.axes[p]);
    out.flips.push_back(first.flips[i] != second.flips[p]);
  }
  return out;
}

}  // namespace

void validate_action(const CubeComplex& x, const ComplexAction& a) {
  const int n = a.size();
  if (n == 0) throw ActionError("empty group");
  if (static_cast<int>(a.table.size()) != n) throw ActionError("table size differs from group size");
  for (const auto& row : a.table) {
    if (static_cast<int>(row.size()) != n) throw ActionError("table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw ActionError("table entry out of range");
  }
  for (int h = 0; h < n; ++h) {
    if (static_cast<int>(a.maps[static_cast<std::size_t>(h)].size()) != x.dimension() + 1)
      throw ActionError("action dimension differs from complex");
    for (int k = 0; k <= x.dimension(); ++k) {
      if (static_cast<int>(a.maps[static_cast<std::size_t>(h)][static_cast<std::size_t>(k)].size()) != x.count(k))
        throw ActionError("action does not cover every cell");
      std::vector<bool> hit(static_cast<std::size_t>(x.count(k)), false);
      for (int c = 0; c < x.count(k); ++c) {
        const CellImage& img = a.image(h, k, c);
        if (img.cell < 0 || img.cell >= x.count(k) || hit[static_cast<std::size_t>(img.cell)])
          throw ActionError("cell map is not a bijection");
        hit[static_cast<std::size_t>(img.cell)] = true;
        if (static_cast<int>(img.axes.size()) != k || img.flips.size() != img.axes.size())
          throw ActionError("malformed cell image");
        std::vector<int> sorted = img.axes;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < k; ++i)
          if (sorted[static_cast<std::size_t>(i)] != i) throw ActionError("cell image axes are not a permutation");
        const Cell& src = x.cell(k, c);
        const Cell& dst = x.cell(k, img.cell);
        for (int i = 0; i < k; ++i)
          if (src.lengths[static_cast<std::size_t>(i)] != dst.lengths[static_cast<std::size_t>(img.axes[static_cast<std::size_t>(i)])])
            throw ActionError("action does not preserve lengths");
        for (int i = 0; i < k; ++i)
          for (int s = 0; s < 2; ++s) {
            const FacetRef& r = src.facets[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
            const CellImage& fi = a.image(h, k - 1, r.cell);
            std::vector<int> fixed(static_cast<std::size_t>(k), -1);
            const auto pi = static_cast<std::size_t>(img.axes[static_cast<std::size_t>(i)]);
            fixed[pi] = s ^ static_cast<int>(img.flips[static_cast<std::size_t>(i)]);
            const Face t = x.face(k, img.cell, fixed);
            if (t.cell != fi.cell) throw ActionError("action does not respect facets");
            for (int j = 0, m = 0; j < k; ++j) {
              if (j == i) continue;
              const auto pj = static_cast<std::size_t>(img.axes[static_cast<std::size_t>(j)]);
              const bool f1 = img.flips[static_cast<std::size_t>(j)] != t.flip[pj];
              const auto fa = static_cast<std::size_t>(r.axes[static_cast<std::size_t>(m)]);
              const bool f2 = r.flips[static_cast<std::size_t>(m)] != fi.flips[fa];
              if (t.axis[pj] != fi.axes[fa] || f1 != f2) throw ActionError("action does not respect facets");
              ++m;
            }
          }
      }
    }
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      const int gh = a.table[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)];
      for (int k = 0; k <= x.dimension(); ++k)
        for (int c = 0; c < x.count(k); ++c)
          if (compose_image(a, g, k, a.image(h, k, c)) != a.image(gh, k, c))
            throw ActionError("action does not match the group table");
    }
  a.identity();
}

ComplexAction trivial_action(const CubeComplex& x) {
  ComplexAction a;
  a.table = {{0}};
  a.maps.resize(1);
  for (int k = 0; k <= x.dimension(); ++k) {
    std::vector<CellImage> per;
    for (int c = 0; c < x.count(k); ++c) {
      CellImage img{c, {}, std::vector<bool>(static_cast<std::size_t>(k), false)};
      for (int i = 0; i < k; ++i) img.axes.push_back(i);
      per.push_back(std::move(img));
    }
    a.maps[0].push_back(std::move(per));
  }
  return a;
}

namespace {

int circle_state(int s, int m, const CircleMove& mv) {
  auto mod = [m](int v) { return ((v % m) + m) % m; };
  if (s % 2 == 0) {
    const int j = s / 2;
    return 2 * mod(mv.flip ? mv.shift - j : mv.shift + j);
  }
  const int j = (s - 1) / 2;
  return 2 * mod(mv.flip ? mv.shift - j - 1 : mv.shift + j) + 1;
}

std::vector<int> odd_positions(const std::vector<int>& coords) {
  std::vector<int> out;
  for (std::size_t v = 0; v < coords.size(); ++v)
    if (coords[v] % 2 == 1) out.push_back(static_cast<int>(v));
  return out;
}

}  // namespace

ComplexAction coordinate_action(const MarkedComplex& m, std::vector<std::vector<int>> table,
                                const std::vector<std::vector<CircleMove>>& moves) {
  if (!m.has_coords()) throw ActionError("complex carries no torus coordinates");
  const CubeComplex& x = m.complex;
  const std::size_t n = m.moduli.size();
  std::map<std::vector<int>, std::pair<int, int>> index;
  for (int k = 0; k <= x.dimension(); ++k)
    for (int c = 0; c < x.count(k); ++c) index[x.cell(k, c).coords] = {k, c};
  ComplexAction a;
  a.table = std::move(table);
  for (const auto& mv : moves) {
    if (mv.size() != n) throw ActionError("one move per generator required");
    std::vector<bool> used(n, false);
    for (std::size_t v = 0; v < n; ++v) {
      const auto t = static_cast<std::size_t>(mv[v].target);
      if (t >= n || used[t] || m.moduli[t] != m.moduli[v]) throw ActionError("moves do not permute the circles");
      used[t] = true;
    }
    std::vector<std::vector<CellImage>> per(static_cast<std::size_t>(x.dimension() + 1));
    for (int k = 0; k <= x.dimension(); ++k)
      for (int c = 0; c < x.count(k); ++c) {
        const std::vector<int>& s = x.cell(k, c).coords;
        std::vector<int> t(n);
        for (std::size_t v = 0; v < n; ++v)
          t[static_cast<std::size_t>(mv[v].target)] = circle_state(s[v], m.moduli[v], mv[v]);
        const auto it = index.find(t);
        if (it == index.end()) throw ActionError("moved cell is not a cell of the complex");
        const std::vector<int> src_axes = odd_positions(s);
        const std::vector<int> dst_axes = odd_positions(t);
        CellImage img{it->second.second, {}, {}};
        for (int v : src_axes) {
          const int target = mv[static_cast<std::size_t>(v)].target;
          img.axes.push_back(static_cast<int>(std::find(dst_axes.begin(), dst_axes.end(), target) - dst_axes.begin()));
          img.flips.push_back(mv[static_cast<std::size_t>(v)].flip);
        }
        per[static_cast<std::size_t>(k)].push_back(std::move(img));
      }
    a.maps.push_back(std::move(per));
  }
  validate_action(x, a);
  return a;
}

ComplexAction subdivide_action(const MarkedComplex& m, const Subdivision& s, const ComplexAction& a) {
  const CubeComplex& x = m.complex;
  const CubeComplex& y = s.marked.complex;
  ComplexAction out;
  out.table = a.table;
  for (int h = 0; h < a.size(); ++h) {
    std::vector<std::vector<CellImage>> per(static_cast<std::size_t>(y.dimension() + 1));
    for (auto& v : per) v.clear();
    for (int k = 0; k <= y.dimension(); ++k) per[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(y.count(k)));
    for (int k = 0; k <= x.dimension(); ++k)
      for (int c = 0; c < x.count(k); ++c) {
        const CellImage& img = a.image(h, k, c);
        const auto& pieces = s.pieces[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
        for (int w = 0; w < static_cast<int>(pieces.size()); ++w) {
          std::vector<int> dg(static_cast<std::size_t>(k)), tg(static_cast<std::size_t>(k));
          for (int i = 0, r = w; i < k; ++i, r /= 3) dg[static_cast<std::size_t>(i)] = r % 3;
          for (int i = 0; i < k; ++i) {
            int d = dg[static_cast<std::size_t>(i)];
            if (d != 2 && img.flips[static_cast<std::size_t>(i)]) d ^= 1;
            tg[static_cast<std::size_t>(img.axes[static_cast<std::size_t>(i)])] = d;
          }
          int code = 0;
          for (int i = k - 1; i >= 0; --i) code = 3 * code + tg[static_cast<std::size_t>(i)];
          const auto [d, id] = pieces[static_cast<std::size_t>(w)];
          CellImage ni{s.pieces[static_cast<std::size_t>(k)][static_cast<std::size_t>(img.cell)][static_cast<std::size_t>(code)].second, {}, {}};
          for (int i = 0; i < k; ++i) {
            if (dg[static_cast<std::size_t>(i)] == 2) continue;
            const int p = img.axes[static_cast<std::size_t>(i)];
            int rank = 0;
            for (int q = 0; q < p; ++q)
              if (tg[static_cast<std::size_t>(q)] != 2) ++rank;
            ni.axes.push_back(rank);
            ni.flips.push_back(img.flips[static_cast<std::size_t>(i)]);
          }
          per[static_cast<std::size_t>(d)][static_cast<std::size_t>(id)] = std::move(ni);
        }
      }
    out.maps.push_back(std::move(per));
  }
  validate_action(y, out);
  return out;
}

RaagMap translate(const RaagMap& f, const GraphPtr& target) {
  if (f.graph() == target) return f;
  const int n = target->vertex_count();
  if (n != f.graph()->vertex_count()) throw ActionError("graphs carry different labels");
  std::vector<NormalForm> images, inverses;
  for (int u = 0; u < n; ++u) {
    const int src = f.graph()->index_of(target->label(u));
    if (src < 0) throw ActionError("graphs carry different labels");
    images.push_back(translate(f.image(src), target));
    inverses.push_back(translate(f.inverse_image(src), target));
  }
  if (f.tagged()) return RaagMap(target, images, inverses, f.factors());
  return RaagMap(target, images, inverses);
}

namespace {

std::vector<NormalForm> pushed_images(const MarkedComplex& m, const ComplexAction& a, int h, int root,
                                      const std::vector<EdgePath>& loops, EdgePath& gamma) {
  gamma = shortest_path(m.complex, root, a.vertex(h, root));
  const EdgePath back = reverse_path(gamma);
  std::vector<NormalForm> out;
  for (const auto& loop : loops) {
    EdgePath p = gamma;
    const EdgePath moved = a.apply(h, loop);
    p.insert(p.end(), moved.begin(), moved.end());
    p.insert(p.end(), back.begin(), back.end());
    out.push_back(read_path(m, p));
  }
  return out;
}

NormalForm apply_images(const GraphPtr& g, const std::vector<NormalForm>& images, const NormalForm& w) {
  Letters ls;
  for (const Letter& l : w.letters()) {
    const NormalForm& im = images[static_cast<std::size_t>(l.vertex())];
    if (!l.inverse()) {
      ls.insert(ls.end(), im.letters().begin(), im.letters().end());
    } else {
      for (auto it = im.letters().rbegin(); it != im.letters().rend(); ++it) ls.push_back(it->inv());
    }
  }
  return reduce(Word(g, std::move(ls)));
}

}  // namespace

RaagMap induced_outer_action(const MarkedComplex& m, const ComplexAction& a, int h, int root) {
  if (root < 0) root = m.basepoint;
  if (a.maps.empty() || static_cast<int>(a.maps[0].size()) != m.complex.dimension() + 1)
    throw ActionError("action does not match the complex");
  const auto loops = generator_loops(m, root);
  EdgePath gamma, gamma_inv;
  const auto images = pushed_images(m, a, h, root, loops, gamma);
  const int hinv = a.inverse(h);
  const auto back_images = pushed_images(m, a, hinv, root, loops, gamma_inv);
  EdgePath zpath = gamma;
  const EdgePath moved = a.apply(h, gamma_inv);
  zpath.insert(zpath.end(), moved.begin(), moved.end());
  const NormalForm z = read_path(m, zpath);
  std::vector<NormalForm> inverses;
  for (int v = 0; v < m.graph->vertex_count(); ++v)
    inverses.push_back(apply_images(m.graph, back_images, inverse(z) * generator(m.graph, v) * z));
  return RaagMap(m.graph, images, inverses);
}

bool realises(const MarkedComplex& m, const ComplexAction& a, const std::vector<RaagMap>& phi,
              InnerSearch search) {
  if (static_cast<int>(phi.size()) != a.size()) throw ActionError("group sizes differ");
  for (int h = 0; h < a.size(); ++h)
    if (!outer_equal(induced_outer_action(m, a, h), translate(phi[static_cast<std::size_t>(h)], m.graph), search))
      return false;
  return true;
}

bool realises(const MarkedComplex& m, const ComplexAction& a, const FiniteOuterGroup& phi,
              InnerSearch search) {
  if (a.table != phi.table()) throw ActionError("action group differs from the outer group");
  return realises(m, a, phi.elements(), search);
}

}  // namespace raag
