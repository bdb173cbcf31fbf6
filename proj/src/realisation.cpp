#include "raagkit/realisation.hpp"

#include <algorithm>
#include <map>

namespace raag {

namespace {

int order_of(const ComplexAction& a, int h) {
  const int e = a.identity();
  int k = 1;
  for (int cur = h; cur != e; cur = a.table[static_cast<std::size_t>(h)][static_cast<std::size_t>(cur)]) {
    if (++k > a.size() + 1) throw ActionError("element has no finite order in the table");
  }
  return k;
}

// Image of the piece w of a cell under a cell map, in the subdivision of the target.
CellImage piece_image(const Subdivision& target, int k, const CellImage& img, int w) {
  std::vector<int> dg(static_cast<std::size_t>(k)), tg(static_cast<std::size_t>(k));
  for (int i = 0, r = w; i < k; ++i, r /= 3) dg[static_cast<std::size_t>(i)] = r % 3;
  for (int i = 0; i < k; ++i) {
    int d = dg[static_cast<std::size_t>(i)];
    if (d != 2 && img.flips[static_cast<std::size_t>(i)]) d ^= 1;
    tg[static_cast<std::size_t>(img.axes[static_cast<std::size_t>(i)])] = d;
  }
  int code = 0;
  for (int i = k - 1; i >= 0; --i) code = 3 * code + tg[static_cast<std::size_t>(i)];
  CellImage out{target.pieces[static_cast<std::size_t>(k)][static_cast<std::size_t>(img.cell)][static_cast<std::size_t>(code)].second, {}, {}};
  for (int i = 0; i < k; ++i) {
    if (dg[static_cast<std::size_t>(i)] == 2) continue;
    const int p = img.axes[static_cast<std::size_t>(i)];
    int rank = 0;
    for (int q = 0; q < p; ++q)
      if (tg[static_cast<std::size_t>(q)] != 2) ++rank;
    out.axes.push_back(rank);
    out.flips.push_back(img.flips[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<std::vector<CellImage>> subdivide_images(const GluingSpec& spec, const std::vector<std::vector<CellImage>>& ident,
                                                     const Subdivision& l, const Subdivision& r) {
  std::vector<std::vector<CellImage>> out(l.marked.complex.dimension() + 1 > 0 ? static_cast<std::size_t>(l.marked.complex.dimension() + 1) : 0);
  for (std::size_t k = 0; k < spec.left_sub.size(); ++k)
    for (std::size_t i = 0; i < spec.left_sub[k].size(); ++i) {
      const auto& pieces = l.pieces[k][static_cast<std::size_t>(spec.left_sub[k][i])];
      for (int w = 0; w < static_cast<int>(pieces.size()); ++w) {
        const auto d = static_cast<std::size_t>(pieces[static_cast<std::size_t>(w)].first);
        out[d].push_back(piece_image(r, static_cast<int>(k), ident[k][i], w));
      }
    }
  return out;
}

void require_realises(const MarkedComplex& m, const ComplexAction& a, const std::vector<RaagMap>& phi,
                      InnerSearch search = {}) {
  if (!realises(m, a, phi, search)) throw RealisationCheckFailed("the complex does not realise the outer action");
}

}  // namespace

GluingSpec subdivide_spec(const GluingSpec& spec, const Subdivision& l, const Subdivision& r) {
  GluingSpec out;
  out.left = l.marked;
  out.right = r.marked;
  out.target = spec.target;
  out.left_sub.resize(static_cast<std::size_t>(l.marked.complex.dimension() + 1));
  for (std::size_t k = 0; k < spec.left_sub.size(); ++k)
    for (int c : spec.left_sub[k])
      for (const auto& [d, id] : l.pieces[k][static_cast<std::size_t>(c)]) out.left_sub[static_cast<std::size_t>(d)].push_back(id);
  out.identification = subdivide_images(spec, spec.identification, l, r);
  if (!spec.twin.empty()) out.twin = subdivide_images(spec, spec.twin, l, r);
  return out;
}

Correction correct_gluing(const GluingSpec& spec, const ComplexAction& left, const ComplexAction& right,
                          const std::vector<RaagMap>& phi, const FaultRecord& fault, CorrectionOptions opts) {
  Glued y0 = glue_marked(spec);
  ComplexAction a0 = glue_actions(spec, y0, left, right);
  const GraphPtr& g = y0.marked.graph;
  const int n = g->vertex_count();
  const VertexSet ze = z_part(y0.e);
  for (const auto& x : fault.x)
    if (!support(x).subset_of(ze)) throw FaultOutsideCentralizer("fault " + x.to_string() + " is not inside Z(A_E)");
  if (fault.trivial()) {
    require_realises(y0.marked, a0, phi, opts.search);
    return {spec, std::move(y0), std::move(a0), std::vector<long long>(static_cast<std::size_t>(n), 0), 0};
  }

  // x′(H): per flipped generator of Z(E) outside the centres, copy x(h)'s coordinate.
  const VertexSet dropped = z_part(g->all()) | z_part(y0.sigma) | z_part(y0.theta);
  std::vector<long long> offsets(static_cast<std::size_t>(n), 0);
  std::vector<RaagMap> hp;
  for (int h = 0; h < a0.size(); ++h) hp.push_back(induced_outer_action(y0.marked, a0, h, fault.p));
  for (int s : (ze - dropped).members())
    for (int h = 0; h < a0.size(); ++h)
      if (hp[static_cast<std::size_t>(h)].image(s) == inverse(generator(g, s))) {
        offsets[static_cast<std::size_t>(s)] = abelianize(fault.x[static_cast<std::size_t>(h)])[static_cast<std::size_t>(s)];
        break;
      }

  GluingSpec cur = spec;
  ComplexAction lact = left, ract = right;
  for (int round = 0; round <= opts.max_subdivisions; ++round) {
    const MarkedComplex& rm = cur.right;
    if (!rm.has_coords()) throw GluingError("correction needs torus coordinates on the right piece");
    bool integral = true;
    std::vector<int> shift(static_cast<std::size_t>(rm.graph->vertex_count()), 0);
    for (int s = 0; s < n; ++s) {
      const long long o = offsets[static_cast<std::size_t>(s)];
      if (o == 0) continue;
      const int rs = rm.graph->index_of(g->label(s));
      const long long twice = o * rm.moduli[static_cast<std::size_t>(rs)];
      if (twice % 2 != 0) integral = false;
      shift[static_cast<std::size_t>(rs)] = static_cast<int>(twice / 2);
    }
    if (!integral) {
      if (round == opts.max_subdivisions) throw NonIntegralOffset("offsets stay fractional after subdivision");
      const Subdivision ls = subdivide(cur.left), rs = subdivide(cur.right);
      lact = subdivide_action(cur.left, ls, lact);
      ract = subdivide_action(cur.right, rs, ract);
      cur = subdivide_spec(cur, ls, rs);
      continue;
    }
    const auto& twin = cur.twin.empty() ? cur.identification : cur.twin;
    std::map<std::vector<int>, int> rindex;
    for (int k = 0; k <= rm.complex.dimension(); ++k)
      for (int c = 0; c < rm.complex.count(k); ++c) rindex[rm.complex.cell(k, c).coords] = c;
    const bool moves = std::any_of(shift.begin(), shift.end(), [](int v) { return v != 0; });
    for (int sign : {1, -1}) {
      if (sign < 0 && !moves) break;
      GluingSpec next = cur;
      next.twin = twin;
      next.identification = twin;
      for (std::size_t k = 0; k < twin.size(); ++k)
        for (auto& img : next.identification[k]) {
          std::vector<int> t = rm.complex.cell(static_cast<int>(k), img.cell).coords;
          for (std::size_t v = 0; v < t.size(); ++v) {
            const int m2 = 2 * rm.moduli[v];
            t[v] = ((t[v] + 2 * sign * shift[v]) % m2 + m2) % m2;
          }
          img.cell = rindex.at(t);
        }
      try {
        Glued y = glue_marked(next);
        ComplexAction a = glue_actions(next, y, lact, ract);
        if (realises(y.marked, a, phi, opts.search))
          return {std::move(next), std::move(y), std::move(a), offsets, round};
      } catch (const GluingError&) {
      } catch (const ActionError&) {
      }
    }
    throw RealisationCheckFailed("no shifted gluing realises the outer action");
  }
  throw NonIntegralOffset("offsets stay fractional after subdivision");
}

CircleAction build_circle_action(int m, std::vector<std::vector<int>> table,
                                 const std::vector<CircleElement>& elements, const std::string& label) {
  const GraphPtr g = SimplicialGraph::make({label}, {});
  CircleAction out{salvetti(g, m), {}};
  std::vector<std::vector<CircleMove>> moves;
  for (const auto& e : elements) moves.push_back({CircleMove{0, e.flip, e.shift}});
  out.action = coordinate_action(out.marked, std::move(table), moves);
  return out;
}

CircleElement circle_element(const MarkedComplex& m, const ComplexAction& a, int h) {
  const CubeComplex& x = m.complex;
  if (m.graph->vertex_count() != 1 || !m.has_coords() || x.dimension() != 1 || x.vertex_count() != x.edge_count())
    throw ComplexError("not a subdivided circle");
  int v0 = -1, e0 = -1;
  for (int v = 0; v < x.vertex_count(); ++v)
    if (x.cell(0, v).coords == std::vector<int>{0}) v0 = v;
  for (int e = 0; e < x.edge_count(); ++e)
    if (x.cell(1, e).coords == std::vector<int>{1}) e0 = e;
  if (v0 < 0 || e0 < 0) throw ComplexError("not a subdivided circle");
  return {a.image(h, 1, e0).flips[0], x.cell(0, a.vertex(h, v0)).coords[0] / 2};
}

RotationInvariant rotation_invariant(const MarkedComplex& m, const ComplexAction& a, int h) {
  const CircleElement el = circle_element(m, a, h);
  const int n = m.moduli[0];
  RotationInvariant out;
  out.flip = el.flip;
  out.mu = el.shift;
  out.order = order_of(a, h);
  if (!el.flip) {
    out.k = (out.order * out.mu / n) % out.order;
    return out;
  }
  for (int j = 0; j < n; ++j) {
    if ((2 * j - el.shift) % n == 0) out.fixed_vertices.push_back(j);
    if ((2 * j + 1 - el.shift) % n == 0) out.fixed_edges.push_back(j);
  }
  return out;
}

CircleAlignment align_circles(const CircleAction& y, const CircleAction& z) {
  const int m = y.marked.moduli.at(0);
  if (z.marked.moduli.at(0) != m) throw IncompatibleActions("circles have different subdivisions");
  if (y.action.table != z.action.table) throw IncompatibleActions("actions have different groups");
  const int n = y.action.size();
  std::vector<CircleElement> ey, ez;
  bool same = true, opposite = true;
  std::string diagnostic;
  for (int h = 0; h < n; ++h) {
    ey.push_back(circle_element(y.marked, y.action, h));
    ez.push_back(circle_element(z.marked, z.action, h));
    if (ey.back().flip != ez.back().flip)
      throw IncompatibleActions("element " + std::to_string(h) + " flips one circle and rotates the other");
    if (ey.back().flip) continue;
    const auto ry = rotation_invariant(y.marked, y.action, h);
    const auto kz = rotation_invariant(z.marked, z.action, h).k;
    if (ry.k != kz) {
      same = false;
      if (diagnostic.empty())
        diagnostic = "element " + std::to_string(h) + ": " + std::to_string(ry.k) + " vs " + std::to_string(kz);
    }
    if ((ry.k + kz) % ry.order != 0) opposite = false;
  }
  // a reflection negates every rotation residue
  if (!same && !opposite) throw IncompatibleActions("rotation residues differ, " + diagnostic);
  // Half-positions: vertex j is 2j, the midpoint of edge j is 2j + 1.
  const int hm = 2 * m;
  auto mod = [hm](int v) { return ((v % hm) + hm) % hm; };
  auto act = [&](const CircleElement& e, int p) { return mod(e.flip ? 2 * e.shift - p : p + 2 * e.shift); };
  for (bool reflect : {false, true})
    for (int r = 0; r < m; ++r) {
      auto phi = [&](int p) { return mod(2 * r + (reflect ? -p : p)); };
      bool ok = true;
      for (int h = 0; h < n && ok; ++h)
        for (int p = 0; p < hm && ok; ++p)
          ok = phi(act(ey[static_cast<std::size_t>(h)], p)) == act(ez[static_cast<std::size_t>(h)], phi(p));
      if (ok) return {r, reflect};
    }
  throw IncompatibleActions("no equivariant identification of the circles");
}

FixedPoint fixed_point(const MarkedComplex& m, const ComplexAction& a) {
  const CubeComplex& x = m.complex;
  for (int k = 0; k <= x.dimension(); ++k)
    for (int c = 0; c < x.count(k); ++c) {
      bool fixed = true;
      for (int h = 0; h < a.size() && fixed; ++h) fixed = a.image(h, k, c).cell == c;
      if (!fixed) continue;
      if (k == 0) return {m, a, c, false};
      const Subdivision s = subdivide(m);
      ComplexAction sa = subdivide_action(m, s, a);
      const auto& pieces = s.pieces[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
      return {s.marked, std::move(sa), pieces.back().second, true};
    }
  throw NoFixedPoint("no cell is invariant under the whole group");
}

Realisation wedge_realisation(const std::vector<Realisation>& pieces, const std::optional<std::vector<RaagMap>>& phi) {
  if (pieces.empty()) throw GluingError("no pieces to wedge");
  FixedPoint acc = fixed_point(pieces[0].marked, pieces[0].action);
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    const FixedPoint fp = fixed_point(pieces[i].marked, pieces[i].action);
    for (const auto& l : fp.marked.graph->labels())
      if (acc.marked.graph->index_of(l) >= 0) throw GluingError("wedge pieces share the generator " + l);
    GluingSpec spec;
    spec.left = acc.marked;
    spec.right = fp.marked;
    spec.left_sub = {{acc.vertex}};
    spec.identification = {{CellImage{fp.vertex, {}, {}}}};
    Glued y = glue_marked(spec);
    ComplexAction a = glue_actions(spec, y, acc.action, fp.action);
    acc = {std::move(y.marked), std::move(a), acc.vertex, acc.subdivided || fp.subdivided};
  }
  if (phi) require_realises(acc.marked, acc.action, *phi);
  return {std::move(acc.marked), std::move(acc.action)};
}

Realisation product_realisation(const Realisation& left, const Realisation& right, GraphPtr target,
                                const std::optional<std::vector<RaagMap>>& phi) {
  if (left.action.table != right.action.table) throw ActionError("the two actions have different groups");
  Realisation out{product(left.marked, right.marked, std::move(target)), {}};
  const CubeComplex& cx = left.marked.complex;
  const CubeComplex& cy = right.marked.complex;
  ProductIndex idx;
  for (int d = 0; d <= cx.dimension(); ++d) idx.counts_x.push_back(cx.count(d));
  for (int d = 0; d <= cy.dimension(); ++d) idx.counts_y.push_back(cy.count(d));
  const CubeComplex& x = out.marked.complex;
  out.action.table = left.action.table;
  for (int h = 0; h < left.action.size(); ++h) {
    std::vector<std::vector<CellImage>> per(static_cast<std::size_t>(x.dimension() + 1));
    for (int k = 0; k <= x.dimension(); ++k) per[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(x.count(k)));
    for (int dx = 0; dx <= cx.dimension(); ++dx)
      for (int ix = 0; ix < cx.count(dx); ++ix)
        for (int dy = 0; dy <= cy.dimension(); ++dy)
          for (int iy = 0; iy < cy.count(dy); ++iy) {
            const CellImage& a = left.action.image(h, dx, ix);
            const CellImage& b = right.action.image(h, dy, iy);
            CellImage img{idx(dx, a.cell, dy, b.cell).second, a.axes, a.flips};
            for (std::size_t j = 0; j < b.axes.size(); ++j) {
              img.axes.push_back(dx + b.axes[j]);
              img.flips.push_back(b.flips[j]);
            }
            per[static_cast<std::size_t>(dx + dy)][static_cast<std::size_t>(idx(dx, ix, dy, iy).second)] = std::move(img);
          }
    out.action.maps.push_back(std::move(per));
  }
  validate_action(x, out.action);
  if (phi) require_realises(out.marked, out.action, *phi);
  return out;
}

}  // namespace raag
