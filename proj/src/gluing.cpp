#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "raagkit/realisation.hpp"

namespace raag {

namespace {

CellImage invert(const CellImage& img) {
  CellImage out{-1, std::vector<int>(img.axes.size()), std::vector<bool>(img.axes.size())};
  for (std::size_t i = 0; i < img.axes.size(); ++i) {
    out.axes[static_cast<std::size_t>(img.axes[i])] = static_cast<int>(i);
    out.flips[static_cast<std::size_t>(img.axes[i])] = img.flips[i];
  }
  return out;
}

// first, then second (second applies to first.cell).
CellImage then(const CellImage& first, const CellImage& second) {
  CellImage out{second.cell, {}, {}};
  for (std::size_t i = 0; i < first.axes.size(); ++i) {
    const auto p = static_cast<std::size_t>(first.axes[i]);
    out.axes.push_back(second.axes[p]);
    out.flips.push_back(first.flips[i] != second.flips[p]);
  }
  return out;
}

CellImage identity_image(int cell, int k) {
  CellImage out{cell, {}, std::vector<bool>(static_cast<std::size_t>(k), false)};
  for (int i = 0; i < k; ++i) out.axes.push_back(i);
  return out;
}

std::vector<int> odd_positions(const std::vector<int>& coords) {
  std::vector<int> out;
  for (std::size_t v = 0; v < coords.size(); ++v)
    if (coords[v] % 2 == 1) out.push_back(static_cast<int>(v));
  return out;
}

// Checks that img respects facets, given images of the facets.
template <class FacetImage>
bool facet_compatible(const CubeComplex& src, const CubeComplex& dst, int k, int c, const CellImage& img,
                      FacetImage&& facet_image) {
  const Cell& cell = src.cell(k, c);
  for (int i = 0; i < k; ++i)
    for (int s = 0; s < 2; ++s) {
      const FacetRef& r = cell.facets[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
      const CellImage* fi = facet_image(k - 1, r.cell);
      if (!fi) return false;
      std::vector<int> fixed(static_cast<std::size_t>(k), -1);
      const auto pi = static_cast<std::size_t>(img.axes[static_cast<std::size_t>(i)]);
      fixed[pi] = s ^ static_cast<int>(img.flips[static_cast<std::size_t>(i)]);
      const Face t = dst.face(k, img.cell, fixed);
      if (t.cell != fi->cell) return false;
      for (int j = 0, m = 0; j < k; ++j) {
        if (j == i) continue;
        const auto pj = static_cast<std::size_t>(img.axes[static_cast<std::size_t>(j)]);
        const bool f1 = img.flips[static_cast<std::size_t>(j)] != t.flip[pj];
        const auto fa = static_cast<std::size_t>(r.axes[static_cast<std::size_t>(m)]);
        const bool f2 = r.flips[static_cast<std::size_t>(m)] != fi->flips[fa];
        if (t.axis[pj] != fi->axes[fa] || f1 != f2) return false;
        ++m;
      }
    }
  return true;
}

GraphPtr union_graph(const GraphPtr& a, const GraphPtr& b) {
  std::vector<std::string> labels = a->labels();
  for (const auto& l : b->labels())
    if (a->index_of(l) < 0) labels.push_back(l);
  std::set<std::pair<std::string, std::string>> edges;
  for (const GraphPtr& g : {a, b})
    for (const auto& [u, v] : g->edges()) {
      const auto& x = g->label(u);
      const auto& y = g->label(v);
      edges.insert(x < y ? std::make_pair(x, y) : std::make_pair(y, x));
    }
  return SimplicialGraph::from_labels(labels, {edges.begin(), edges.end()});
}

VertexSet labels_in(const GraphPtr& target, const GraphPtr& g) {
  std::uint64_t bits = 0;
  for (const auto& l : g->labels()) bits |= 1ULL << target->index_of(l);
  return target->set(bits);
}

const std::vector<std::vector<CellImage>>& twin_of(const GluingSpec& spec) {
  return spec.twin.empty() ? spec.identification : spec.twin;
}

// Index of each left_sub cell, per dimension.
std::vector<std::map<int, std::size_t>> sub_index(const GluingSpec& spec) {
  std::vector<std::map<int, std::size_t>> out(spec.left_sub.size());
  for (std::size_t k = 0; k < spec.left_sub.size(); ++k)
    for (std::size_t i = 0; i < spec.left_sub[k].size(); ++i) out[k][spec.left_sub[k][i]] = i;
  return out;
}

void check_identification(const GluingSpec& spec, const std::vector<std::vector<CellImage>>& ident) {
  if (ident.size() != spec.left_sub.size()) throw GluingError("identification shape differs from left_sub");
  const auto index = sub_index(spec);
  for (std::size_t k = 0; k < ident.size(); ++k) {
    if (ident[k].size() != spec.left_sub[k].size()) throw GluingError("identification shape differs from left_sub");
    std::set<int> hit;
    for (std::size_t i = 0; i < ident[k].size(); ++i) {
      const int c = spec.left_sub[k][i];
      const CellImage& img = ident[k][i];
      const int kk = static_cast<int>(k);
      if (img.cell < 0 || img.cell >= spec.right.complex.count(kk) || !hit.insert(img.cell).second)
        throw GluingError("identification is not injective");
      const Cell& a = spec.left.complex.cell(kk, c);
      const Cell& b = spec.right.complex.cell(kk, img.cell);
      if (static_cast<int>(img.axes.size()) != kk) throw GluingError("malformed identification");
      for (int ax = 0; ax < kk; ++ax)
        if (a.lengths[static_cast<std::size_t>(ax)] != b.lengths[static_cast<std::size_t>(img.axes[static_cast<std::size_t>(ax)])])
          throw GluingError("identification is not an isometry");
      auto facet_image = [&](int fk, int fc) -> const CellImage* {
        const auto it = index[static_cast<std::size_t>(fk)].find(fc);
        return it == index[static_cast<std::size_t>(fk)].end() ? nullptr : &ident[static_cast<std::size_t>(fk)][it->second];
      };
      if (!facet_compatible(spec.left.complex, spec.right.complex, kk, c, img, facet_image))
        throw GluingError("identification does not respect facets");
    }
  }
}

std::optional<NormalForm> conjugator_for(const GraphPtr& g, const std::vector<std::pair<NormalForm, NormalForm>>& pairs) {
  auto fits = [&](const NormalForm& u) {
    for (const auto& [r, l] : pairs)
      if (!(u * r * inverse(u) == l)) return false;
    return true;
  };
  if (fits(identity(g))) return identity(g);
  ConjugacySolver solver(g);
  for (const auto& [r, l] : pairs) {
    if (r == l) continue;
    const auto w = solver.is_conjugate(r, l);  // w^-1 r w = l
    if (!w) return std::nullopt;
    const NormalForm u = inverse(*w);
    return fits(u) ? std::optional<NormalForm>(u) : std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

SubIdentification coordinate_identification(const MarkedComplex& left, const MarkedComplex& right,
                                            const std::vector<std::string>& common,
                                            const std::vector<int>& shift) {
  if (!left.has_coords() || !right.has_coords()) throw GluingError("coordinate identification needs torus coordinates");
  std::vector<int> lpos, rpos;
  for (const auto& l : common) {
    lpos.push_back(left.graph->index_of(l));
    rpos.push_back(right.graph->index_of(l));
    if (lpos.back() < 0 || rpos.back() < 0) throw GluingError("label " + l + " missing on one side");
    if (left.moduli[static_cast<std::size_t>(lpos.back())] != right.moduli[static_cast<std::size_t>(rpos.back())])
      throw GluingError("circle " + l + " is subdivided differently on the two sides");
  }
  std::map<std::vector<int>, int> rindex;
  const CubeComplex& rc = right.complex;
  for (int k = 0; k <= rc.dimension(); ++k)
    for (int c = 0; c < rc.count(k); ++c) rindex[rc.cell(k, c).coords] = c;

  SubIdentification out;
  const CubeComplex& lc = left.complex;
  out.left_sub.resize(static_cast<std::size_t>(lc.dimension() + 1));
  out.images.resize(out.left_sub.size());
  for (int k = 0; k <= lc.dimension(); ++k)
    for (int c = 0; c < lc.count(k); ++c) {
      const auto& s = lc.cell(k, c).coords;
      bool inside = true;
      for (std::size_t v = 0; v < s.size() && inside; ++v)
        if (s[v] != 0 && std::find(lpos.begin(), lpos.end(), static_cast<int>(v)) == lpos.end()) inside = false;
      if (!inside) continue;
      std::vector<int> t(static_cast<std::size_t>(right.graph->vertex_count()), 0);
      for (std::size_t i = 0; i < common.size(); ++i) {
        const int m = right.moduli[static_cast<std::size_t>(rpos[i])];
        const int st = s[static_cast<std::size_t>(lpos[i])];
        const int sh = i < shift.size() ? shift[i] : 0;
        t[static_cast<std::size_t>(rpos[i])] = ((st + 2 * sh) % (2 * m) + 2 * m) % (2 * m);
      }
      const auto it = rindex.find(t);
      if (it == rindex.end() || rc.cell(k, it->second).dim() != k) throw GluingError("no matching cell on the right");
      CellImage img{it->second, {}, std::vector<bool>(static_cast<std::size_t>(k), false)};
      const auto dst = odd_positions(t);
      for (int v : odd_positions(s)) {
        const auto i = static_cast<std::size_t>(std::find(lpos.begin(), lpos.end(), v) - lpos.begin());
        img.axes.push_back(static_cast<int>(std::find(dst.begin(), dst.end(), rpos[i]) - dst.begin()));
      }
      out.left_sub[static_cast<std::size_t>(k)].push_back(c);
      out.images[static_cast<std::size_t>(k)].push_back(std::move(img));
    }
  return out;
}

bool FaultRecord::trivial() const {
  return std::all_of(x.begin(), x.end(), [](const NormalForm& w) { return w.is_identity(); });
}

Glued glue_marked(const GluingSpec& spec) {
  const GraphPtr& gl = spec.left.graph;
  const GraphPtr& gr = spec.right.graph;
  for (int u = 0; u < gl->vertex_count(); ++u)
    for (int v = u + 1; v < gl->vertex_count(); ++v) {
      const int a = gr->index_of(gl->label(u)), b = gr->index_of(gl->label(v));
      if (a >= 0 && b >= 0 && gl->adjacent(u, v) != gr->adjacent(a, b))
        throw GluingError("the two graphs disagree on their common part");
    }
  const GraphPtr target = spec.target ? spec.target : union_graph(gl, gr);
  Glued y;
  y.sigma = labels_in(target, gl);
  y.theta = labels_in(target, gr);
  y.e = y.sigma & y.theta;
  if ((y.sigma | y.theta) != target->all()) throw GluingError("the two graphs do not cover the target");
  for (int u : (y.sigma - y.theta).members())
    for (int v : (y.theta - y.sigma).members())
      if (target->adjacent(u, v)) throw GluingError("target has edges between the two sides");
  for (const GraphPtr& g : {gl, gr})
    for (const auto& [u, v] : g->edges())
      if (!target->adjacent(target->index_of(g->label(u)), target->index_of(g->label(v))))
        throw GluingError("target lacks an edge of a piece");

  check_identification(spec, spec.identification);
  if (!spec.twin.empty()) check_identification(spec, spec.twin);

  const CubeComplex& lc = spec.left.complex;
  const CubeComplex& rc = spec.right.complex;
  MarkedComplex& m = y.marked;
  m.graph = target;
  m.complex = lc;
  for (const auto& l : spec.left.labels) m.labels.push_back(translate(l, target));

  const int top = std::max(lc.dimension(), rc.dimension());
  y.right_map.resize(static_cast<std::size_t>(rc.dimension() + 1));
  for (int k = 0; k <= rc.dimension(); ++k)
    y.right_map[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(rc.count(k)));
  std::vector<std::vector<bool>> identified(y.right_map.size());
  for (std::size_t k = 0; k < y.right_map.size(); ++k) identified[k].assign(y.right_map[k].size(), false);
  for (std::size_t k = 0; k < spec.left_sub.size(); ++k)
    for (std::size_t i = 0; i < spec.left_sub[k].size(); ++i) {
      const CellImage& img = spec.identification[k][i];
      CellImage back = invert(img);
      back.cell = spec.left_sub[k][i];
      y.right_map[k][static_cast<std::size_t>(img.cell)] = back;
      identified[k][static_cast<std::size_t>(img.cell)] = true;
    }

  // Gauge on identified right vertices so identified edges carry equal labels.
  std::vector<NormalForm> right_labels;
  for (const auto& l : spec.right.labels) right_labels.push_back(translate(l, target));
  const int rv = rc.vertex_count();
  std::vector<std::optional<NormalForm>> gauge(static_cast<std::size_t>(rv));
  std::vector<std::vector<std::pair<int, std::size_t>>> sub_adj(static_cast<std::size_t>(rv));
  if (spec.left_sub.size() > 1)
    for (std::size_t i = 0; i < spec.left_sub[1].size(); ++i) {
      const int re = spec.identification[1][i].cell;
      sub_adj[static_cast<std::size_t>(rc.source(re))].push_back({re, i});
      sub_adj[static_cast<std::size_t>(rc.target(re))].push_back({re, i});
    }
  // λ_L(e) read along the right edge's orientation.
  auto left_along = [&](std::size_t i) {
    const NormalForm& l = m.labels[static_cast<std::size_t>(spec.left_sub[1][i])];
    return spec.identification[1][i].flips[0] ? inverse(l) : l;
  };
  for (int root = 0; root < rv; ++root) {
    if (!identified[0][static_cast<std::size_t>(root)] || gauge[static_cast<std::size_t>(root)]) continue;
    // Provisional gauge from ε at the root, then loop readings fix the root.
    std::map<int, NormalForm> g0;
    std::vector<std::pair<NormalForm, NormalForm>> loops;
    g0[root] = identity(target);
    std::deque<int> queue{root};
    std::map<int, NormalForm> rpot{{root, identity(target)}}, lpot{{root, identity(target)}};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (const auto& [re, i] : sub_adj[static_cast<std::size_t>(u)]) {
        const bool out = rc.source(re) == u;
        const int w = out ? rc.target(re) : rc.source(re);
        const NormalForm rstep = out ? right_labels[static_cast<std::size_t>(re)] : inverse(right_labels[static_cast<std::size_t>(re)]);
        const NormalForm lstep = out ? left_along(i) : inverse(left_along(i));
        if (!rpot.count(w)) {
          rpot[w] = rpot[u] * rstep;
          lpot[w] = lpot[u] * lstep;
          queue.push_back(w);
        } else {
          loops.push_back({rpot[u] * rstep * inverse(rpot[w]), lpot[u] * lstep * inverse(lpot[w])});
        }
      }
    }
    const auto u = conjugator_for(target, loops);
    if (!u) throw GluingError("identification does not respect the markings");
    // g(v) λ_R(path) = λ_L(path) g(root) along any path from the root.
    for (const auto& [v, rp] : rpot) gauge[static_cast<std::size_t>(v)] = inverse(lpot[v]) * *u * rp;
  }
  auto g_of = [&](int v) { return gauge[static_cast<std::size_t>(v)] ? *gauge[static_cast<std::size_t>(v)] : identity(target); };
  for (int re = 0; re < rc.edge_count(); ++re) {
    const NormalForm gauged = g_of(rc.source(re)) * right_labels[static_cast<std::size_t>(re)] * inverse(g_of(rc.target(re)));
    right_labels[static_cast<std::size_t>(re)] = gauged;
  }
  if (spec.left_sub.size() > 1)
    for (std::size_t i = 0; i < spec.left_sub[1].size(); ++i)
      if (!(right_labels[static_cast<std::size_t>(spec.identification[1][i].cell)] == left_along(i)))
        throw GluingError("identification does not respect the markings");

  for (int k = 0; k <= top && k <= rc.dimension(); ++k)
    for (int c = 0; c < rc.count(k); ++c) {
      if (identified[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)]) continue;
      const Cell& src = rc.cell(k, c);
      Cell nc;
      nc.lengths = src.lengths;
      for (const auto& pair : src.facets) {
        std::array<FacetRef, 2> np;
        for (int s = 0; s < 2; ++s) {
          const FacetRef& r = pair[static_cast<std::size_t>(s)];
          const CellImage& fm = y.right_map[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(r.cell)];
          FacetRef f{fm.cell, {}, {}};
          for (std::size_t t = 0; t < r.axes.size(); ++t) {
            f.axes.push_back(fm.axes[static_cast<std::size_t>(r.axes[t])]);
            f.flips.push_back(r.flips[t] != fm.flips[static_cast<std::size_t>(r.axes[t])]);
          }
          np[static_cast<std::size_t>(s)] = std::move(f);
        }
        nc.facets.push_back(std::move(np));
      }
      const int id = m.complex.add_cell(std::move(nc));
      y.right_map[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] = identity_image(id, k);
      if (k == 1) m.labels.push_back(right_labels[static_cast<std::size_t>(c)]);
    }
  m.basepoint = spec.left.basepoint;
  m.complex.validate();
  const MarkingReport rep = check_marking(m);
  if (!rep.ok()) throw GluingError("glued marking is not valid");
  if (!npc_check(m.complex).ok) throw GluingError("glued complex is not NPC");
  return y;
}

ComplexAction glue_actions(const GluingSpec& spec, const Glued& y, const ComplexAction& left,
                           const ComplexAction& right) {
  if (left.table != right.table) throw ActionError("the two actions have different groups");
  const CubeComplex& x = y.marked.complex;
  const CubeComplex& rc = spec.right.complex;
  const int lcount = spec.left.complex.dimension();
  ComplexAction a;
  a.table = left.table;
  for (int h = 0; h < left.size(); ++h) {
    std::vector<std::vector<CellImage>> per(static_cast<std::size_t>(x.dimension() + 1));
    for (int k = 0; k <= x.dimension(); ++k) per[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(x.count(k)));
    for (int k = 0; k <= lcount; ++k)
      for (int c = 0; c < spec.left.complex.count(k); ++c) per[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] = left.image(h, k, c);
    for (int k = 0; k <= rc.dimension(); ++k)
      for (int c = 0; c < rc.count(k); ++c) {
        const CellImage& here = y.right_map[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
        const CellImage via_right = then(right.image(h, k, c),
                                         y.right_map[static_cast<std::size_t>(k)][static_cast<std::size_t>(right.image(h, k, c).cell)]);
        // Y-cell `here.cell` is moved to via_right, re-expressed in its own axes.
        const CellImage moved = then(invert(here), via_right);
        CellImage& slot = per[static_cast<std::size_t>(k)][static_cast<std::size_t>(here.cell)];
        if (slot.cell >= 0) {
          if (!(slot == moved)) throw ActionError("actions disagree on the identified subcomplex");
        } else {
          slot = moved;
        }
      }
    a.maps.push_back(std::move(per));
  }
  validate_action(x, a);
  return a;
}

namespace {

EdgePath restricted_path(const CubeComplex& x, const std::set<int>& edges, int from, int to) {
  std::map<int, EdgeStep> parent;
  std::set<int> seen{from};
  std::deque<int> queue{from};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (u == to) break;
    for (int e : edges) {
      for (bool fwd : {true, false}) {
        const EdgeStep s{e, fwd};
        if (step_start(x, s) != u) continue;
        const int w = step_end(x, s);
        if (seen.insert(w).second) {
          parent[w] = s;
          queue.push_back(w);
        }
      }
    }
  }
  if (!seen.count(to)) throw GluingError("no path inside the identified subcomplex");
  EdgePath p;
  for (int v = to; v != from;) {
    const EdgeStep s = parent.at(v);
    p.push_back(s);
    v = step_start(x, s);
  }
  std::reverse(p.begin(), p.end());
  return p;
}

}  // namespace

FaultRecord compute_fault(const Glued& y, const ComplexAction& a, const GluingSpec& spec, int p) {
  FaultRecord rec;
  rec.e = y.e;
  if (spec.left_sub.empty() || spec.left_sub[0].empty()) throw GluingError("empty identified subcomplex");
  const auto& sub_vertices = spec.left_sub[0];
  if (p < 0) p = *std::min_element(sub_vertices.begin(), sub_vertices.end());
  const auto index = sub_index(spec);
  if (!index[0].count(p)) throw GluingError("basepoint outside the identified subcomplex");
  const auto& twin = twin_of(spec);
  const int q = y.right_map[0][static_cast<std::size_t>(twin[0][index[0].at(p)].cell)].cell;
  std::set<int> edges;
  if (spec.left_sub.size() > 1) edges.insert(spec.left_sub[1].begin(), spec.left_sub[1].end());
  const CubeComplex& x = y.marked.complex;
  auto twin_step = [&](EdgeStep s) {
    const CellImage& t = twin[1][index[1].at(s.edge)];
    const CellImage& r = y.right_map[1][static_cast<std::size_t>(t.cell)];
    return EdgeStep{r.cell, s.forward != (t.flips[0] != r.flips[0])};
  };
  rec.p = p;
  rec.q = q;
  const EdgePath delta = restricted_path(x, edges, p, q);
  const GraphPtr& g = y.marked.graph;
  const VertexSet allowed = z_part(y.e) | link(y.e);
  const VertexSet centre = z_part(g->all());
  for (int h = 0; h < a.size(); ++h) {
    const EdgePath gamma = restricted_path(x, edges, p, a.vertex(h, p));
    EdgePath gamma2;
    for (const auto& s : gamma) gamma2.push_back(twin_step(s));
    const int end = gamma2.empty() ? q : step_end(x, gamma2.back());
    if (end != a.vertex(h, q)) throw GluingError("standard identification is not equivariant");
    EdgePath loop = delta;
    loop.insert(loop.end(), gamma2.begin(), gamma2.end());
    const EdgePath hd = reverse_path(a.apply(h, delta));
    loop.insert(loop.end(), hd.begin(), hd.end());
    const EdgePath back = reverse_path(gamma);
    loop.insert(loop.end(), back.begin(), back.end());
    const NormalForm xh = read_path(y.marked, loop);
    if (!support(xh).subset_of(allowed))
      throw FaultOutsideCentralizer("fault " + xh.to_string() + " leaves the centraliser of A_E");
    Letters kept;
    for (const Letter& l : xh.letters())
      if (!centre.contains(l.vertex())) kept.push_back(l);
    rec.x.push_back(xh);
    rec.reduced.push_back(reduce(Word(g, kept)));
  }
  return rec;
}

}  // namespace raag
