#include <filesystem>
#include <numeric>
#include <sstream>

#include "criteria.hpp"
#include "raagkit/io.hpp"
#include "raagkit/realisation.hpp"
#include "support.hpp"

namespace raag::acceptance {

namespace {

using namespace raag::testing;

int brute_clique_number(const SimplicialGraph& g) {
  const int n = g.vertex_count();
  int best = 0;
  for (std::uint64_t s = 0; s < (1ULL << n); ++s) {
    bool clique = true;
    for (int u = 0; u < n && clique; ++u)
      for (int v = u + 1; v < n && clique; ++v)
        if ((s >> u & 1U) && (s >> v & 1U) && !g.adjacent(u, v)) clique = false;
    if (clique) best = std::max(best, std::popcount(s));
  }
  return best;
}

ComplexAction flip_all(const MarkedComplex& m) {
  std::vector<CircleMove> id, fl;
  for (int v = 0; v < m.graph->vertex_count(); ++v) {
    id.push_back({v, false, 0});
    fl.push_back({v, true, 0});
  }
  return coordinate_action(m, {{0, 1}, {1, 0}}, {id, fl});
}

std::vector<RaagMap> invert_all(const GraphPtr& g) {
  RaagMap f = RaagMap::identity(g);
  for (int v = 0; v < g->vertex_count(); ++v) f = compose(f, make_inversion(g, v));
  return {RaagMap::identity(g), f};
}

Outcome geometry() {
  int graphs = 0, failures = 0;
  for (const auto& g : all_graphs_up_to(5)) {
    ++graphs;
    const auto m = salvetti(g);
    m.complex.validate();
    if (!npc_check(m.complex).ok || m.complex.dimension() != brute_clique_number(*g)) ++failures;
  }
  CubeComplex x;
  const int o = x.add_vertex();
  std::vector<int> axis_vertex, axis_edge;
  for (int i = 0; i < 3; ++i) {
    axis_vertex.push_back(x.add_vertex());
    axis_edge.push_back(x.add_edge(o, axis_vertex.back(), 1));
  }
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int far = x.add_vertex();
    const int ei = x.add_edge(axis_vertex[static_cast<std::size_t>(j)], far, 1);
    const int ej = x.add_edge(axis_vertex[static_cast<std::size_t>(i)], far, 1);
    Cell sq;
    sq.lengths = {Length(1), Length(1)};
    sq.facets.push_back({FacetRef{axis_edge[static_cast<std::size_t>(j)], {0}, {false}}, FacetRef{ej, {0}, {false}}});
    sq.facets.push_back({FacetRef{axis_edge[static_cast<std::size_t>(i)], {0}, {false}}, FacetRef{ei, {0}, {false}}});
    x.add_cell(std::move(sq));
  }
  x.validate();
  const auto corner = npc_check(x);
  const bool witnessed = !corner.ok && corner.witness->kind == "empty_simplex" && corner.witness->vertex == o &&
                         corner.witness->simplex.size() == 3;
  std::ostringstream s;
  s << graphs << " graphs on <= 5 vertices, " << failures << " failures; cube corner "
    << (witnessed ? "rejected with an empty triangle at its corner" : "not rejected correctly");
  return {graphs == 1099 && failures == 0 && witnessed, s.str()};
}

Outcome wedge_example() {
  const GraphPtr gamma = SimplicialGraph::from_labels({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
  const auto ab = salvetti(gamma->induced(gamma->set({0, 1})));
  const auto cd = salvetti(gamma->induced(gamma->set({2, 3})));
  const Realisation w = wedge_realisation({{ab, flip_all(ab)}, {cd, flip_all(cd)}});
  const bool same = *w.marked.graph == *gamma;
  const bool real = same && realises(w.marked, w.action, invert_all(w.marked.graph));
  const bool npc = npc_check(w.marked.complex).ok;
  const int dim = w.marked.complex.dimension();
  std::ostringstream s;
  s << "graph " << (same ? "matches" : "differs") << ", realises " << real << ", npc " << npc << ", dimension " << dim;
  return {same && real && npc && dim == 2, s.str()};
}

Outcome fault_example() {
  const GraphPtr gamma = SimplicialGraph::from_labels({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  const auto left = salvetti(gamma->induced(gamma->set({0, 1})));
  const auto right = salvetti(gamma->induced(gamma->set({1, 2})));
  const auto al = flip_all(left), ar = flip_all(right);
  const auto rotated = coordinate_identification(left, right, {"b"}, {1});
  const auto aligned = coordinate_identification(left, right, {"b"});
  const GluingSpec spec{left, right, rotated.left_sub, rotated.images, aligned.images, gamma};
  const Glued y = glue_marked(spec);
  const ComplexAction a = glue_actions(spec, y, al, ar);
  const FaultRecord f = compute_fault(y, a, spec);
  const NormalForm b = generator(gamma, 1);
  const bool fault_b = f.x[0].is_identity() && (f.x[1] == b || f.x[1] == inverse(b));
  const auto phi = invert_all(gamma);
  const Correction c = correct_gluing(spec, al, ar, phi, f);
  const bool real = realises(c.glued.marked, c.action, phi);
  const bool npc = npc_check(c.glued.marked.complex).ok;
  std::ostringstream s;
  s << "fault x(h) = " << (f.x[1].is_identity() ? "e" : f.x[1].to_string()) << ", corrected complex realises " << real
    << ", npc " << npc << ", dimension " << c.glued.marked.complex.dimension();
  return {fault_b && real && npc && c.glued.marked.complex.dimension() == 2, s.str()};
}

// Vertex position j of the circle vertex with coordinates {2j}.
std::vector<int> positions(const MarkedComplex& m) {
  std::vector<int> pos(static_cast<std::size_t>(m.complex.vertex_count()));
  for (int v = 0; v < m.complex.vertex_count(); ++v) pos[static_cast<std::size_t>(v)] = m.complex.cell(0, v).coords[0] / 2;
  return pos;
}

std::vector<int> rotation_map(const CircleAction& c, int h) {
  const auto pos = positions(c.marked);
  std::vector<int> at(pos.size());
  for (std::size_t v = 0; v < pos.size(); ++v)
    at[static_cast<std::size_t>(pos[v])] = pos[static_cast<std::size_t>(c.action.vertex(h, static_cast<int>(v)))];
  return at;
}

std::vector<int> direct_residues(const CircleAction& c) {
  std::vector<int> out;
  const int m = c.marked.moduli[0];
  for (int h = 0; h < c.action.size(); ++h) {
    const auto step = rotation_map(c, h);
    int ord = 1;
    for (int j = step[0]; j != 0; j = step[static_cast<std::size_t>(j)]) ++ord;
    out.push_back((ord * step[0] / m) % ord);
  }
  return out;
}

Outcome rotations() {
  int actions = 0, residue_failures = 0, compatible = 0, incompatible = 0, align_failures = 0;
  for (int m = 2; m <= 8; ++m) {
    std::vector<CircleAction> acts;
    std::vector<int> orders;
    for (int mu = 0; mu < m; ++mu) {
      const int n = m / std::gcd(m, mu);
      std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
      std::vector<CircleElement> el;
      for (int i = 0; i < n; ++i) {
        el.push_back({false, i * mu % m});
        for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
      }
      acts.push_back(build_circle_action(m, table, el));
      orders.push_back(n);
      ++actions;
      const auto direct = direct_residues(acts.back());
      for (int h = 0; h < n; ++h)
        if (rotation_invariant(acts.back().marked, acts.back().action, h).k != direct[static_cast<std::size_t>(h)]) ++residue_failures;
    }
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) {
        if (orders[static_cast<std::size_t>(p)] != orders[static_cast<std::size_t>(q)]) continue;
        const int n = orders[static_cast<std::size_t>(p)];
        const auto kp = direct_residues(acts[static_cast<std::size_t>(p)]);
        const auto kq = direct_residues(acts[static_cast<std::size_t>(q)]);
        bool same = true, opposite = true;
        for (int h = 0; h < n; ++h) {
          same = same && kp[static_cast<std::size_t>(h)] == kq[static_cast<std::size_t>(h)];
          opposite = opposite && (kp[static_cast<std::size_t>(h)] + kq[static_cast<std::size_t>(h)]) % (n / std::gcd(n, h)) == 0;
        }
        if (!same && !opposite) {
          ++incompatible;
          try {
            align_circles(acts[static_cast<std::size_t>(p)], acts[static_cast<std::size_t>(q)]);
            ++align_failures;
          } catch (const IncompatibleActions&) {
          }
          continue;
        }
        ++compatible;
        try {
          const auto al = align_circles(acts[static_cast<std::size_t>(p)], acts[static_cast<std::size_t>(q)]);
          auto phi = [&](int j) { return ((al.rotation + (al.reflect ? -j : j)) % m + m) % m; };
          for (int h = 0; h < n; ++h) {
            const auto rp = rotation_map(acts[static_cast<std::size_t>(p)], h);
            const auto rq = rotation_map(acts[static_cast<std::size_t>(q)], h);
            for (int j = 0; j < m; ++j)
              if (phi(rp[static_cast<std::size_t>(j)]) != rq[static_cast<std::size_t>(phi(j))]) {
                ++align_failures;
                h = n;
                break;
              }
          }
        } catch (const IncompatibleActions&) {
          ++align_failures;
        }
      }
  }
  std::ostringstream s;
  s << actions << " rotation actions on circles with 2..8 edges, " << residue_failures << " residue mismatches; "
    << compatible << " compatible and " << incompatible << " incompatible pairs, " << align_failures << " alignment failures";
  return {residue_failures == 0 && align_failures == 0, s.str()};
}

Outcome basepoints() {
  int bundles = 0, comparisons = 0, failures = 0;
  for (const auto& e : std::filesystem::directory_iterator(std::filesystem::path(RAAGKIT_DATA_DIR) / "bundles")) {
    const Bundle b = bundle_from_json(read_json(e.path()));
    ++bundles;
    const int n = b.marked.complex.vertex_count();
    const std::vector<int> bases{0, n / 2, n - 1};
    if (n < 3) ++failures;
    for (int h = 0; h < b.action.size(); ++h) {
      const RaagMap ref = induced_outer_action(b.marked, b.action, h, bases[0]);
      for (std::size_t i = 1; i < bases.size(); ++i) {
        ++comparisons;
        if (!outer_equal(ref, induced_outer_action(b.marked, b.action, h, bases[i]))) ++failures;
      }
    }
  }
  std::ostringstream s;
  s << bundles << " shipped bundles, " << comparisons << " basepoint comparisons, " << failures << " failures";
  return {bundles > 0 && failures == 0, s.str()};
}

}  // namespace

std::vector<Criterion> geometry_criteria() {
  return {{5, "salvetti complexes are NPC of the right dimension", geometry},
          {6, "wedge of two flip tori realises inversion of all generators", wedge_example},
          {7, "rotated gluing has fault b and is corrected", fault_example},
          {8, "rotation residues and circle alignment", rotations},
          {9, "induced actions are basepoint independent on shipped bundles", basepoints}};
}

}  // namespace raag::acceptance
