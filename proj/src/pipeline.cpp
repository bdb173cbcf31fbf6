#include "raagkit/pipeline.hpp"

#include <deque>

namespace raag {

namespace {

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ManifestError(std::string("bad field '") + key + "': " + e.what());
  }
}

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ManifestError(std::string("manifest lacks '") + key + "'");
  return j.at(key);
}

PieceSpec piece_from_json(const Json& j, std::size_t generators) {
  PieceSpec p;
  p.vertices = get_or(j, "vertices", std::vector<std::string>{});
  p.subdivision = get_or(j, "subdivision", 2);
  const Json moves = j.contains("moves") ? j.at("moves") : Json::array();
  if (moves.size() != generators) throw ManifestError("each piece needs one move table per generator of H");
  for (const Json& per : moves) {
    std::vector<CircleMove> mv;
    for (std::size_t v = 0; v < p.vertices.size(); ++v) {
      CircleMove c{static_cast<int>(v), false, 0};
      if (per.contains(p.vertices[v])) {
        const Json& e = per.at(p.vertices[v]);
        const auto to = get_or(e, "to", p.vertices[v]);
        const auto it = std::find(p.vertices.begin(), p.vertices.end(), to);
        if (it == p.vertices.end()) throw ManifestError("move sends " + p.vertices[v] + " outside the piece");
        c = {static_cast<int>(it - p.vertices.begin()), get_or(e, "flip", false), get_or(e, "shift", 0)};
      }
      mv.push_back(c);
    }
    p.moves.push_back(std::move(mv));
  }
  return p;
}

Realisation build_piece(const Manifest& m, const PieceSpec& p, const FiniteOuterGroup& h, const std::vector<int>& gens) {
  GraphPtr sub;
  try {
    sub = m.graph->induced(m.graph->set_of_labels(p.vertices));
  } catch (const GraphError& e) {
    throw ManifestError(std::string("bad piece: ") + e.what());
  }
  if (sub->labels() != p.vertices) throw ManifestError("piece vertices must follow the graph's order");
  MarkedComplex x = salvetti(sub, p.subdivision);
  ComplexAction a = coordinate_action(x, h.table(), extend_moves(h, gens, p.moves));
  return {std::move(x), std::move(a)};
}

Json words(const std::vector<NormalForm>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(word_to_json(w));
  return out;
}

}  // namespace

Manifest manifest_from_json(const Json& j) {
  Manifest m;
  m.pipeline = get_or(j, "pipeline", std::string());
  if (m.pipeline != "wedge" && m.pipeline != "glue" && m.pipeline != "correct" && m.pipeline != "product")
    throw ManifestError("pipeline must be one of wedge, glue, correct, product");
  try {
    m.graph = graph_from_json(need(j, "graph"));
    for (const Json& f : need(j, "generators")) m.generators.push_back(map_from_json(m.graph, f));
  } catch (const std::invalid_argument& e) {
    throw ManifestError(e.what());
  }
  for (const Json& p : need(j, "pieces")) m.pieces.push_back(piece_from_json(p, m.generators.size()));
  if (m.pipeline != "wedge" && m.pieces.size() != 2) throw ManifestError(m.pipeline + " takes exactly two pieces");
  m.common = get_or(j, "common", std::vector<std::string>{});
  m.shift = get_or(j, "shift", std::vector<int>{});
  m.xi = get_or(j, "xi", std::vector<std::string>{});
  m.group.cap = get_or(j, "cap", m.group.cap);
  m.correction.max_subdivisions = get_or(j, "max_subdivisions", m.correction.max_subdivisions);
  if (j.contains("bound")) {
    m.group.search.radius = get_or<std::size_t>(j, "bound", 0);
    m.correction.search = m.group.search;
  }
  return m;
}

std::vector<std::vector<CircleMove>> extend_moves(const FiniteOuterGroup& h, const std::vector<int>& gens,
                                                  const std::vector<std::vector<CircleMove>>& moves) {
  const std::size_t n = moves.empty() ? 0 : moves[0].size();
  std::vector<std::vector<CircleMove>> out(h.size());
  std::vector<bool> seen(h.size(), false);
  for (std::size_t v = 0; v < n; ++v) out[0].push_back({static_cast<int>(v), false, 0});
  seen[0] = true;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int e = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const int next = h.multiply(gens[i], e);
      if (seen[static_cast<std::size_t>(next)]) continue;
      seen[static_cast<std::size_t>(next)] = true;
      for (std::size_t v = 0; v < n; ++v) {
        const CircleMove& f = out[static_cast<std::size_t>(e)][v];
        const CircleMove& g = moves[i][static_cast<std::size_t>(f.target)];
        out[static_cast<std::size_t>(next)].push_back({g.target, f.flip != g.flip, g.shift + (g.flip ? -f.shift : f.shift)});
      }
      queue.push_back(next);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw ManifestError("generators do not reach every element");
  return out;
}

Json verify_bundle(const Bundle& b, InnerSearch search) {
  const MarkedComplex& m = b.marked;
  Json witnesses = Json::array();
  const auto npc = npc_check(m.complex);
  if (!npc.ok) witnesses.push_back({{"kind", "npc"}, {"vertex", npc.witness->vertex}, {"reason", npc.witness->kind}});
  const int dim = m.complex.dimension(), gdim = dimension(*m.graph);
  if (dim != gdim) witnesses.push_back({{"kind", "dimension"}, {"complex", dim}, {"graph", gdim}});
  const bool real = realises(m, b.action, b.phi, search);
  if (!real) witnesses.push_back({{"kind", "realises"}});

  std::vector<int> bases{m.basepoint};
  const int nv = m.complex.vertex_count();
  for (int v : {nv / 2, nv - 1})
    if (std::find(bases.begin(), bases.end(), v) == bases.end()) bases.push_back(v);
  for (int h = 0; h < b.action.size(); ++h) {
    const RaagMap ref = induced_outer_action(m, b.action, h, bases[0]);
    for (std::size_t i = 1; i < bases.size(); ++i)
      if (!outer_equal(ref, induced_outer_action(m, b.action, h, bases[i]), search))
        witnesses.push_back({{"kind", "basepoint"}, {"element", h}, {"basepoint", bases[i]}});
  }
  return {{"check", "verify"},
          {"status", witnesses.empty() ? "pass" : "fail"},
          {"witnesses", witnesses},
          {"npc", npc.ok},
          {"dimension", dim},
          {"graph_dimension", gdim},
          {"realises", real},
          {"basepoints", bases}};
}

Bundle run_pipeline(const Manifest& m) {
  const FiniteOuterGroup h = close_group(m.graph, m.generators, m.group);
  std::vector<int> gens;
  for (const auto& g : m.generators) gens.push_back(*h.index_of(g, m.group.search));
  std::vector<Realisation> pieces;
  for (const auto& p : m.pieces) pieces.push_back(build_piece(m, p, h, gens));

  Bundle b;
  b.phi = h.elements();
  Json info{{"pipeline", m.pipeline}, {"group_order", h.size()}, {"xi", m.xi}};
  if (m.pipeline == "wedge" || m.pipeline == "product") {
    Realisation r = m.pipeline == "wedge" ? wedge_realisation(pieces) : product_realisation(pieces[0], pieces[1], m.graph);
    b.marked = std::move(r.marked);
    b.action = std::move(r.action);
  } else {
    const auto& l = pieces[0];
    const auto& r = pieces[1];
    const auto actual = coordinate_identification(l.marked, r.marked, m.common, m.shift);
    const auto aligned = coordinate_identification(l.marked, r.marked, m.common);
    GluingSpec spec{l.marked, r.marked, actual.left_sub, actual.images, aligned.images, m.graph};
    Glued y = glue_marked(spec);
    ComplexAction a = glue_actions(spec, y, l.action, r.action);
    const FaultRecord f = compute_fault(y, a, spec);
    info["fault"] = words(f.x);
    info["reduced_fault"] = words(f.reduced);
    if (m.pipeline == "glue") {
      b.marked = std::move(y.marked);
      b.action = std::move(a);
    } else {
      Correction c = correct_gluing(spec, l.action, r.action, b.phi, f, m.correction);
      info["offsets"] = c.offsets;
      info["subdivisions"] = c.subdivisions;
      b.marked = std::move(c.glued.marked);
      b.action = std::move(c.action);
    }
  }
  if (!(*b.marked.graph == *m.graph)) throw ManifestError("pieces assemble to a graph ordered differently from the manifest graph");
  b.marked.graph = m.graph;
  for (auto& w : b.marked.labels) w = translate(w, m.graph);
  b.report = verify_bundle(b, m.group.search);
  b.report["pipeline"] = info;
  return b;
}

}  // namespace raag
