#include "commands.hpp"

#include <sstream>

#include "raagkit/invariant.hpp"
#include "raagkit/pipeline.hpp"

namespace raag::cli {

namespace {

GraphPtr load_graph(const Options& o) {
  if (o.graph.empty()) throw UsageError("--graph is required");
  return graph_from_json(read_json(o.graph));
}

std::vector<RaagMap> load_auts(const GraphPtr& g, const Options& o) {
  if (o.auts.empty()) throw UsageError("--auts is required");
  const Json j = read_json(o.auts);
  std::vector<RaagMap> out;
  if (j.is_array()) {
    for (const Json& f : j) out.push_back(map_from_json(g, f));
  } else {
    out.push_back(map_from_json(g, j));
  }
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string t; std::getline(in, t, ',');)
    if (!t.empty()) out.push_back(t);
  return out;
}

VertexSet vertex_set(const GraphPtr& g, const std::string& labels) {
  return g->set_of_labels(split(labels));
}

InnerSearch search(const Options& o) { return {o.bound}; }

FiniteOuterGroup load_group(const GraphPtr& g, const Options& o) {
  return close_group(g, load_auts(g, o), {o.cap, search(o)});
}

Json sets(const std::vector<VertexSet>& ss) {
  Json out = Json::array();
  for (const auto& s : ss) out.push_back(s.to_string());
  return out;
}

Json table_lines(const InvariantSystem& l) {
  Json out = Json::array();
  const int n = l.graph()->vertex_count();
  for (std::uint64_t s = 0; s < (1ULL << n); ++s)
    out.push_back(l.graph()->set(s).to_string() + (l.contains(s) ? " 1" : " 0"));
  return out;
}

int label_index(const GraphPtr& g, const std::string& l) {
  const int v = g->index_of(l);
  if (v < 0) throw UsageError("unknown vertex " + l);
  return v;
}

Outcome check(const std::string& name, Json witnesses, Json extra = Json::object()) {
  const bool ok = witnesses.empty();
  Json r{{"check", name}, {"status", ok ? "pass" : "fail"}, {"witnesses", std::move(witnesses)}};
  r.update(extra);
  return {name, std::move(r), ok ? 0 : 2, std::nullopt};
}

}  // namespace

Outcome graph_cmd(const std::string& action, const Options& o) {
  const GraphPtr g = load_graph(o);
  const VertexSet all = g->all();
  std::vector<VertexSet> subjects;
  if (o.vertices.empty()) {
    for (int v = 0; v < g->vertex_count(); ++v) subjects.push_back(g->vertex(v));
  } else {
    subjects.push_back(vertex_set(g, o.vertices));
  }
  Json r{{"graph", graph_to_json(*g)}};
  if (action == "links" || action == "stars") {
    Json rows = Json::array();
    for (const auto& s : subjects)
      rows.push_back({{"set", s.to_string()}, {action == "links" ? "link" : "star", (action == "links" ? link(s) : star(s)).to_string()}});
    r[action] = rows;
  } else if (action == "joins") {
    const auto d = join_decomposition(o.vertices.empty() ? all : subjects[0]);
    r["factors"] = sets(d.factors);
    r["z_part"] = d.z_part.to_string();
  } else if (action == "dimension") {
    r["dimension"] = dimension(*g);
  } else {
    throw UsageError("graph takes links, stars, joins or dimension");
  }
  return {"graph_" + action, r, 0, std::nullopt};
}

Outcome word_cmd(const std::string& action, const std::vector<std::string>& args, const Options& o) {
  const GraphPtr g = load_graph(o);
  if (action == "reduce") {
    if (args.size() != 1) throw UsageError("word reduce takes one word");
    const NormalForm w = reduce(parse_word(g, args[0]));
    return {"word_reduce", {{"input", args[0]}, {"normal_form", w.to_string()}, {"length", w.length()}}, 0, std::nullopt};
  }
  if (action == "conjugate") {
    if (args.size() != 2) throw UsageError("word conjugate takes two words");
    const auto x = is_conjugate(parse_word(g, args[0]), parse_word(g, args[1]));
    Json r{{"input", args}, {"conjugate", x.has_value()}};
    if (x) r["witness"] = x->to_string();
    return {"word_conjugate", r, 0, std::nullopt};
  }
  throw UsageError("word takes reduce or conjugate");
}

Outcome aut_cmd(const std::string& action, const std::vector<std::string>& args, const Options& o) {
  const GraphPtr g = load_graph(o);
  if (action == "construct") {
    if (args.empty()) throw UsageError("aut construct needs vertex arguments");
    std::vector<int> vs;
    for (const auto& a : args) vs.push_back(label_index(g, a));
    RaagMap f = RaagMap::identity(g);
    if (o.kind == "inversion" && vs.size() == 1) {
      f = make_inversion(g, vs[0]);
    } else if (o.kind == "partial_conjugation" && vs.size() >= 2) {
      f = make_partial_conjugation(g, vs[0], g->set_of_labels({args.begin() + 1, args.end()}));
    } else if ((o.kind == "transvection" || o.kind == "fold" || o.kind == "twist") && vs.size() == 2) {
      f = make_transvection(g, vs[0], vs[1]);
    } else if (o.kind == "graph_symmetry" && static_cast<int>(vs.size()) == g->vertex_count()) {
      f = make_graph_symmetry(g, vs);
    } else {
      throw UsageError("--kind must be inversion (v), partial_conjugation (v c...), transvection (w v) or graph_symmetry (images)");
    }
    return {"aut_construct", map_to_json(f), 0, std::nullopt};
  }
  const auto maps = load_auts(g, o);
  Json rows = Json::array();
  if (action == "classify") {
    for (const auto& f : maps) {
      const auto c = classify_untwisted(f);
      rows.push_back({{"tag", f.tag()}, {"in_aut0", to_string(c.in_aut0)}, {"in_uaut0", to_string(c.in_uaut0)}});
    }
  } else if (action == "is-inner") {
    for (const auto& f : maps) {
      const auto x = is_inner(f, search(o));
      Json row{{"inner", x.has_value()}};
      if (x) row["conjugator"] = x->to_string();
      rows.push_back(row);
    }
  } else {
    throw UsageError("aut takes construct, classify or is-inner");
  }
  return {"aut_" + action, {{"results", rows}}, 0, std::nullopt};
}

Outcome group_cmd(const std::string& action, const Options& o) {
  if (action != "close") throw UsageError("group takes close");
  const GraphPtr g = load_graph(o);
  const FiniteOuterGroup h = load_group(g, o);
  Json elements = Json::array();
  for (const auto& f : h.elements()) elements.push_back(map_to_json(f));
  return {"group_close", {{"order", h.size()}, {"table", h.table()}, {"elements", elements}}, 0, std::nullopt};
}

Outcome invariants_cmd(const std::string& action, const Options& o) {
  const GraphPtr g = load_graph(o);
  const FiniteOuterGroup h = load_group(g, o);
  const InvariantSystem l = compute_L_parallel(h, o.jobs);
  if (action == "compute-L")
    return {"invariants_compute_L", {{"members", sets(l.sets())}, {"table", table_lines(l)}}, 0, std::nullopt};
  if (action == "verify-closure") {
    const ClosureReport rep = verify_closure(l, {o.link_preserving});
    Json witnesses = Json::array();
    for (const auto& c : rep.checks)
      for (const auto& w : c.witnesses) witnesses.push_back({{"check", c.check}, {"sets", sets(w)}});
    Json checks = Json::array();
    for (const auto& c : rep.checks) checks.push_back({{"check", c.check}, {"passed", c.passed}});
    return check("verify_closure", witnesses, {{"checks", checks}});
  }
  if (action == "assembly-plan") {
    if (o.xi.empty()) throw UsageError("assembly-plan needs --xi");
    try {
      const AssemblyPlan p = assembly_plan(l, vertex_set(g, o.xi));
      return {"invariants_assembly_plan",
              {{"gamma_prime", p.gamma_prime.to_string()},
               {"case", p.part == AssemblyCase::components ? "components" : "all_but_one"},
               {"maximal_candidates", sets(p.maximal_candidates)},
               {"theta", p.theta.to_string()},
               {"theta_bar", p.theta_bar.to_string()},
               {"delta", p.delta.to_string()},
               {"delta_prime", p.delta_prime.to_string()},
               {"s_system", sets(p.s_system.sets())},
               {"s_gamma_prime", sets(p.s_gamma_prime.sets())}},
              0,
              std::nullopt};
    } catch (const AmbiguousMaximal& e) {
      return check("assembly_plan", Json::array({{{"kind", "ambiguous_maximal"}, {"candidates", sets(e.candidates())}}}));
    }
  }
  throw UsageError("invariants takes compute-L, verify-closure or assembly-plan");
}

Outcome complex_cmd(const std::string& action, const std::vector<std::string>& args, const Options& o) {
  if (action == "npc-check" && !args.empty()) {
    const Json j = read_json(args[0]);
    const CubeComplex x = j.contains("marked") ? marked_from_json(j.at("marked")).complex
                          : j.contains("complex") ? marked_from_json(j).complex
                                                  : complex_from_json(j);
    const auto r = npc_check_parallel(x, o.jobs);
    Json w = Json::array();
    if (!r.ok) w.push_back({{"vertex", r.witness->vertex}, {"kind", r.witness->kind}, {"size", r.witness->simplex.size()}});
    return check("npc_check", w, {{"dimension", x.dimension()}});
  }
  const GraphPtr g = load_graph(o);
  if (action == "salvetti") {
    const MarkedComplex m = salvetti(g, o.subdiv);
    return {"complex_salvetti", {{"dimension", m.complex.dimension()}, {"marked", marked_to_json(m)}}, 0, std::nullopt};
  }
  if (action == "npc-check") {
    const MarkedComplex m = salvetti(g, o.subdiv);
    const auto r = npc_check_parallel(m.complex, o.jobs);
    Json w = Json::array();
    if (!r.ok) w.push_back({{"vertex", r.witness->vertex}, {"kind", r.witness->kind}});
    return check("npc_check", w, {{"dimension", m.complex.dimension()}, {"graph_dimension", dimension(*g)}});
  }
  if (action == "product") {
    if (o.vertices.empty()) throw UsageError("complex product needs --vertices for the left factor");
    const VertexSet left = vertex_set(g, o.vertices);
    const VertexSet right = g->all() - left;
    if (!forms_join(left, right)) throw UsageError("the two factors do not form a join");
    const MarkedComplex m = product(salvetti(g->induced(left), o.subdiv), salvetti(g->induced(right), o.subdiv), g);
    return {"complex_product", {{"dimension", m.complex.dimension()}, {"marked", marked_to_json(m)}}, 0, std::nullopt};
  }
  throw UsageError("complex takes salvetti, npc-check or product");
}

Outcome realize_cmd(const std::string& action, const std::string& manifest, const Options& o) {
  Json j = read_json(manifest);
  const std::string declared = j.value("pipeline", std::string());
  if (declared != action) throw UsageError("manifest declares pipeline '" + declared + "', not '" + action + "'");
  if (o.bound) j["bound"] = *o.bound;
  const Manifest m = manifest_from_json(j);
  const Bundle b = run_pipeline(m);
  Outcome out{"realize_" + action, b.report, b.report["status"] == "pass" ? 0 : 2, bundle_to_json(b)};
  return out;
}

Outcome verify_cmd(const std::string& bundle, const Options& o) {
  const Bundle b = bundle_from_json(read_json(bundle));
  Json r = verify_bundle(b, search(o));
  const int status = r["status"] == "pass" ? 0 : 2;
  return {"verify", std::move(r), status, std::nullopt};
}

}  // namespace raag::cli
