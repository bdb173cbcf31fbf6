#include "raagkit/io.hpp"

#include <fstream>
#include <sstream>

namespace raag {

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad field '") + key + "': " + e.what());
  }
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Json image_to_json(const CellImage& c) {
  return {{"cell", c.cell}, {"axes", c.axes}, {"flips", c.flips}};
}

CellImage image_from_json(const Json& j) {
  return {field<int>(j, "cell"), field<std::vector<int>>(j, "axes"), field<std::vector<bool>>(j, "flips")};
}

std::vector<NormalForm> words_by_label(const GraphPtr& g, const Json& j, const char* key) {
  const Json& obj = member(j, key);
  if (!obj.is_object() || static_cast<int>(obj.size()) != g->vertex_count())
    throw FormatError(std::string("'") + key + "' must map every generator");
  std::vector<NormalForm> out;
  for (const auto& l : g->labels()) {
    if (!obj.contains(l)) throw FormatError(std::string("'") + key + "' lacks generator " + l);
    out.push_back(word_from_json(g, obj.at(l)));
  }
  return out;
}

}  // namespace

Json graph_to_json(const SimplicialGraph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({g.label(u), g.label(v)});
  return {{"vertices", g.labels()}, {"edges", edges}};
}

GraphPtr graph_from_json(const Json& j) {
  auto labels = field<std::vector<std::string>>(j, "vertices");
  auto edges = field<std::vector<std::pair<std::string, std::string>>>(j, "edges");
  return SimplicialGraph::from_labels(std::move(labels), edges);
}

Json word_to_json(const NormalForm& w) { return w.to_string(); }

NormalForm word_from_json(const GraphPtr& g, const Json& j) {
  if (!j.is_string()) throw FormatError("word must be a string");
  return parse_element(g, j.get<std::string>());
}

Json map_to_json(const RaagMap& f) {
  const auto& g = *f.graph();
  Json images = Json::object(), inv = Json::object();
  for (int v = 0; v < g.vertex_count(); ++v) {
    images[g.label(v)] = word_to_json(f.image(v));
    inv[g.label(v)] = word_to_json(f.inverse_image(v));
  }
  Json out{{"images", images}, {"inverse_images", inv}};
  if (f.tagged()) {
    out["tag"] = f.tag();
    Json factors = Json::array();
    for (auto k : f.factors()) factors.push_back(to_string(k));
    out["factors"] = factors;
  }
  return out;
}

RaagMap map_from_json(const GraphPtr& g, const Json& j) {
  auto images = words_by_label(g, j, "images");
  auto inv = words_by_label(g, j, "inverse_images");
  std::optional<std::vector<GeneratorKind>> factors;
  auto kind = [](const std::string& s) {
    auto k = generator_kind_from_string(s);
    if (!k) throw FormatError("unknown generator kind '" + s + "'");
    return *k;
  };
  if (j.contains("factors")) {
    factors.emplace();
    for (const auto& s : field<std::vector<std::string>>(j, "factors")) factors->push_back(kind(s));
  } else if (j.contains("tag")) {
    const auto t = field<std::string>(j, "tag");
    if (!t.empty() && t != "composite") factors = std::vector<GeneratorKind>{kind(t)};
  }
  return RaagMap(g, std::move(images), std::move(inv), std::move(factors));
}

std::string length_to_string(const Length& l) {
  if (l.denominator() == 1) return std::to_string(l.numerator());
  return std::to_string(l.numerator()) + "/" + std::to_string(l.denominator());
}

Length length_from_string(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto slash = s.find('/');
    const long long num = std::stoll(s.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? s.size() : slash)) throw FormatError("bad length '" + s + "'");
    if (slash == std::string::npos) return Length(num);
    const std::string den = s.substr(slash + 1);
    const long long d = std::stoll(den, &used);
    if (used != den.size() || d == 0) throw FormatError("bad length '" + s + "'");
    return Length(num, d);
  } catch (const std::logic_error&) {
    throw FormatError("bad length '" + s + "'");
  }
}

Json complex_to_json(const CubeComplex& x) {
  Json dims = Json::array();
  for (int k = 0; k <= x.dimension(); ++k) {
    Json cells = Json::array();
    for (int id = 0; id < x.count(k); ++id) {
      const Cell& c = x.cell(k, id);
      Json facets = Json::array(), lengths = Json::array();
      for (const auto& pair : c.facets)
        facets.push_back({image_to_json({pair[0].cell, pair[0].axes, pair[0].flips}),
                          image_to_json({pair[1].cell, pair[1].axes, pair[1].flips})});
      for (const auto& l : c.lengths) lengths.push_back(length_to_string(l));
      cells.push_back({{"facets", facets}, {"lengths", lengths}, {"coords", c.coords}});
    }
    dims.push_back(cells);
  }
  return {{"cells", dims}};
}

CubeComplex complex_from_json(const Json& j) {
  const Json& dims = member(j, "cells");
  if (!dims.is_array()) throw FormatError("'cells' must be an array");
  CubeComplex x;
  for (std::size_t k = 0; k < dims.size(); ++k)
    for (const Json& cj : dims[k]) {
      Cell c;
      for (const auto& s : field<std::vector<std::string>>(cj, "lengths")) c.lengths.push_back(length_from_string(s));
      const Json& facets = member(cj, "facets");
      if (c.lengths.size() != k || facets.size() != k) throw FormatError("cell listed under the wrong dimension");
      for (const Json& pair : facets) {
        if (!pair.is_array() || pair.size() != 2) throw FormatError("facets come in pairs");
        const CellImage lo = image_from_json(pair[0]), hi = image_from_json(pair[1]);
        c.facets.push_back({FacetRef{lo.cell, lo.axes, lo.flips}, FacetRef{hi.cell, hi.axes, hi.flips}});
      }
      c.coords = field<std::vector<int>>(cj, "coords");
      try {
        x.add_cell(std::move(c));
      } catch (const ComplexError& e) {
        throw FormatError(std::string("bad cell: ") + e.what());
      }
    }
  x.validate();
  return x;
}

Json marked_to_json(const MarkedComplex& m) {
  Json labels = Json::array();
  for (const auto& w : m.labels) labels.push_back(word_to_json(w));
  return {{"graph", graph_to_json(*m.graph)}, {"complex", complex_to_json(m.complex)},
          {"basepoint", m.basepoint},         {"labels", labels},
          {"moduli", m.moduli},               {"coordinates", m.coordinates}};
}

MarkedComplex marked_from_json(const Json& j) {
  MarkedComplex m;
  m.graph = graph_from_json(member(j, "graph"));
  m.complex = complex_from_json(member(j, "complex"));
  m.basepoint = field<int>(j, "basepoint");
  for (const Json& w : member(j, "labels")) m.labels.push_back(word_from_json(m.graph, w));
  m.moduli = field<std::vector<int>>(j, "moduli");
  m.coordinates = field<bool>(j, "coordinates");
  if (static_cast<int>(m.labels.size()) != m.complex.edge_count()) throw FormatError("one label per edge expected");
  if (m.basepoint < 0 || m.basepoint >= m.complex.vertex_count()) throw FormatError("basepoint is not a vertex");
  return m;
}

Json action_to_json(const ComplexAction& a) {
  Json maps = Json::array();
  for (const auto& per : a.maps) {
    Json dims = Json::array();
    for (const auto& cells : per) {
      Json row = Json::array();
      for (const auto& c : cells) row.push_back(image_to_json(c));
      dims.push_back(row);
    }
    maps.push_back(dims);
  }
  return {{"table", a.table}, {"maps", maps}};
}

ComplexAction action_from_json(const Json& j) {
  ComplexAction a;
  a.table = field<std::vector<std::vector<int>>>(j, "table");
  for (const Json& per : member(j, "maps")) {
    std::vector<std::vector<CellImage>> dims;
    for (const Json& cells : per) {
      std::vector<CellImage> row;
      for (const Json& c : cells) row.push_back(image_from_json(c));
      dims.push_back(std::move(row));
    }
    a.maps.push_back(std::move(dims));
  }
  return a;
}

Json bundle_to_json(const Bundle& b) {
  Json phi = Json::array();
  for (const auto& f : b.phi) phi.push_back(map_to_json(f));
  return {{"marked", marked_to_json(b.marked)}, {"action", action_to_json(b.action)},
          {"automorphisms", phi}, {"report", b.report}};
}

Bundle bundle_from_json(const Json& j) {
  Bundle b;
  b.marked = marked_from_json(member(j, "marked"));
  b.action = action_from_json(member(j, "action"));
  for (const Json& f : member(j, "automorphisms")) b.phi.push_back(map_from_json(b.marked.graph, f));
  if (j.contains("report")) b.report = j.at("report");
  validate_action(b.marked.complex, b.action);
  if (static_cast<int>(b.phi.size()) != b.action.size()) throw FormatError("one automorphism per group element expected");
  return b;
}

Json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw FormatError("cannot open " + p.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(p.string() + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json(const std::filesystem::path& p, const Json& j) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw FormatError("cannot write " + p.string());
  out << dump(j);
}

}  // namespace raag
