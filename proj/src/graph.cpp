#include "raagkit/graph.hpp"

#include <algorithm>
#include <set>

namespace raag {

namespace {

std::uint64_t full_mask(int n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1); }

template <typename F>
void for_each_bit(std::uint64_t bits, F&& f) {
  while (bits) {
    int v = std::countr_zero(bits);
    bits &= bits - 1;
    f(v);
  }
}

}  // namespace

// ---------------------------------------------------------------- VertexSet

VertexSet::VertexSet(const SimplicialGraph* ambient, std::uint64_t bits)
    : ambient_(ambient), bits_(bits) {
  if (ambient_ && (bits & ~full_mask(ambient_->vertex_count())))
    throw GraphError("vertex set exceeds ambient graph");
}

void VertexSet::check_same(const VertexSet& o) const {
  if (ambient_ != o.ambient_) throw GraphError("vertex sets belong to different graphs");
}

bool VertexSet::subset_of(const VertexSet& o) const {
  check_same(o);
  return (bits_ & ~o.bits_) == 0;
}

std::vector<int> VertexSet::members() const {
  std::vector<int> out;
  for_each_bit(bits_, [&](int v) { out.push_back(v); });
  return out;
}

VertexSet VertexSet::operator|(const VertexSet& o) const {
  check_same(o);
  return {ambient_, bits_ | o.bits_};
}
VertexSet VertexSet::operator&(const VertexSet& o) const {
  check_same(o);
  return {ambient_, bits_ & o.bits_};
}
VertexSet VertexSet::operator-(const VertexSet& o) const {
  check_same(o);
  return {ambient_, bits_ & ~o.bits_};
}
VertexSet VertexSet::with(int v) const { return {ambient_, bits_ | (1ULL << v)}; }
VertexSet VertexSet::without(int v) const { return {ambient_, bits_ & ~(1ULL << v)}; }

bool VertexSet::lex_less(const VertexSet& o) const {
  auto a = members();
  auto b = o.members();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<std::string> VertexSet::labels() const {
  std::vector<std::string> out;
  for (int v : members()) out.push_back(ambient_->label(v));
  return out;
}

std::string VertexSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (const auto& l : labels()) {
    if (!first) s += ",";
    s += l;
    first = false;
  }
  return s + "}";
}

// ----------------------------------------------------------- SimplicialGraph

SimplicialGraph::SimplicialGraph(std::vector<std::string> labels,
                                 const std::vector<std::pair<int, int>>& edges)
    : labels_(std::move(labels)), adj_(labels_.size(), 0) {
  if (labels_.size() > static_cast<std::size_t>(kMaxVertices))
    throw GraphError("graph exceeds " + std::to_string(kMaxVertices) + " vertices");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw GraphError("empty vertex label");
    if (!seen.insert(l).second) throw GraphError("duplicate vertex label '" + l + "'");
  }
  const int n = vertex_count();
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw GraphError("edge endpoint out of range");
    if (u == v) throw GraphError("loop at vertex '" + labels_[u] + "'");
    if (adjacent(u, v))
      throw GraphError("duplicate edge " + labels_[u] + "-" + labels_[v]);
    adj_[u] |= 1ULL << v;
    adj_[v] |= 1ULL << u;
  }
}

GraphPtr SimplicialGraph::make(std::vector<std::string> labels,
                               const std::vector<std::pair<int, int>>& edges) {
  return std::make_shared<const SimplicialGraph>(std::move(labels), edges);
}

GraphPtr SimplicialGraph::from_labels(
    std::vector<std::string> labels,
    const std::vector<std::pair<std::string, std::string>>& edges) {
  std::vector<std::pair<int, int>> idx;
  auto find = [&](const std::string& l) {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw GraphError("edge mentions unknown vertex '" + l + "'");
    return static_cast<int>(it - labels.begin());
  };
  for (const auto& [a, b] : edges) idx.emplace_back(find(a), find(b));
  return make(std::move(labels), idx);
}

int SimplicialGraph::index_of(std::string_view label) const {
  for (int i = 0; i < vertex_count(); ++i)
    if (labels_[i] == label) return i;
  return -1;
}

std::vector<std::pair<int, int>> SimplicialGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < vertex_count(); ++u)
    for (int v = u + 1; v < vertex_count(); ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

int SimplicialGraph::edge_count() const {
  int c = 0;
  for (auto a : adj_) c += std::popcount(a);
  return c / 2;
}

VertexSet SimplicialGraph::all() const { return {this, full_mask(vertex_count())}; }
VertexSet SimplicialGraph::set(std::uint64_t bits) const { return {this, bits}; }

VertexSet SimplicialGraph::set(std::initializer_list<int> vs) const {
  std::uint64_t b = 0;
  for (int v : vs) {
    if (v < 0 || v >= vertex_count()) throw GraphError("vertex index out of range");
    b |= 1ULL << v;
  }
  return {this, b};
}

VertexSet SimplicialGraph::set_of_labels(const std::vector<std::string>& labels) const {
  std::uint64_t b = 0;
  for (const auto& l : labels) {
    int v = index_of(l);
    if (v < 0) throw GraphError("unknown vertex '" + l + "'");
    b |= 1ULL << v;
  }
  return {this, b};
}

GraphPtr SimplicialGraph::induced(const VertexSet& s) const {
  if (s.ambient() != this) throw GraphError("vertex set belongs to a different graph");
  auto members = s.members();
  std::vector<std::string> labels;
  for (int v : members) labels.push_back(labels_[v]);
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (adjacent(members[i], members[j]))
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return make(std::move(labels), edges);
}

// ------------------------------------------------------------ link calculus

VertexSet link(const VertexSet& s) {
  const auto* g = s.ambient();
  std::uint64_t acc = g->all().bits();
  for_each_bit(s.bits(), [&](int v) { acc &= g->neighbours(v); });
  return g->set(acc);
}

VertexSet star(const VertexSet& s) { return link(s) | s; }

VertexSet extended_star(const VertexSet& s) { return star(link(s)); }

VertexSet restricted_link(const VertexSet& s, const VertexSet& t) {
  if (!s.subset_of(t)) throw GraphError("restricted link requires S ⊆ T");
  return link(s) & t;
}

VertexSet restricted_star(const VertexSet& s, const VertexSet& t) {
  if (!s.subset_of(t)) throw GraphError("restricted star requires S ⊆ T");
  return star(s) & t;
}

JoinDecomposition join_decomposition(const VertexSet& s) {
  const auto* g = s.ambient();
  JoinDecomposition out{{}, g->none()};
  std::uint64_t rest = s.bits();
  while (rest) {
    int start = std::countr_zero(rest);
    std::uint64_t comp = 1ULL << start;
    std::uint64_t frontier = comp;
    while (frontier) {
      int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      // Complement-graph neighbours of v inside S.
      std::uint64_t nb = s.bits() & ~g->neighbours(v) & ~(1ULL << v) & ~comp;
      comp |= nb;
      frontier |= nb;
    }
    rest &= ~comp;
    out.factors.push_back(g->set(comp));
    if (std::popcount(comp) == 1) out.z_part = out.z_part | g->set(comp);
  }
  return out;
}

VertexSet z_part(const VertexSet& s) { return join_decomposition(s).z_part; }

bool forms_join(const VertexSet& a, const VertexSet& b) {
  if ((a & b).bits()) return false;
  return b.subset_of(link(a));
}

namespace {

void max_clique_rec(const SimplicialGraph& g, int size, std::uint64_t cand, int& best) {
  if (cand == 0) {
    best = std::max(best, size);
    return;
  }
  while (cand) {
    if (size + std::popcount(cand) <= best) return;
    int v = std::countr_zero(cand);
    cand &= cand - 1;
    max_clique_rec(g, size + 1, cand & g.neighbours(v), best);
  }
}

}  // namespace

int clique_number(const VertexSet& s) {
  int best = 0;
  max_clique_rec(*s.ambient(), 0, s.bits(), best);
  return best;
}

int dimension(const SimplicialGraph& g) { return clique_number(g.all()); }

std::vector<std::uint64_t> cliques(const VertexSet& s) {
  const auto* g = s.ambient();
  std::vector<std::uint64_t> out;
  // Extend only by higher-indexed vertices so each clique is produced once.
  auto rec = [&](auto&& self, std::uint64_t clique, std::uint64_t cand) -> void {
    out.push_back(clique);
    while (cand) {
      int v = std::countr_zero(cand);
      cand &= cand - 1;
      self(self, clique | (1ULL << v), cand & g->neighbours(v));
    }
  };
  rec(rec, 0, s.bits());
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet boundary(const VertexSet& s) {
  const auto* g = s.ambient();
  std::uint64_t out = 0;
  for_each_bit(s.bits(), [&](int v) {
    if (g->neighbours(v) & ~s.bits()) out |= 1ULL << v;
  });
  return g->set(out);
}

std::vector<VertexSet> components(const VertexSet& s) {
  const auto* g = s.ambient();
  std::vector<VertexSet> out;
  std::uint64_t rest = s.bits();
  while (rest) {
    std::uint64_t comp = 1ULL << std::countr_zero(rest);
    std::uint64_t frontier = comp;
    while (frontier) {
      int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      std::uint64_t nb = g->neighbours(v) & s.bits() & ~comp;
      comp |= nb;
      frontier |= nb;
    }
    rest &= ~comp;
    out.push_back(g->set(comp));
  }
  return out;
}

std::vector<VertexSet> components(const SimplicialGraph& g) { return components(g.all()); }

bool is_cone(const VertexSet& s) {
  for (int v : s.members())
    if (s.subset_of(star(s.ambient()->vertex(v)))) return true;
  return false;
}

}  // namespace raag
