#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace raag {

class SimplicialGraph;
using GraphPtr = std::shared_ptr<const SimplicialGraph>;

/// Raised when an operation mixes vertex sets of different ambient graphs,
/// or a precondition on its arguments fails.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxVertices = 64;

/// Induced subgraph of a fixed ambient graph, stored as a membership mask.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(const SimplicialGraph* ambient, std::uint64_t bits);

  const SimplicialGraph* ambient() const { return ambient_; }
  std::uint64_t bits() const { return bits_; }

  bool contains(int v) const { return (bits_ >> v) & 1U; }
  bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  bool subset_of(const VertexSet& other) const;

  std::vector<int> members() const;
  /// Least member; -1 when empty.
  int first() const { return bits_ ? std::countr_zero(bits_) : -1; }

  VertexSet operator|(const VertexSet& o) const;
  VertexSet operator&(const VertexSet& o) const;
  /// Set difference.
  VertexSet operator-(const VertexSet& o) const;
  VertexSet with(int v) const;
  VertexSet without(int v) const;

  bool operator==(const VertexSet& o) const = default;
  /// Lexicographic order on sorted member lists.
  bool lex_less(const VertexSet& o) const;

  std::vector<std::string> labels() const;
  std::string to_string() const;

 private:
  void check_same(const VertexSet& o) const;

  const SimplicialGraph* ambient_ = nullptr;
  std::uint64_t bits_ = 0;
};

class SimplicialGraph {
 public:
  /// Throws GraphError on duplicate labels, loops, duplicate edges or
  /// unknown endpoints.
  SimplicialGraph(std::vector<std::string> labels,
                  const std::vector<std::pair<int, int>>& edges);

  static GraphPtr make(std::vector<std::string> labels,
                       const std::vector<std::pair<int, int>>& edges);
  static GraphPtr from_labels(std::vector<std::string> labels,
                              const std::vector<std::pair<std::string, std::string>>& edges);

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int v) const { return labels_.at(v); }
  /// -1 when absent.
  int index_of(std::string_view label) const;

  bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1U; }
  std::uint64_t neighbours(int v) const { return adj_[v]; }
  std::vector<std::pair<int, int>> edges() const;
  int edge_count() const;

  VertexSet all() const;
  VertexSet none() const { return VertexSet(this, 0); }
  VertexSet set(std::uint64_t bits) const;
  VertexSet set(std::initializer_list<int> vs) const;
  VertexSet set_of_labels(const std::vector<std::string>& labels) const;
  VertexSet vertex(int v) const { return set({v}); }

  /// The induced subgraph on s as a standalone graph (labels preserved,
  /// ambient vertex order preserved).
  GraphPtr induced(const VertexSet& s) const;

  bool same_labels(const SimplicialGraph& other) const { return labels_ == other.labels_; }
  bool operator==(const SimplicialGraph& o) const {
    return labels_ == o.labels_ && adj_ == o.adj_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::uint64_t> adj_;
};

// Link and star calculus. All results live in the ambient graph of the
// argument.

/// Intersection of vertex links; link of the empty set is the whole graph.
VertexSet link(const VertexSet& s);
VertexSet star(const VertexSet& s);
/// st(lk(S)).
VertexSet extended_star(const VertexSet& s);
/// lk(S) ∩ T; throws GraphError unless S ⊆ T.
VertexSet restricted_link(const VertexSet& s, const VertexSet& t);
VertexSet restricted_star(const VertexSet& s, const VertexSet& t);

struct JoinDecomposition {
  std::vector<VertexSet> factors;  // sorted by least member
  VertexSet z_part;                // union of singleton factors
};

/// Factors are the connected components of the complement graph on S.
JoinDecomposition join_decomposition(const VertexSet& s);
VertexSet z_part(const VertexSet& s);

/// True when every vertex of a is adjacent to every vertex of b (and the
/// two are disjoint).
bool forms_join(const VertexSet& a, const VertexSet& b);

/// Size of a largest clique, exact.
int dimension(const SimplicialGraph& g);
int clique_number(const VertexSet& s);
/// All cliques (including the empty one) of the induced subgraph on s,
/// as bit masks, in increasing order.
std::vector<std::uint64_t> cliques(const VertexSet& s);

/// Vertices of S whose link is not contained in S.
VertexSet boundary(const VertexSet& s);
/// Connected components of the induced subgraph on S, by least member.
std::vector<VertexSet> components(const VertexSet& s);
std::vector<VertexSet> components(const SimplicialGraph& g);
/// True iff some v in S has S ⊆ st(v).
bool is_cone(const VertexSet& s);

}  // namespace raag
