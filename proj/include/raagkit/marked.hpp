#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "raagkit/complex.hpp"
#include "raagkit/word.hpp"

namespace raag {

class MarkingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EdgeStep {
  int edge = -1;
  bool forward = true;
  bool operator==(const EdgeStep&) const = default;
};
using EdgePath = std::vector<EdgeStep>;

/// A cube complex marked by A_Δ. The marking is an edge-label cocycle: every
/// edge carries an element of A_Δ and a loop reads the product of its labels.
/// Spanning-tree words are derived on demand (see `marking_words`).
/// With `coordinates` set, every cell carries torus coordinates (one per
/// vertex of `graph`) and `moduli[v]` is the edge count of v's circle.
struct MarkedComplex {
  CubeComplex complex;
  GraphPtr graph;
  int basepoint = 0;
  std::vector<NormalForm> labels;
  std::vector<int> moduli;
  bool coordinates = false;

  bool has_coords() const { return coordinates; }
};

int step_start(const CubeComplex& x, EdgeStep s);
int step_end(const CubeComplex& x, EdgeStep s);
EdgePath reverse_path(const EdgePath& p);
NormalForm read_path(const MarkedComplex& m, const EdgePath& p);

/// Breadth-first tree; neighbours are scanned by (edge id, end).
struct SpanningTree {
  int root = 0;
  std::vector<EdgeStep> parent;  // step into each vertex; edge -1 at root or unreachable
  std::vector<int> depth;        // -1 when unreachable
  std::vector<bool> tree_edge;
};

SpanningTree spanning_tree(const CubeComplex& x, int root);
EdgePath tree_path(const CubeComplex& x, const SpanningTree& t, int v);
/// Breadth-first shortest path with the same scan order.
EdgePath shortest_path(const CubeComplex& x, int from, int to);

/// Non-tree edge -> reading of the loop root -> s -e-> t -> root.
std::map<int, NormalForm> marking_words(const MarkedComplex& m, const SpanningTree& t);
std::map<int, NormalForm> marking_words(const MarkedComplex& m);

struct MarkingReport {
  bool connected = true;
  bool relators_killed = true;
  bool surjective = true;
  int bad_square = -1;
  bool ok() const { return connected && relators_killed && surjective; }
};

/// Boundary reading of a 2-cell, starting at corner 00 along axis 0.
NormalForm square_boundary(const MarkedComplex& m, int square);
MarkingReport check_marking(const MarkedComplex& m);

/// One loop at root per generator reading exactly that generator.
std::vector<EdgePath> generator_loops(const MarkedComplex& m, int root);

/// One vertex, one circle of `subdivision` edges per generator, one k-torus
/// per k-clique.
MarkedComplex salvetti(const GraphPtr& g, int subdivision = 2);

/// Product marked by the join of the two graphs. With `target` given, its
/// labels must be the disjoint union of both label sets and it must be that
/// join; labels and coordinates are rewritten into its vertex order.
MarkedComplex product(const MarkedComplex& x, const MarkedComplex& y, GraphPtr target = nullptr);
/// Cell id of (cx, cy) in the product of complexes with the given counts.
struct ProductIndex {
  std::vector<int> counts_x, counts_y;
  std::pair<int, int> operator()(int dx, int idx, int dy, int idy) const;
};

/// Halves every cube. pieces[k][id][w] is the (dim, id) of the piece of cell
/// (k, id) selected by w, a base-3 word over axes (digit 0: lower half,
/// 1: upper half, 2: midpoint; axis 0 least significant).
struct Subdivision {
  MarkedComplex marked;
  std::vector<std::vector<std::vector<std::pair<int, int>>>> pieces;
  int vertex(int v) const { return pieces[0][static_cast<std::size_t>(v)][0].second; }
};

Subdivision subdivide(const MarkedComplex& m);

}  // namespace raag
