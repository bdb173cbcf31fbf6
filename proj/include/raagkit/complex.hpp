#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace raag {

using Length = boost::rational<long long>;

class ComplexError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One facet of a k-cell: the (k-1)-cell and how the remaining axes of the
/// k-cell (in increasing order) land on the facet's axes. flips[m] means the
/// coordinate is reversed, t -> 1 - t.
struct FacetRef {
  int cell = -1;
  std::vector<int> axes;
  std::vector<bool> flips;

  bool operator==(const FacetRef&) const = default;
};

/// A k-cube: facets[i][s] is the face where coordinate i equals s. `coords`
/// optionally records torus states (2j: vertex j, 2j+1: edge j -> j+1), one
/// per generator, for complexes built from subdivided circles.
struct Cell {
  std::vector<std::array<FacetRef, 2>> facets;
  std::vector<Length> lengths;
  std::vector<int> coords;

  int dim() const { return static_cast<int>(lengths.size()); }
  bool operator==(const Cell&) const = default;
};

/// A face of a cell with the surviving axes traced: axis[a] is where free
/// axis a of the original cell sits in the face (-1 if fixed), flip[a] its
/// accumulated reversal.
struct Face {
  int dim = 0;
  int cell = -1;
  std::vector<int> axis;
  std::vector<bool> flip;
};

/// An end of an edge: end 0 is the source (facet side 0), end 1 the target.
struct HalfEdge {
  int edge = -1;
  int end = 0;
  auto operator<=>(const HalfEdge&) const = default;
};

class CubeComplex {
 public:
  int add_vertex(std::vector<int> coords = {});
  int add_edge(int from, int to, Length length, std::vector<int> coords = {});
  /// Adds a cell of dimension facets.size(); facets must already exist.
  int add_cell(Cell c);

  int count(int dim) const;
  int vertex_count() const { return count(0); }
  int edge_count() const { return count(1); }
  /// Highest dimension with a cell; -1 when empty.
  int dimension() const { return static_cast<int>(cells_.size()) - 1; }
  const Cell& cell(int dim, int id) const;
  const std::vector<std::vector<Cell>>& cells() const { return cells_; }
  std::size_t total_cells() const;

  int source(int edge) const { return cell(1, edge).facets[0][0].cell; }
  int target(int edge) const { return cell(1, edge).facets[0][1].cell; }
  int endpoint(HalfEdge h) const { return cell(1, h.edge).facets[0][static_cast<std::size_t>(h.end)].cell; }

  /// fixed[i] is -1 for a free axis, else the coordinate value 0/1. Axes
  /// are fixed in `order` when given, else in increasing order.
  Face face(int dim, int id, const std::vector<int>& fixed,
            const std::vector<int>* order = nullptr) const;
  int corner_vertex(int dim, int id, std::uint32_t bits) const;
  /// The half-edge at a corner along one axis.
  HalfEdge corner_edge(int dim, int id, std::uint32_t bits, int axis) const;

  /// Structural checks: facet existence, axis permutations, lengths,
  /// positive lengths and agreement of codimension-two faces.
  void validate() const;

  bool operator==(const CubeComplex& o) const { return cells_ == o.cells_; }

 private:
  std::vector<std::vector<Cell>> cells_;
};

struct NpcWitness {
  int vertex = -1;
  std::string kind;  // "repeated_link_vertex", "duplicate_simplex", "empty_simplex"
  std::vector<HalfEdge> simplex;
};

struct NpcResult {
  bool ok = true;
  std::optional<NpcWitness> witness;
};

/// Gromov's link condition: every vertex link is a flag simplicial complex.
NpcResult npc_check(const CubeComplex& x);
NpcResult npc_check_parallel(const CubeComplex& x, int jobs = 0);

}  // namespace raag
