#pragma once

#include <stdexcept>
#include <vector>

#include "raagkit/aut.hpp"
#include "raagkit/invariant.hpp"
#include "raagkit/marked.hpp"

namespace raag {

class ActionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Image of a cell: point x goes to the point y of `cell` with
/// y[axes[i]] = flips[i] ? 1 - x[i] : x[i].
struct CellImage {
  int cell = -1;
  std::vector<int> axes;
  std::vector<bool> flips;
  bool operator==(const CellImage&) const = default;
};

/// A finite group acting cellularly. table[i][j] is the index of i∘j;
/// maps[h][k][c] is the image of the k-cell c under element h.
struct ComplexAction {
  std::vector<std::vector<int>> table;
  std::vector<std::vector<std::vector<CellImage>>> maps;

  int size() const { return static_cast<int>(maps.size()); }
  const CellImage& image(int h, int dim, int cell) const;
  int vertex(int h, int v) const { return image(h, 0, v).cell; }
  EdgeStep apply(int h, EdgeStep s) const;
  EdgePath apply(int h, const EdgePath& p) const;
  int identity() const;
  int inverse(int h) const;
  bool operator==(const ComplexAction&) const = default;
};

/// Checks bijectivity, lengths, facet compatibility and the group table.
void validate_action(const CubeComplex& x, const ComplexAction& a);

ComplexAction trivial_action(const CubeComplex& x);

/// Per generator of a coordinate complex: the generator it moves to and
/// the circle map j -> shift ± j.
struct CircleMove {
  int target = 0;
  bool flip = false;
  int shift = 0;
};

/// Action permuting torus coordinates; moves[h][v] for each element h.
ComplexAction coordinate_action(const MarkedComplex& m, std::vector<std::vector<int>> table,
                                const std::vector<std::vector<CircleMove>>& moves);

/// The same action on the subdivided complex.
ComplexAction subdivide_action(const MarkedComplex& m, const Subdivision& s, const ComplexAction& a);

/// h_p: loops at `root` are pushed by h and dragged back along the
/// breadth-first path from root to h(root). root = -1 uses the basepoint.
RaagMap induced_outer_action(const MarkedComplex& m, const ComplexAction& a, int h, int root = -1);

/// φ(h) for every element, translated onto m's graph by labels.
bool realises(const MarkedComplex& m, const ComplexAction& a, const std::vector<RaagMap>& phi,
              InnerSearch search = {});
/// Also requires the action table to equal the group's table.
bool realises(const MarkedComplex& m, const ComplexAction& a, const FiniteOuterGroup& phi,
              InnerSearch search = {});

/// A map between graphs with the same labels.
RaagMap translate(const RaagMap& f, const GraphPtr& target);

}  // namespace raag
