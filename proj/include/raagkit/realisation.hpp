#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "raagkit/action.hpp"

namespace raag {

class GluingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FaultOutsideCentralizer : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonIntegralOffset : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RealisationCheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IncompatibleActions : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoFixedPoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cells of `left` (closed under faces), their images in `right` under the
/// actual identification, and under the standard one (`twin`). An empty
/// twin means the identification itself.
struct GluingSpec {
  MarkedComplex left, right;
  std::vector<std::vector<int>> left_sub;
  std::vector<std::vector<CellImage>> identification;
  std::vector<std::vector<CellImage>> twin;
  GraphPtr target;  // union of both graphs when null
};

/// Sub-identification along the torus of generators `common` (labels),
/// using cell coordinates; shift[i] rotates the i-th common circle.
struct SubIdentification {
  std::vector<std::vector<int>> left_sub;
  std::vector<std::vector<CellImage>> images;
};
SubIdentification coordinate_identification(const MarkedComplex& left, const MarkedComplex& right,
                                            const std::vector<std::string>& common,
                                            const std::vector<int>& shift = {});

/// left cells keep their ids; right_map[k][c] is where right cell c lands.
struct Glued {
  MarkedComplex marked;
  std::vector<std::vector<CellImage>> right_map;
  VertexSet e, sigma, theta;
};

Glued glue_marked(const GluingSpec& spec);
ComplexAction glue_actions(const GluingSpec& spec, const Glued& y, const ComplexAction& left,
                           const ComplexAction& right);

struct FaultRecord {
  VertexSet e;
  int p = -1, q = -1;
  std::vector<NormalForm> x;        // h_p = c(x(h)) ∘ h_q
  std::vector<NormalForm> reduced;  // letters of Z(Γ) removed
  bool trivial() const;
};

/// p defaults to the least vertex of the identified subcomplex.
FaultRecord compute_fault(const Glued& y, const ComplexAction& a, const GluingSpec& spec, int p = -1);

struct Correction {
  GluingSpec spec;
  Glued glued;
  ComplexAction action;
  std::vector<long long> offsets;  // x′(H) exponent per vertex of Γ
  int subdivisions = 0;
};

struct CorrectionOptions {
  int max_subdivisions = 3;
  InnerSearch search;
};

/// Re-glues so that the result realises phi (one map per element).
Correction correct_gluing(const GluingSpec& spec, const ComplexAction& left, const ComplexAction& right,
                          const std::vector<RaagMap>& phi, const FaultRecord& fault,
                          CorrectionOptions opts = {});

/// Subdivides both sides and carries both identifications along.
GluingSpec subdivide_spec(const GluingSpec& spec, const Subdivision& l, const Subdivision& r);

struct CircleElement {
  bool flip = false;
  int shift = 0;  // vertex j goes to shift + j, or shift - j when flipped
};

struct CircleAction {
  MarkedComplex marked;
  ComplexAction action;
};

CircleAction build_circle_action(int m, std::vector<std::vector<int>> table,
                                 const std::vector<CircleElement>& elements,
                                 const std::string& label = "s");

/// Reads (flip, shift) for element h off a coordinate circle.
CircleElement circle_element(const MarkedComplex& m, const ComplexAction& a, int h);

struct RotationInvariant {
  bool flip = false;
  int mu = 0, order = 1, k = 0;
  std::vector<int> fixed_vertices;  // flips only
  std::vector<int> fixed_edges;     // flips fixing an edge midpoint
};

/// K(h) = ord(h)·μ/m mod ord(h) for rotations; fixed points for flips.
RotationInvariant rotation_invariant(const MarkedComplex& m, const ComplexAction& a, int h);

/// Vertex j of the first circle goes to rotation ± j of the second.
struct CircleAlignment {
  int rotation = 0;
  bool reflect = false;
};

CircleAlignment align_circles(const CircleAction& y, const CircleAction& z);

struct FixedPoint {
  MarkedComplex marked;
  ComplexAction action;
  int vertex = -1;
  bool subdivided = false;
};

FixedPoint fixed_point(const MarkedComplex& m, const ComplexAction& a);

struct Realisation {
  MarkedComplex marked;
  ComplexAction action;
};

/// Wedges the pieces at H-fixed vertices. Only an empty free part is
/// supported. With phi given, realises() is required.
Realisation wedge_realisation(const std::vector<Realisation>& pieces,
                              const std::optional<std::vector<RaagMap>>& phi = std::nullopt);

/// Product complex with the diagonal action.
Realisation product_realisation(const Realisation& left, const Realisation& right,
                                GraphPtr target = nullptr,
                                const std::optional<std::vector<RaagMap>>& phi = std::nullopt);

}  // namespace raag
