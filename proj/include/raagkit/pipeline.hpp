#pragma once

#include <stdexcept>

#include "raagkit/invariant.hpp"
#include "raagkit/io.hpp"
#include "raagkit/realisation.hpp"

namespace raag {

class ManifestError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One Salvetti piece on an induced subgraph; moves[i] is how the i-th
/// generator of H moves the circles (indices into the piece graph).
struct PieceSpec {
  std::vector<std::string> vertices;
  int subdivision = 2;
  std::vector<std::vector<CircleMove>> moves;
};

struct Manifest {
  std::string pipeline;  // wedge, glue, correct or product
  GraphPtr graph;
  std::vector<RaagMap> generators;
  std::vector<PieceSpec> pieces;
  std::vector<std::string> common;  // glued circles
  std::vector<int> shift;           // rotation of each glued circle, in edges
  std::vector<std::string> xi;
  GroupOptions group;
  CorrectionOptions correction;
};

Manifest manifest_from_json(const Json& j);

/// Extends per-generator moves to every element of the group.
std::vector<std::vector<CircleMove>> extend_moves(const FiniteOuterGroup& h, const std::vector<int>& gens,
                                                  const std::vector<std::vector<CircleMove>>& moves);

/// Runs the pipeline; the report records npc, dimensions, realises and faults.
Bundle run_pipeline(const Manifest& m);

/// npc, dimension and realises for a bundle, from three basepoints when possible.
Json verify_bundle(const Bundle& b, InnerSearch search = {});

}  // namespace raag
