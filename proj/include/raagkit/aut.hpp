#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "raagkit/word.hpp"

namespace raag {

/// A generator constructor was called with parameters violating its
/// defining condition.
class ValidityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotAutomorphism : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bounded search ran out of radius before reaching a decision.
class Inconclusive : public std::runtime_error {
 public:
  Inconclusive(const std::string& what, std::size_t bound)
      : std::runtime_error(what), bound_(bound) {}
  std::size_t bound() const { return bound_; }

 private:
  std::size_t bound_;
};

enum class GeneratorKind { inversion, partial_conjugation, fold, twist, graph_symmetry };

std::string to_string(GeneratorKind k);
std::optional<GeneratorKind> generator_kind_from_string(const std::string& s);

/// Automorphism of A_Γ given by generator images, carrying its inverse.
/// `factors` lists the Laurence–Servatius generator kinds it was composed
/// from; an untagged map (e.g. read from JSON without a tag) has no factors
/// and classifies as Unknown.
class RaagMap {
 public:
  /// Verifies inverse consistency and the commutation relators.
  RaagMap(GraphPtr g, std::vector<NormalForm> images, std::vector<NormalForm> inverse_images,
          std::optional<std::vector<GeneratorKind>> factors = std::nullopt);

  static RaagMap identity(const GraphPtr& g);
  /// c(x): w ↦ x^-1 w x.
  static RaagMap inner(const NormalForm& x);

  const GraphPtr& graph() const { return graph_; }
  const NormalForm& image(int v) const { return images_.at(static_cast<std::size_t>(v)); }
  const NormalForm& inverse_image(int v) const {
    return inverse_images_.at(static_cast<std::size_t>(v));
  }
  const std::vector<NormalForm>& images() const { return images_; }
  const std::vector<NormalForm>& inverse_images() const { return inverse_images_; }

  bool tagged() const { return factors_.has_value(); }
  const std::vector<GeneratorKind>& factors() const;
  /// Single-generator tag; "composite" for products; "" when untagged.
  std::string tag() const;

  NormalForm apply(const NormalForm& w) const;
  NormalForm apply(const Word& w) const;
  RaagMap inverse() const;

  /// Columns are abelianised images of the generators.
  std::vector<std::vector<long long>> abelian_matrix() const;
  std::size_t total_image_length() const;

  bool operator==(const RaagMap& o) const { return images_ == o.images_; }

 private:
  GraphPtr graph_;
  std::vector<NormalForm> images_;
  std::vector<NormalForm> inverse_images_;
  std::optional<std::vector<GeneratorKind>> factors_;
};

RaagMap make_inversion(const GraphPtr& g, int v);
/// Conjugates every generator of C by v (a ↦ v^-1 a v). C must be a
/// non-empty union of components of Γ ∖ st(v).
RaagMap make_partial_conjugation(const GraphPtr& g, int v, const VertexSet& component);
/// w ↦ w v; requires w ≠ v and lk(w) ⊆ st(v). Tagged fold when
/// lk(w) ⊆ lk(v), twist when v ∈ lk(w).
RaagMap make_transvection(const GraphPtr& g, int w, int v);
/// v ↦ perm[v]; perm must be an automorphism of the graph.
RaagMap make_graph_symmetry(const GraphPtr& g, const std::vector<int>& perm);

/// Direct evaluation of the constructor conditions, without building maps.
bool partial_conjugation_valid(const SimplicialGraph& g, int v, std::uint64_t component);
bool transvection_valid(const SimplicialGraph& g, int w, int v);

/// compose(f, g)(w) = f(g(w)).
RaagMap compose(const RaagMap& f, const RaagMap& g);
NormalForm apply(const RaagMap& f, const Word& w);

struct InnerSearch {
  /// Bound on the exponent search; defaults to the total image length.
  std::optional<std::size_t> radius;
};

/// x with f(w) = x^-1 w x for all w, or nullopt when f is not inner.
/// Throws Inconclusive when the radius is too small to decide.
std::optional<NormalForm> is_inner(const RaagMap& f, InnerSearch opts = {});
bool outer_equal(const RaagMap& f, const RaagMap& g, InnerSearch opts = {});

enum class Tri { no, yes, unknown };
std::string to_string(Tri t);

struct UntwistedFlags {
  Tri in_aut0;   // no graph symmetries among the factors
  Tri in_uaut0;  // additionally no twists
};

UntwistedFlags classify_untwisted(const RaagMap& f);

}  // namespace raag
