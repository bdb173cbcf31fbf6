#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "raagkit/aut.hpp"

namespace raag {

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::size_t cap)
      : std::runtime_error("group closure exceeded cap " + std::to_string(cap)), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

/// The cyclic core of h(w) missed part of Δ. Cannot happen when w is chosen
/// through the abelianisation, but is reported rather than guessed.
class DegenerateSupport : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite subgroup of Out(A_Γ): one representative per outer class.
class FiniteOuterGroup {
 public:
  /// Element 0 must be outer-trivial. An empty table is computed; a given
  /// one is checked. Either way closure and outer-distinctness are verified.
  FiniteOuterGroup(GraphPtr g, std::vector<RaagMap> elements,
                   std::vector<std::vector<int>> table = {}, InnerSearch search = {});

  static FiniteOuterGroup trivial(const GraphPtr& g);

  const GraphPtr& graph() const { return graph_; }
  std::size_t size() const { return elements_.size(); }
  const RaagMap& element(int i) const { return elements_.at(static_cast<std::size_t>(i)); }
  const std::vector<RaagMap>& elements() const { return elements_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  /// table[i][j] is the class of element(i) ∘ element(j).
  int multiply(int i, int j) const { return table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  int inverse_index(int i) const { return inverses_[static_cast<std::size_t>(i)]; }
  int identity_index() const { return 0; }
  int order(int i) const;

  /// Class of f, or nullopt if f is outside the group.
  std::optional<int> index_of(const RaagMap& f, InnerSearch search = {}) const;

 private:
  GraphPtr graph_;
  std::vector<RaagMap> elements_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverses_;
};

struct GroupOptions {
  std::size_t cap = 64;
  InnerSearch search;
};

/// Closure of the generators in Out(A_Γ), identity at index 0.
FiniteOuterGroup close_group(const GraphPtr& g, const std::vector<RaagMap>& generators,
                             GroupOptions opts = {});

/// True iff every element maps A_Δ onto a conjugate of A_Δ.
bool is_invariant(const FiniteOuterGroup& h, const VertexSet& delta);
/// Single-automorphism test: h(A_Δ) ≤ y^-1 A_Δ y for some y.
bool maps_into_conjugate(const RaagMap& h, const VertexSet& delta);

class InvariantSystem {
 public:
  InvariantSystem(GraphPtr g, std::vector<std::uint64_t> members);

  const GraphPtr& graph() const { return graph_; }
  /// Sorted, duplicate free.
  const std::vector<std::uint64_t>& members() const { return members_; }
  std::vector<VertexSet> sets() const;
  bool contains(const VertexSet& s) const;
  bool contains(std::uint64_t bits) const;
  std::size_t size() const { return members_.size(); }
  bool operator==(const InvariantSystem& o) const { return members_ == o.members_; }

 private:
  GraphPtr graph_;
  std::vector<std::uint64_t> members_;
};

inline constexpr int kDefaultVertexBound = 12;

/// Exhaustive over all 2^n subsets. `jobs` = 0 uses the OpenMP default.
InvariantSystem compute_L(const FiniteOuterGroup& h, int vertex_bound = kDefaultVertexBound);
InvariantSystem compute_L_parallel(const FiniteOuterGroup& h, int jobs = 0,
                                   int vertex_bound = kDefaultVertexBound);

struct ClosureCheck {
  std::string check;
  bool passed = true;
  std::vector<std::vector<VertexSet>> witnesses;
};

struct ClosureReport {
  std::vector<ClosureCheck> checks;
  bool ok() const;
  std::size_t violation_count() const;
};

class ViolationFound : public std::runtime_error {
 public:
  explicit ViolationFound(ClosureReport r);
  const ClosureReport& report() const { return report_; }

 private:
  ClosureReport report_;
};

struct ClosureOptions {
  /// Also require every link of every subgraph (holds when all generators
  /// avoid twists and graph symmetries).
  bool link_preserving = false;
  std::size_t max_witnesses = 8;
};

ClosureReport verify_closure(const InvariantSystem& l, ClosureOptions opts = {});
/// Throws ViolationFound when any check fails.
void require_closure(const InvariantSystem& l, ClosureOptions opts = {});

class NoProperSupergraph : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AmbiguousMaximal : public std::runtime_error {
 public:
  AmbiguousMaximal(std::vector<VertexSet> candidates);
  const std::vector<VertexSet>& candidates() const { return candidates_; }

 private:
  std::vector<VertexSet> candidates_;
};

enum class TiePolicy { report, least_lex };
enum class AssemblyCase { components, all_but_one };

struct AssemblyPlan {
  VertexSet gamma_prime;
  AssemblyCase part = AssemblyCase::components;
  std::vector<VertexSet> maximal_candidates;
  VertexSet theta, theta_bar, delta, delta_prime;
  InvariantSystem s_system;
  InvariantSystem s_gamma_prime;
};

AssemblyPlan assembly_plan(const InvariantSystem& l, const VertexSet& xi,
                           TiePolicy ties = TiePolicy::report);

}  // namespace raag
