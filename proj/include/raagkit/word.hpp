#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "raagkit/graph.hpp"

namespace raag {

/// A generator or its inverse. Letters order by (vertex, sign) with the
/// positive letter first, which is the order of `code()`.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int vertex, bool inverse)
      : code_(static_cast<std::uint16_t>(2 * vertex + (inverse ? 1 : 0))) {}

  static constexpr Letter from_code(std::uint16_t c) {
    Letter l;
    l.code_ = c;
    return l;
  }

  constexpr int vertex() const { return code_ >> 1; }
  constexpr bool inverse() const { return code_ & 1U; }
  constexpr int sign() const { return inverse() ? -1 : 1; }
  constexpr Letter inv() const { return from_code(code_ ^ 1U); }
  constexpr std::uint16_t code() const { return code_; }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::uint16_t code_ = 0;
};

using Letters = std::vector<Letter>;

class WordError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Arbitrary, possibly unreduced, word over the generators of a graph.
struct Word {
  GraphPtr graph;
  Letters letters;

  Word() = default;
  Word(GraphPtr g, Letters ls);
};

/// Reduced word in lexicographically least order among its swap class, so
/// two NormalForms are equal iff they denote the same group element.
class NormalForm {
 public:
  NormalForm() = default;
  /// Identity element.
  explicit NormalForm(GraphPtr g) : graph_(std::move(g)) {}

  const GraphPtr& graph() const { return graph_; }
  const Letters& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  Word word() const { return Word(graph_, letters_); }
  std::string to_string() const;

  bool operator==(const NormalForm& o) const { return letters_ == o.letters_; }
  bool operator<(const NormalForm& o) const { return letters_ < o.letters_; }

 private:
  friend NormalForm reduce(const Word& w);
  friend NormalForm canonical(GraphPtr g, Letters reduced);
  GraphPtr graph_;
  Letters letters_;
};

// Text format: whitespace separated tokens `a` or `a^-1`; empty means 1.
Word parse_word(const GraphPtr& g, std::string_view text);
std::string format_letters(const SimplicialGraph& g, const Letters& ls);
NormalForm parse_element(const GraphPtr& g, std::string_view text);

bool letters_commute(const SimplicialGraph& g, Letter a, Letter b);

/// Freely reduces, then sorts into the canonical representative.
NormalForm reduce(const Word& w);
/// Canonical order of an already reduced word.
NormalForm canonical(GraphPtr g, Letters reduced);

NormalForm identity(const GraphPtr& g);
NormalForm generator(const GraphPtr& g, int v, bool inverse = false);
NormalForm operator*(const NormalForm& a, const NormalForm& b);
NormalForm inverse(const NormalForm& a);
NormalForm power(const NormalForm& a, long long e);
/// c(x)(w) = x^-1 w x.
NormalForm conjugate(const NormalForm& w, const NormalForm& x);

/// Rewrites an element into another graph carrying the same labels.
NormalForm translate(const NormalForm& w, const GraphPtr& target);

struct CyclicReduction {
  NormalForm conjugator;  // y with w = y^-1 * core * y
  NormalForm core;
};

CyclicReduction cyclically_reduce(const Word& w);
CyclicReduction cyclically_reduce(const NormalForm& w);

/// Cores longer than this are rejected by the conjugacy search.
inline constexpr std::size_t kMaxCoreLength = 16;

/// Conjugacy decisions with memoised orbits of cyclically reduced words
/// under rotation (swaps are absorbed by the canonical order). Not
/// thread-safe; use one solver per thread.
class ConjugacySolver {
 public:
  explicit ConjugacySolver(GraphPtr g) : graph_(std::move(g)) {}

  struct Key {
    int class_id = -1;
    NormalForm to_root;  // t with t^-1 * root * t equal to the original element
  };

  Key classify(const NormalForm& w);
  /// g with g^-1 * w1 * g == w2, or nullopt.
  std::optional<NormalForm> is_conjugate(const NormalForm& w1, const NormalForm& w2);
  /// Witness from two keys already computed by classify().
  std::optional<NormalForm> is_conjugate(const Key& k1, const Key& k2) const;

  std::size_t class_count() const { return class_roots_.size(); }

 private:
  struct State {
    int class_id;
    NormalForm from_root;  // k with k^-1 * root * k == state
  };
  const State& explore(const NormalForm& core);

  GraphPtr graph_;
  std::map<Letters, State> states_;
  std::vector<NormalForm> class_roots_;
};

std::optional<NormalForm> is_conjugate(const Word& w1, const Word& w2);

VertexSet support(const NormalForm& w);
VertexSet support(const Word& w);
bool in_special_subgroup(const Word& w, const VertexSet& delta);
bool in_special_subgroup(const NormalForm& w, const VertexSet& delta);
std::vector<long long> abelianize(const Word& w);
std::vector<long long> abelianize(const NormalForm& w);

}  // namespace raag
