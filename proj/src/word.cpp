#include "raagkit/word.hpp"

#include <deque>
#include <sstream>

namespace raag {

namespace {

void check_graph(const GraphPtr& a, const GraphPtr& b) {
  if (a != b && !(a && b && *a == *b)) throw WordError("words over different graphs");
}

// Appends each letter, cancelling it against the nearest inverse that can be
// swapped to the end. Keeps `out` reduced.
void append_reduced(const SimplicialGraph& g, Letters& out, Letter x) {
  for (std::size_t j = out.size(); j-- > 0;) {
    if (out[j] == x.inv()) {
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(j));
      return;
    }
    if (!letters_commute(g, out[j], x)) break;
  }
  out.push_back(x);
}

// Position i can be swapped to the front.
bool frontable(const SimplicialGraph& g, const Letters& ls, std::size_t i) {
  for (std::size_t k = 0; k < i; ++k)
    if (!letters_commute(g, ls[k], ls[i])) return false;
  return true;
}

bool backable(const SimplicialGraph& g, const Letters& ls, std::size_t i) {
  for (std::size_t k = i + 1; k < ls.size(); ++k)
    if (!letters_commute(g, ls[k], ls[i])) return false;
  return true;
}

}  // namespace

Word::Word(GraphPtr g, Letters ls) : graph(std::move(g)), letters(std::move(ls)) {
  for (auto l : letters)
    if (l.vertex() >= graph->vertex_count()) throw WordError("letter outside graph");
}

bool letters_commute(const SimplicialGraph& g, Letter a, Letter b) {
  return g.adjacent(a.vertex(), b.vertex());
}

Word parse_word(const GraphPtr& g, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  Letters ls;
  while (in >> tok) {
    bool inv = false;
    if (tok.size() > 3 && tok.ends_with("^-1")) {
      inv = true;
      tok.resize(tok.size() - 3);
    }
    int v = g->index_of(tok);
    if (v < 0) throw WordError("unknown generator '" + tok + "'");
    ls.emplace_back(v, inv);
  }
  return Word(g, std::move(ls));
}

NormalForm parse_element(const GraphPtr& g, std::string_view text) {
  return reduce(parse_word(g, text));
}

std::string format_letters(const SimplicialGraph& g, const Letters& ls) {
  std::string s;
  for (auto l : ls) {
    if (!s.empty()) s += ' ';
    s += g.label(l.vertex());
    if (l.inverse()) s += "^-1";
  }
  return s;
}

std::string NormalForm::to_string() const { return format_letters(*graph_, letters_); }

NormalForm canonical(GraphPtr g, Letters reduced) {
  NormalForm out(std::move(g));
  out.letters_.reserve(reduced.size());
  const auto& graph = *out.graph_;
  while (!reduced.empty()) {
    std::size_t best = reduced.size();
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      if (best < reduced.size() && !(reduced[i] < reduced[best])) continue;
      if (frontable(graph, reduced, i)) best = i;
    }
    out.letters_.push_back(reduced[best]);
    reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

NormalForm reduce(const Word& w) {
  Letters acc;
  acc.reserve(w.letters.size());
  for (auto l : w.letters) append_reduced(*w.graph, acc, l);
  return canonical(w.graph, std::move(acc));
}

NormalForm identity(const GraphPtr& g) { return NormalForm(g); }

NormalForm generator(const GraphPtr& g, int v, bool inv) {
  return reduce(Word(g, {Letter(v, inv)}));
}

NormalForm operator*(const NormalForm& a, const NormalForm& b) {
  check_graph(a.graph(), b.graph());
  Letters acc = a.letters();
  for (auto l : b.letters()) append_reduced(*a.graph(), acc, l);
  return canonical(a.graph(), std::move(acc));
}

NormalForm inverse(const NormalForm& a) {
  Letters ls(a.letters().rbegin(), a.letters().rend());
  for (auto& l : ls) l = l.inv();
  return canonical(a.graph(), std::move(ls));
}

NormalForm power(const NormalForm& a, long long e) {
  NormalForm base = e < 0 ? inverse(a) : a;
  NormalForm out(a.graph());
  for (long long i = 0; i < (e < 0 ? -e : e); ++i) out = out * base;
  return out;
}

NormalForm conjugate(const NormalForm& w, const NormalForm& x) { return inverse(x) * w * x; }

NormalForm translate(const NormalForm& w, const GraphPtr& target) {
  if (w.graph() == target) return w;
  Letters ls;
  for (auto l : w.letters()) {
    int v = target->index_of(w.graph()->label(l.vertex()));
    if (v < 0)
      throw WordError("generator '" + w.graph()->label(l.vertex()) + "' absent from target graph");
    ls.emplace_back(v, l.inverse());
  }
  return reduce(Word(target, std::move(ls)));
}

CyclicReduction cyclically_reduce(const NormalForm& w) {
  const auto& g = *w.graph();
  Letters ls = w.letters();
  Letters peeled;  // x1 x2 ... xk with w = x1..xk core xk^-1..x1^-1
  bool changed = true;
  while (changed) {
    changed = false;
    // Least front letter whose inverse can be moved to the back.
    std::size_t best_i = ls.size(), best_j = ls.size();
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (!frontable(g, ls, i)) continue;
      if (best_i < ls.size() && !(ls[i] < ls[best_i])) continue;
      for (std::size_t j = ls.size(); j-- > i + 1;) {
        if (ls[j] == ls[i].inv() && backable(g, ls, j)) {
          best_i = i;
          best_j = j;
          break;
        }
      }
    }
    if (best_i < ls.size()) {
      peeled.push_back(ls[best_i]);
      ls.erase(ls.begin() + static_cast<std::ptrdiff_t>(best_j));
      ls.erase(ls.begin() + static_cast<std::ptrdiff_t>(best_i));
      changed = true;
    }
  }
  NormalForm x = reduce(Word(w.graph(), peeled));
  return {inverse(x), canonical(w.graph(), std::move(ls))};
}

CyclicReduction cyclically_reduce(const Word& w) { return cyclically_reduce(reduce(w)); }

// ---------------------------------------------------------- ConjugacySolver

const ConjugacySolver::State& ConjugacySolver::explore(const NormalForm& core) {
  if (auto it = states_.find(core.letters()); it != states_.end()) return it->second;
  if (core.length() > kMaxCoreLength)
    throw WordError("cyclically reduced core longer than " + std::to_string(kMaxCoreLength));
  const int cls = static_cast<int>(class_roots_.size());
  class_roots_.push_back(core);
  const auto& g = *graph_;
  std::deque<NormalForm> queue{core};
  states_.emplace(core.letters(), State{cls, identity(graph_)});
  while (!queue.empty()) {
    NormalForm s = std::move(queue.front());
    queue.pop_front();
    const NormalForm k = states_.at(s.letters()).from_root;
    const Letters& ls = s.letters();
    auto visit = [&](Letters next_letters, const NormalForm& step) {
      NormalForm next = canonical(graph_, std::move(next_letters));
      if (states_.contains(next.letters())) return;
      states_.emplace(next.letters(), State{cls, k * step});
      queue.push_back(std::move(next));
    };
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (frontable(g, ls, i)) {
        // x^-1 s x: move x from the front to the back.
        Letters t = ls;
        Letter x = t[i];
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
        t.push_back(x);
        visit(std::move(t), generator(graph_, x.vertex(), x.inverse()));
      }
      if (backable(g, ls, i)) {
        // z s z^-1: move z from the back to the front.
        Letters t = ls;
        Letter z = t[i];
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
        t.insert(t.begin(), z);
        visit(std::move(t), generator(graph_, z.vertex(), !z.inverse()));
      }
    }
  }
  return states_.at(core.letters());
}

ConjugacySolver::Key ConjugacySolver::classify(const NormalForm& w) {
  check_graph(w.graph(), graph_);
  auto [y, core] = cyclically_reduce(w);
  const State& st = explore(core);
  // w = y^-1 core y and core = k^-1 root k, so w = (k y)^-1 root (k y).
  return {st.class_id, st.from_root * y};
}

std::optional<NormalForm> ConjugacySolver::is_conjugate(const Key& k1, const Key& k2) const {
  if (k1.class_id != k2.class_id) return std::nullopt;
  // w1 = t1^-1 r t1, w2 = t2^-1 r t2  =>  g = t1^-1 t2.
  return inverse(k1.to_root) * k2.to_root;
}

std::optional<NormalForm> ConjugacySolver::is_conjugate(const NormalForm& w1,
                                                        const NormalForm& w2) {
  const Key k1 = classify(w1);
  const Key k2 = classify(w2);
  return is_conjugate(k1, k2);
}

std::optional<NormalForm> is_conjugate(const Word& w1, const Word& w2) {
  check_graph(w1.graph, w2.graph);
  ConjugacySolver solver(w1.graph);
  return solver.is_conjugate(reduce(w1), reduce(w2));
}

// ------------------------------------------------------------- invariants

VertexSet support(const NormalForm& w) {
  std::uint64_t b = 0;
  for (auto l : w.letters()) b |= 1ULL << l.vertex();
  return w.graph()->set(b);
}

VertexSet support(const Word& w) { return support(reduce(w)); }

bool in_special_subgroup(const NormalForm& w, const VertexSet& delta) {
  return support(w).subset_of(delta);
}

bool in_special_subgroup(const Word& w, const VertexSet& delta) {
  return in_special_subgroup(reduce(w), delta);
}

std::vector<long long> abelianize(const Word& w) {
  std::vector<long long> out(static_cast<std::size_t>(w.graph->vertex_count()), 0);
  for (auto l : w.letters) out[static_cast<std::size_t>(l.vertex())] += l.sign();
  return out;
}

std::vector<long long> abelianize(const NormalForm& w) { return abelianize(w.word()); }

}  // namespace raag
