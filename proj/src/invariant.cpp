#include "raagkit/invariant.hpp"

#include <algorithm>
#include <exception>
#include <omp.h>

namespace raag {

// ---------------------------------------------------------- FiniteOuterGroup

FiniteOuterGroup::FiniteOuterGroup(GraphPtr g, std::vector<RaagMap> elements,
                                   std::vector<std::vector<int>> table, InnerSearch search)
    : graph_(std::move(g)), elements_(std::move(elements)), table_(std::move(table)) {
  if (elements_.empty()) throw std::invalid_argument("group needs at least the identity");
  for (const auto& e : elements_)
    if (!(*e.graph() == *graph_)) throw std::invalid_argument("group element over another graph");
  if (!is_inner(elements_[0], search)) throw std::invalid_argument("element 0 is not outer-trivial");
  const auto n = elements_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (outer_equal(elements_[i], elements_[j], search))
        throw std::invalid_argument("elements " + std::to_string(i) + " and " + std::to_string(j) +
                                    " are outer-equal");
  const bool given = !table_.empty();
  if (given && table_.size() != n) throw std::invalid_argument("multiplication table has wrong size");
  if (!given) table_.assign(n, std::vector<int>(n, -1));
  for (std::size_t i = 0; i < n; ++i) {
    if (table_[i].size() != n) throw std::invalid_argument("multiplication table has wrong size");
    for (std::size_t j = 0; j < n; ++j) {
      auto k = index_of(compose(elements_[i], elements_[j]), search);
      if (!k) throw std::invalid_argument("elements are not closed under composition");
      if (given && table_[i][j] != *k)
        throw std::invalid_argument("multiplication table disagrees with the maps");
      table_[i][j] = *k;
    }
  }
  inverses_.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (table_[i][j] == 0) inverses_[i] = static_cast<int>(j);
}

FiniteOuterGroup FiniteOuterGroup::trivial(const GraphPtr& g) {
  return FiniteOuterGroup(g, {RaagMap::identity(g)});
}

int FiniteOuterGroup::order(int i) const {
  int k = 1;
  for (int x = i; x != 0; x = multiply(x, i)) ++k;
  return i == 0 ? 1 : k;
}

std::optional<int> FiniteOuterGroup::index_of(const RaagMap& f, InnerSearch search) const {
  const auto m = f.abelian_matrix();
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    // Outer-equal maps have identical abelianised matrices.
    if (elements_[i].abelian_matrix() != m) continue;
    if (outer_equal(f, elements_[i], search)) return static_cast<int>(i);
  }
  return std::nullopt;
}

FiniteOuterGroup close_group(const GraphPtr& g, const std::vector<RaagMap>& generators,
                             GroupOptions opts) {
  std::vector<RaagMap> elems{RaagMap::identity(g)};
  auto find = [&](const RaagMap& f) -> bool {
    const auto m = f.abelian_matrix();
    for (const auto& e : elems)
      if (e.abelian_matrix() == m && outer_equal(f, e, opts.search)) return true;
    return false;
  };
  for (std::size_t next = 0; next < elems.size(); ++next) {
    for (const auto& s : generators) {
      RaagMap candidate = compose(elems[next], s);
      if (find(candidate)) continue;
      elems.push_back(std::move(candidate));
      if (elems.size() > opts.cap) throw CapExceeded(opts.cap);
    }
  }
  return FiniteOuterGroup(g, std::move(elems), {}, opts.search);
}

// ------------------------------------------------------------- invariance

bool maps_into_conjugate(const RaagMap& h, const VertexSet& delta) {
  const auto& g = h.graph();
  if (delta.ambient() != g.get()) throw GraphError("vertex set from a different graph");
  if (delta.empty()) return true;
  const int n = g->vertex_count();
  // x = M^-1 e_Δ, read off from the abelianised inverse images.
  std::vector<long long> x(static_cast<std::size_t>(n), 0);
  for (int v : delta.members()) {
    auto col = abelianize(h.inverse_image(v));
    for (int r = 0; r < n; ++r) x[static_cast<std::size_t>(r)] += col[static_cast<std::size_t>(r)];
  }
  for (int r = 0; r < n; ++r)
    if (x[static_cast<std::size_t>(r)] != 0 && !delta.contains(r)) return false;

  NormalForm w = identity(g);
  for (int v : delta.members()) w = w * power(generator(g, v), x[static_cast<std::size_t>(v)]);
  auto [y, core] = cyclically_reduce(h.apply(w));
  const VertexSet supp = support(core);
  if (!supp.subset_of(delta)) return false;
  if (supp != delta) throw DegenerateSupport("core of h(w) has support " + supp.to_string());

  // ψ = c(y^-1) ∘ h sends w into A_Δ; it must send all of A_Δ there.
  const NormalForm yi = inverse(y);
  for (int v : delta.members())
    if (!in_special_subgroup(conjugate(h.image(v), yi), delta)) return false;
  return true;
}

bool is_invariant(const FiniteOuterGroup& h, const VertexSet& delta) {
  // The element list is closed under inverses, so testing every element
  // covers both h and h^-1.
  for (std::size_t i = 1; i < h.size(); ++i)
    if (!maps_into_conjugate(h.element(static_cast<int>(i)), delta)) return false;
  return true;
}

// -------------------------------------------------------- InvariantSystem

InvariantSystem::InvariantSystem(GraphPtr g, std::vector<std::uint64_t> members)
    : graph_(std::move(g)), members_(std::move(members)) {
  const std::uint64_t all = graph_->all().bits();
  for (auto m : members_)
    if (m & ~all) throw GraphError("system member outside the graph");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

std::vector<VertexSet> InvariantSystem::sets() const {
  std::vector<VertexSet> out;
  for (auto m : members_) out.push_back(graph_->set(m));
  return out;
}

bool InvariantSystem::contains(std::uint64_t bits) const {
  return std::binary_search(members_.begin(), members_.end(), bits);
}

bool InvariantSystem::contains(const VertexSet& s) const {
  if (s.ambient() != graph_.get()) throw GraphError("vertex set from a different graph");
  return contains(s.bits());
}

namespace {

void check_bound(const FiniteOuterGroup& h, int bound) {
  if (h.graph()->vertex_count() > bound)
    throw GraphError("graph has more than " + std::to_string(bound) + " vertices");
}

}  // namespace

InvariantSystem compute_L(const FiniteOuterGroup& h, int vertex_bound) {
  check_bound(h, vertex_bound);
  const auto& g = h.graph();
  const std::uint64_t count = 1ULL << g->vertex_count();
  std::vector<std::uint64_t> members;
  for (std::uint64_t s = 0; s < count; ++s)
    if (is_invariant(h, g->set(s))) members.push_back(s);
  return InvariantSystem(g, std::move(members));
}

InvariantSystem compute_L_parallel(const FiniteOuterGroup& h, int jobs, int vertex_bound) {
  check_bound(h, vertex_bound);
  const auto& g = h.graph();
  const auto count = static_cast<std::int64_t>(1ULL << g->vertex_count());
  std::vector<char> keep(static_cast<std::size_t>(count), 0);
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (std::int64_t s = 0; s < count; ++s) {
    try {
      keep[static_cast<std::size_t>(s)] = is_invariant(h, g->set(static_cast<std::uint64_t>(s)));
    } catch (...) {
#pragma omp critical(compute_l_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  std::vector<std::uint64_t> members;
  for (std::int64_t s = 0; s < count; ++s)
    if (keep[static_cast<std::size_t>(s)]) members.push_back(static_cast<std::uint64_t>(s));
  return InvariantSystem(g, std::move(members));
}

// ----------------------------------------------------------- closure laws

bool ClosureReport::ok() const { return violation_count() == 0; }

std::size_t ClosureReport::violation_count() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.passed ? 0 : 1;
  return n;
}

ViolationFound::ViolationFound(ClosureReport r)
    : std::runtime_error("invariant system violates " + std::to_string(r.violation_count()) +
                         " closure checks"),
      report_(std::move(r)) {}

ClosureReport verify_closure(const InvariantSystem& l, ClosureOptions opts) {
  const auto& g = *l.graph();
  const std::uint64_t all = g.all().bits();
  const std::uint64_t count = 1ULL << g.vertex_count();
  const auto members = l.sets();
  ClosureReport report;
  auto add = [&](const std::string& name) -> ClosureCheck& {
    report.checks.push_back({name, true, {}});
    return report.checks.back();
  };
  auto fail = [&](ClosureCheck& c, std::vector<VertexSet> w) {
    c.passed = false;
    if (c.witnesses.size() < opts.max_witnesses) c.witnesses.push_back(std::move(w));
  };

  {
    auto& c = add("contains_empty_and_whole");
    if (!l.contains(std::uint64_t{0})) fail(c, {g.none()});
    if (!l.contains(all)) fail(c, {g.all()});
  }
  {
    auto& c = add("intersections");
    for (const auto& a : members)
      for (const auto& b : members)
        if (!l.contains(a & b)) fail(c, {a, b});
  }
  {
    auto& c = add("conditional_unions");
    for (const auto& a : members)
      for (const auto& b : members)
        if (link(a & b).subset_of(star(a)) && !l.contains(a | b)) fail(c, {a, b});
  }
  {
    auto& c = add("components_with_edges");
    for (const auto& comp : components(g))
      if (comp.size() > 1 && !l.contains(comp)) fail(c, {comp});
  }
  {
    auto& c = add("extended_stars");
    for (std::uint64_t s = 0; s < count; ++s)
      if (!l.contains(extended_star(g.set(s)))) fail(c, {g.set(s), extended_star(g.set(s))});
  }
  {
    auto& c = add("links_of_non_cones");
    for (std::uint64_t s = 0; s < count; ++s)
      if (!is_cone(g.set(s)) && !l.contains(link(g.set(s)))) fail(c, {g.set(s), link(g.set(s))});
  }
  {
    auto& c = add("stars_of_members");
    for (const auto& a : members)
      if (!l.contains(star(a))) fail(c, {a, star(a)});
  }
  if (opts.link_preserving) {
    auto& c = add("links_of_all_subgraphs");
    for (std::uint64_t s = 0; s < count; ++s)
      if (!l.contains(link(g.set(s)))) fail(c, {g.set(s), link(g.set(s))});
  }
  {
    auto& c = add("boundary_lemma");
    for (const auto& a : members) {
      if (a.bits() == all) continue;
      bool maximal = true;
      for (const auto& b : members)
        if (b.bits() != all && b != a && a.subset_of(b)) maximal = false;
      if (!maximal) continue;
      const VertexSet rest = g.all() - a;
      for (int w : boundary(a).members())
        if (!rest.subset_of(link(g.vertex(w)))) fail(c, {a, g.vertex(w)});
    }
  }
  return report;
}

void require_closure(const InvariantSystem& l, ClosureOptions opts) {
  auto r = verify_closure(l, opts);
  if (!r.ok()) throw ViolationFound(std::move(r));
}

// ---------------------------------------------------------- assembly plan

AmbiguousMaximal::AmbiguousMaximal(std::vector<VertexSet> candidates)
    : std::runtime_error([&] {
        std::string s = "several maximal proper members:";
        for (const auto& c : candidates) s += " " + c.to_string();
        return s;
      }()),
      candidates_(std::move(candidates)) {}

AssemblyPlan assembly_plan(const InvariantSystem& l, const VertexSet& xi, TiePolicy ties) {
  const auto& g = *l.graph();
  if (!l.contains(xi)) throw std::invalid_argument("Xi " + xi.to_string() + " is not in the system");
  const std::uint64_t all = g.all().bits();
  std::vector<VertexSet> proper;
  for (const auto& m : l.sets())
    if (m.bits() != all && xi.subset_of(m)) proper.push_back(m);
  std::vector<VertexSet> maximal;
  for (const auto& a : proper) {
    bool is_max = true;
    for (const auto& b : proper)
      if (b != a && a.subset_of(b)) is_max = false;
    if (is_max) maximal.push_back(a);
  }
  if (maximal.empty())
    throw NoProperSupergraph("no proper member of the system contains " + xi.to_string());
  std::sort(maximal.begin(), maximal.end(),
            [](const VertexSet& a, const VertexSet& b) { return a.lex_less(b); });
  if (maximal.size() > 1 && ties == TiePolicy::report) throw AmbiguousMaximal(maximal);

  AssemblyPlan plan{maximal.front(), AssemblyCase::components, maximal,
                    g.none(), g.none(), g.none(), g.none(),
                    InvariantSystem(l.graph(), {}), InvariantSystem(l.graph(), {})};
  const VertexSet gp = plan.gamma_prime;
  for (const auto& comp : components(g)) {
    const auto overlap = comp & gp;
    if (!overlap.empty() && overlap != comp) plan.part = AssemblyCase::all_but_one;
  }
  plan.theta = g.all() - gp;
  // In the components case ∂Γ′ is empty, so Θ̄ = Θ there.
  plan.theta_bar = plan.theta | boundary(gp);
  std::vector<std::uint64_t> s, s1;
  VertexSet delta = gp, delta_prime = gp;
  for (const auto& m : l.sets()) {
    if (!plan.theta_bar.subset_of(m)) continue;
    s.push_back(m.bits());
    s1.push_back((m & gp).bits());
    delta = delta & m;
    delta_prime = delta_prime & star(m & gp);
  }
  plan.delta = delta & gp;
  plan.delta_prime = delta_prime;
  plan.s_system = InvariantSystem(l.graph(), std::move(s));
  plan.s_gamma_prime = InvariantSystem(l.graph(), std::move(s1));
  return plan;
}

}  // namespace raag
