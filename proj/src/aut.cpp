#include "raagkit/aut.hpp"

#include <algorithm>

namespace raag {

namespace {

void require_same_graph(const GraphPtr& a, const GraphPtr& b) {
  if (a != b && !(*a == *b)) throw NotAutomorphism("maps over different graphs");
}

NormalForm substitute(const std::vector<NormalForm>& images, const GraphPtr& g,
                      const Letters& ls) {
  NormalForm out = identity(g);
  for (auto l : ls) {
    const auto& img = images[static_cast<std::size_t>(l.vertex())];
    out = out * (l.inverse() ? inverse(img) : img);
  }
  return out;
}

}  // namespace

std::string to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::inversion: return "inversion";
    case GeneratorKind::partial_conjugation: return "partial_conjugation";
    case GeneratorKind::fold: return "fold";
    case GeneratorKind::twist: return "twist";
    case GeneratorKind::graph_symmetry: return "graph_symmetry";
  }
  return "";
}

std::optional<GeneratorKind> generator_kind_from_string(const std::string& s) {
  for (auto k : {GeneratorKind::inversion, GeneratorKind::partial_conjugation,
                 GeneratorKind::fold, GeneratorKind::twist, GeneratorKind::graph_symmetry})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::no: return "false";
    case Tri::yes: return "true";
    case Tri::unknown: return "unknown";
  }
  return "unknown";
}

// ------------------------------------------------------------------ RaagMap

RaagMap::RaagMap(GraphPtr g, std::vector<NormalForm> images,
                 std::vector<NormalForm> inverse_images,
                 std::optional<std::vector<GeneratorKind>> factors)
    : graph_(std::move(g)),
      images_(std::move(images)),
      inverse_images_(std::move(inverse_images)),
      factors_(std::move(factors)) {
  const auto n = static_cast<std::size_t>(graph_->vertex_count());
  if (images_.size() != n || inverse_images_.size() != n)
    throw NotAutomorphism("expected one image per generator");
  for (const auto& w : images_) require_same_graph(w.graph(), graph_);
  for (const auto& w : inverse_images_) require_same_graph(w.graph(), graph_);
  for (int v = 0; v < graph_->vertex_count(); ++v) {
    const NormalForm gen = generator(graph_, v);
    if (substitute(images_, graph_, inverse_image(v).letters()) != gen ||
        substitute(inverse_images_, graph_, image(v).letters()) != gen)
      throw NotAutomorphism("inverse images do not invert the map at '" + graph_->label(v) + "'");
  }
  for (auto [u, v] : graph_->edges()) {
    for (const auto* imgs : {&images_, &inverse_images_}) {
      const auto& a = (*imgs)[static_cast<std::size_t>(u)];
      const auto& b = (*imgs)[static_cast<std::size_t>(v)];
      if (a * b != b * a)
        throw NotAutomorphism("relator [" + graph_->label(u) + "," + graph_->label(v) +
                              "] not preserved");
    }
  }
}

RaagMap RaagMap::identity(const GraphPtr& g) {
  std::vector<NormalForm> imgs;
  for (int v = 0; v < g->vertex_count(); ++v) imgs.push_back(generator(g, v));
  return RaagMap(g, imgs, imgs, std::vector<GeneratorKind>{});
}

RaagMap RaagMap::inner(const NormalForm& x) {
  const auto& g = x.graph();
  std::vector<NormalForm> imgs, inv;
  const NormalForm xi = raag::inverse(x);
  for (int v = 0; v < g->vertex_count(); ++v) {
    imgs.push_back(conjugate(generator(g, v), x));
    inv.push_back(conjugate(generator(g, v), xi));
  }
  return RaagMap(g, std::move(imgs), std::move(inv));
}

const std::vector<GeneratorKind>& RaagMap::factors() const {
  static const std::vector<GeneratorKind> none;
  return factors_ ? *factors_ : none;
}

std::string RaagMap::tag() const {
  if (!factors_) return "";
  if (factors_->size() == 1) return to_string(factors_->front());
  return "composite";
}

NormalForm RaagMap::apply(const NormalForm& w) const {
  require_same_graph(w.graph(), graph_);
  return substitute(images_, graph_, w.letters());
}

NormalForm RaagMap::apply(const Word& w) const {
  require_same_graph(w.graph, graph_);
  return substitute(images_, graph_, w.letters);
}

RaagMap RaagMap::inverse() const {
  std::optional<std::vector<GeneratorKind>> f;
  if (factors_) f = std::vector<GeneratorKind>(factors_->rbegin(), factors_->rend());
  return RaagMap(graph_, inverse_images_, images_, f);
}

std::vector<std::vector<long long>> RaagMap::abelian_matrix() const {
  const auto n = static_cast<std::size_t>(graph_->vertex_count());
  std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
  for (std::size_t col = 0; col < n; ++col) {
    auto a = abelianize(images_[col]);
    for (std::size_t row = 0; row < n; ++row) m[row][col] = a[row];
  }
  return m;
}

std::size_t RaagMap::total_image_length() const {
  std::size_t t = 0;
  for (const auto& w : images_) t += w.length();
  return t;
}

// ------------------------------------------------------------- generators

RaagMap make_inversion(const GraphPtr& g, int v) {
  if (v < 0 || v >= g->vertex_count()) throw ValidityError("inversion: vertex out of range");
  auto id = RaagMap::identity(g);
  auto imgs = id.images();
  imgs[static_cast<std::size_t>(v)] = generator(g, v, true);
  return RaagMap(g, imgs, imgs, std::vector{GeneratorKind::inversion});
}

bool partial_conjugation_valid(const SimplicialGraph& g, int v, std::uint64_t component) {
  if (v < 0 || v >= g.vertex_count() || component == 0) return false;
  const VertexSet outside = g.all() - star(g.vertex(v));
  if (component & ~outside.bits()) return false;
  for (const auto& comp : components(outside)) {
    const auto overlap = comp.bits() & component;
    if (overlap != 0 && overlap != comp.bits()) return false;
  }
  return true;
}

RaagMap make_partial_conjugation(const GraphPtr& g, int v, const VertexSet& component) {
  if (component.ambient() != g.get())
    throw ValidityError("partial conjugation: component from a different graph");
  if (v < 0 || v >= g->vertex_count())
    throw ValidityError("partial conjugation: vertex out of range");
  const VertexSet outside = g->all() - star(g->vertex(v));
  if (outside.empty())
    throw ValidityError("partial conjugation: st(" + g->label(v) + ") does not disconnect the graph");
  if (component.empty()) throw ValidityError("partial conjugation: empty component set");
  if (!component.subset_of(outside))
    throw ValidityError("partial conjugation: C meets st(" + g->label(v) + ")");
  if (!partial_conjugation_valid(*g, v, component.bits()))
    throw ValidityError("partial conjugation: C is not a union of components of the complement of st(" +
                        g->label(v) + ")");
  const NormalForm x = generator(g, v);
  std::vector<NormalForm> imgs, inv;
  for (int u = 0; u < g->vertex_count(); ++u) {
    const NormalForm gen = generator(g, u);
    imgs.push_back(component.contains(u) ? conjugate(gen, x) : gen);
    inv.push_back(component.contains(u) ? conjugate(gen, inverse(x)) : gen);
  }
  return RaagMap(g, imgs, inv, std::vector{GeneratorKind::partial_conjugation});
}

bool transvection_valid(const SimplicialGraph& g, int w, int v) {
  if (w == v || w < 0 || v < 0 || w >= g.vertex_count() || v >= g.vertex_count()) return false;
  return link(g.vertex(w)).subset_of(star(g.vertex(v)));
}

RaagMap make_transvection(const GraphPtr& g, int w, int v) {
  if (w == v) throw ValidityError("transvection: w and v coincide");
  if (!transvection_valid(*g, w, v))
    throw ValidityError("transvection: lk(" + g->label(w) + ") is not contained in st(" +
                        g->label(v) + ")");
  const bool twist = g->adjacent(v, w);
  auto imgs = RaagMap::identity(g).images();
  auto inv = imgs;
  imgs[static_cast<std::size_t>(w)] = generator(g, w) * generator(g, v);
  inv[static_cast<std::size_t>(w)] = generator(g, w) * generator(g, v, true);
  return RaagMap(g, imgs, inv,
                 std::vector{twist ? GeneratorKind::twist : GeneratorKind::fold});
}

RaagMap make_graph_symmetry(const GraphPtr& g, const std::vector<int>& perm) {
  const int n = g->vertex_count();
  if (static_cast<int>(perm.size()) != n) throw ValidityError("graph symmetry: wrong size");
  std::vector<int> inv_perm(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    const int t = perm[static_cast<std::size_t>(v)];
    if (t < 0 || t >= n || inv_perm[static_cast<std::size_t>(t)] != -1)
      throw ValidityError("graph symmetry: not a permutation");
    inv_perm[static_cast<std::size_t>(t)] = v;
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (g->adjacent(u, v) !=
          g->adjacent(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]))
        throw ValidityError("graph symmetry: adjacency not preserved");
  std::vector<NormalForm> imgs, inv;
  for (int v = 0; v < n; ++v) {
    imgs.push_back(generator(g, perm[static_cast<std::size_t>(v)]));
    inv.push_back(generator(g, inv_perm[static_cast<std::size_t>(v)]));
  }
  return RaagMap(g, imgs, inv, std::vector{GeneratorKind::graph_symmetry});
}

RaagMap compose(const RaagMap& f, const RaagMap& g) {
  require_same_graph(f.graph(), g.graph());
  std::vector<NormalForm> imgs, inv;
  for (int v = 0; v < f.graph()->vertex_count(); ++v) {
    imgs.push_back(f.apply(g.image(v)));
    inv.push_back(g.inverse().apply(f.inverse_image(v)));
  }
  std::optional<std::vector<GeneratorKind>> factors;
  if (f.tagged() && g.tagged()) {
    factors = g.factors();
    factors->insert(factors->end(), f.factors().begin(), f.factors().end());
  }
  return RaagMap(f.graph(), std::move(imgs), std::move(inv), std::move(factors));
}

NormalForm apply(const RaagMap& f, const Word& w) { return f.apply(w); }

// ---------------------------------------------------------------- inner-ness

std::optional<NormalForm> is_inner(const RaagMap& f, InnerSearch opts) {
  const auto& g = f.graph();
  const int n = g->vertex_count();
  // Inner automorphisms act trivially on the abelianisation.
  const auto m = f.abelian_matrix();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != (r == c ? 1 : 0))
        return std::nullopt;
  if (n == 0) return identity(g);

  ConjugacySolver solver(g);
  std::vector<NormalForm> gv;
  for (int v = 0; v < n; ++v) {
    auto w = solver.is_conjugate(generator(g, v), f.image(v));
    if (!w) return std::nullopt;
    gv.push_back(*w);
  }

  // u = v_0 v_1 ... v_{n-1} has full support; its centraliser is generated by
  // the pieces of u on the join factors of Γ, so every solution is
  // (Π u_i^{e_i}) g0 with g0 any conjugator taking u to f(u).
  NormalForm u = identity(g);
  for (int v = 0; v < n; ++v) u = u * generator(g, v);
  auto g0 = solver.is_conjugate(u, f.apply(u));
  if (!g0) return std::nullopt;

  const std::size_t radius = opts.radius.value_or(f.total_image_length());
  bool truncated = false;
  NormalForm x_prefix = identity(g);
  for (const auto& factor : join_decomposition(g->all()).factors) {
    const auto verts = factor.members();
    if (verts.size() == 1) {
      if (f.image(verts[0]) != generator(g, verts[0])) return std::nullopt;
      continue;
    }
    NormalForm piece = identity(g);
    for (int v : verts) piece = piece * generator(g, v);
    // If |e| exceeds |g0 g_v^-1| then u_i^e g0 g_v^-1 keeps a letter outside
    // st(v), so it cannot lie in C(v); that caps the exponent.
    std::size_t cap = SIZE_MAX;
    for (int v : verts)
      cap = std::min(cap, (*g0 * inverse(gv[static_cast<std::size_t>(v)])).length());
    const std::size_t bound = std::min(cap, radius);
    if (bound < cap) truncated = true;
    std::optional<NormalForm> found;
    for (std::size_t k = 0; k <= 2 * bound && !found; ++k) {
      const long long e = (k % 2 == 0) ? -static_cast<long long>(k / 2)
                                       : static_cast<long long>((k + 1) / 2);
      const NormalForm x = power(piece, e) * *g0;
      bool ok = true;
      for (int v : verts)
        if (conjugate(generator(g, v), x) != f.image(v)) {
          ok = false;
          break;
        }
      if (ok) found = power(piece, e);
    }
    if (!found) {
      if (bound < cap) throw Inconclusive("is_inner: exponent search exhausted", radius);
      return std::nullopt;
    }
    x_prefix = x_prefix * *found;
  }
  (void)truncated;
  NormalForm x = x_prefix * *g0;
  for (int v = 0; v < n; ++v)
    if (conjugate(generator(g, v), x) != f.image(v)) return std::nullopt;
  return x;
}

bool outer_equal(const RaagMap& f, const RaagMap& g, InnerSearch opts) {
  return is_inner(compose(f, g.inverse()), opts).has_value();
}

UntwistedFlags classify_untwisted(const RaagMap& f) {
  if (!f.tagged()) return {Tri::unknown, Tri::unknown};
  bool sym = false, twist = false;
  for (auto k : f.factors()) {
    sym |= k == GeneratorKind::graph_symmetry;
    twist |= k == GeneratorKind::twist;
  }
  return {sym ? Tri::no : Tri::yes, (sym || twist) ? Tri::no : Tri::yes};
}

}  // namespace raag
