#include "raagkit/complex.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <set>

#include <omp.h>

namespace raag {

int CubeComplex::add_vertex(std::vector<int> coords) {
  Cell c;
  c.coords = std::move(coords);
  return add_cell(std::move(c));
}

int CubeComplex::add_edge(int from, int to, Length length, std::vector<int> coords) {
  Cell c;
  c.facets.push_back({FacetRef{from, {}, {}}, FacetRef{to, {}, {}}});
  c.lengths.push_back(length);
  c.coords = std::move(coords);
  return add_cell(std::move(c));
}

int CubeComplex::add_cell(Cell c) {
  const int k = c.dim();
  if (static_cast<int>(c.facets.size()) != k) throw ComplexError("cell has wrong number of facets");
  for (const auto& pair : c.facets)
    for (const auto& f : pair)
      if (f.cell < 0 || f.cell >= count(k - 1)) throw ComplexError("facet refers to a missing cell");
  if (static_cast<int>(cells_.size()) <= k) cells_.resize(static_cast<std::size_t>(k) + 1);
  cells_[static_cast<std::size_t>(k)].push_back(std::move(c));
  return static_cast<int>(cells_[static_cast<std::size_t>(k)].size()) - 1;
}

int CubeComplex::count(int dim) const {
  if (dim < 0 || dim >= static_cast<int>(cells_.size())) return 0;
  return static_cast<int>(cells_[static_cast<std::size_t>(dim)].size());
}

const Cell& CubeComplex::cell(int dim, int id) const {
  if (id < 0 || id >= count(dim)) throw ComplexError("no such cell");
  return cells_[static_cast<std::size_t>(dim)][static_cast<std::size_t>(id)];
}

std::size_t CubeComplex::total_cells() const {
  std::size_t n = 0;
  for (const auto& d : cells_) n += d.size();
  return n;
}

Face CubeComplex::face(int dim, int id, const std::vector<int>& fixed,
                       const std::vector<int>* order) const {
  Face f;
  f.dim = dim;
  f.cell = id;
  f.axis.resize(static_cast<std::size_t>(dim));
  std::iota(f.axis.begin(), f.axis.end(), 0);
  f.flip.assign(static_cast<std::size_t>(dim), false);
  std::vector<int> seq;
  if (order) {
    seq = *order;
  } else {
    for (int i = 0; i < dim; ++i)
      if (fixed[static_cast<std::size_t>(i)] >= 0) seq.push_back(i);
  }
  for (int i : seq) {
    const auto ui = static_cast<std::size_t>(i);
    const int p = f.axis[ui];
    const int side = fixed[ui] ^ static_cast<int>(f.flip[ui]);
    const FacetRef& r = cell(f.dim, f.cell).facets[static_cast<std::size_t>(p)][static_cast<std::size_t>(side)];
    for (std::size_t a = 0; a < f.axis.size(); ++a) {
      if (f.axis[a] < 0 || a == ui) continue;
      const int q = f.axis[a];
      const auto idx = static_cast<std::size_t>(q < p ? q : q - 1);
      f.axis[a] = r.axes[idx];
      f.flip[a] = f.flip[a] != r.flips[idx];
    }
    f.axis[ui] = -1;
    f.flip[ui] = false;
    --f.dim;
    f.cell = r.cell;
  }
  return f;
}

int CubeComplex::corner_vertex(int dim, int id, std::uint32_t bits) const {
  std::vector<int> fixed(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) fixed[static_cast<std::size_t>(i)] = (bits >> i) & 1U;
  return face(dim, id, fixed).cell;
}

HalfEdge CubeComplex::corner_edge(int dim, int id, std::uint32_t bits, int axis) const {
  std::vector<int> fixed(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) fixed[static_cast<std::size_t>(i)] = (bits >> i) & 1U;
  fixed[static_cast<std::size_t>(axis)] = -1;
  const Face f = face(dim, id, fixed);
  const int b = (bits >> axis) & 1U;
  return {f.cell, b ^ static_cast<int>(f.flip[static_cast<std::size_t>(axis)])};
}

void CubeComplex::validate() const {
  for (int k = 0; k <= dimension(); ++k) {
    for (int id = 0; id < count(k); ++id) {
      const Cell& c = cell(k, id);
      const std::string where = "cell " + std::to_string(k) + ":" + std::to_string(id);
      if (static_cast<int>(c.facets.size()) != k) throw ComplexError(where + " has wrong facet count");
      for (const auto& l : c.lengths)
        if (l <= 0) throw ComplexError(where + " has a non-positive length");
      for (int i = 0; i < k; ++i) {
        for (int s = 0; s < 2; ++s) {
          const FacetRef& r = c.facets[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
          if (r.cell < 0 || r.cell >= count(k - 1)) throw ComplexError(where + " has a missing facet");
          if (static_cast<int>(r.axes.size()) != k - 1 || r.flips.size() != r.axes.size())
            throw ComplexError(where + " has a malformed facet map");
          std::vector<int> seen = r.axes;
          std::sort(seen.begin(), seen.end());
          for (int m = 0; m < k - 1; ++m)
            if (seen[static_cast<std::size_t>(m)] != m) throw ComplexError(where + " facet axes are not a permutation");
          const Cell& fc = cell(k - 1, r.cell);
          for (int j = 0, m = 0; j < k; ++j) {
            if (j == i) continue;
            if (c.lengths[static_cast<std::size_t>(j)] != fc.lengths[static_cast<std::size_t>(r.axes[static_cast<std::size_t>(m)])])
              throw ComplexError(where + " facet lengths disagree");
            ++m;
          }
        }
      }
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          for (int s = 0; s < 4; ++s) {
            std::vector<int> fixed(static_cast<std::size_t>(k), -1);
            fixed[static_cast<std::size_t>(i)] = s & 1;
            fixed[static_cast<std::size_t>(j)] = s >> 1;
            const std::vector<int> ij{i, j}, ji{j, i};
            const Face a = face(k, id, fixed, &ij);
            const Face b = face(k, id, fixed, &ji);
            if (a.cell != b.cell || a.axis != b.axis || a.flip != b.flip)
              throw ComplexError(where + " has inconsistent codimension-two faces");
          }
    }
  }
}

namespace {

using Simplex = std::vector<HalfEdge>;

std::vector<std::vector<Simplex>> corner_simplices(const CubeComplex& x) {
  std::vector<std::vector<Simplex>> out(static_cast<std::size_t>(x.vertex_count()));
  for (int k = 1; k <= x.dimension(); ++k) {
    if (k > 30) throw ComplexError("cell dimension too large");
    for (int id = 0; id < x.count(k); ++id)
      for (std::uint32_t b = 0; b < (1U << k); ++b) {
        Simplex s;
        for (int a = 0; a < k; ++a) s.push_back(x.corner_edge(k, id, b, a));
        out[static_cast<std::size_t>(x.corner_vertex(k, id, b))].push_back(std::move(s));
      }
  }
  return out;
}

std::optional<NpcWitness> check_vertex(int v, const std::vector<Simplex>& simplices) {
  std::vector<HalfEdge> verts;
  for (const auto& s : simplices)
    if (s.size() == 1) verts.push_back(s[0]);
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (verts.size() > 64) throw ComplexError("vertex link too large");
  auto index = [&](HalfEdge h) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), h) - verts.begin());
  };

  std::set<std::vector<int>> seen;
  std::vector<std::uint64_t> adj(verts.size(), 0);
  for (auto s : simplices) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      return NpcWitness{v, "repeated_link_vertex", s};
    std::vector<int> key;
    for (const auto& h : s) key.push_back(index(h));
    if (!seen.insert(key).second) return NpcWitness{v, "duplicate_simplex", s};
    if (key.size() == 2) {
      adj[static_cast<std::size_t>(key[0])] |= 1ULL << key[1];
      adj[static_cast<std::size_t>(key[1])] |= 1ULL << key[0];
    }
  }

  std::optional<NpcWitness> found;
  std::vector<int> clique;
  auto extend = [&](auto&& self, std::uint64_t cand) -> void {
    for (int i = 0; i < static_cast<int>(verts.size()) && !found; ++i) {
      if (!((cand >> i) & 1ULL)) continue;
      clique.push_back(i);
      if (clique.size() >= 3 && !seen.count(clique)) {
        Simplex s;
        for (int j : clique) s.push_back(verts[static_cast<std::size_t>(j)]);
        found = NpcWitness{v, "empty_simplex", s};
      } else {
        const std::uint64_t higher = i + 1 < 64 ? ~((2ULL << i) - 1) : 0;
        self(self, cand & adj[static_cast<std::size_t>(i)] & higher);
      }
      clique.pop_back();
    }
  };
  const std::uint64_t all = verts.size() == 64 ? ~0ULL : (1ULL << verts.size()) - 1;
  extend(extend, all);
  return found;
}

}  // namespace

NpcResult npc_check(const CubeComplex& x) {
  const auto simplices = corner_simplices(x);
  for (int v = 0; v < x.vertex_count(); ++v)
    if (auto w = check_vertex(v, simplices[static_cast<std::size_t>(v)])) return {false, w};
  return {};
}

NpcResult npc_check_parallel(const CubeComplex& x, int jobs) {
  const auto simplices = corner_simplices(x);
  const int n = x.vertex_count();
  std::vector<std::optional<NpcWitness>> results(static_cast<std::size_t>(n));
  std::exception_ptr error;
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int v = 0; v < n; ++v) {
    try {
      results[static_cast<std::size_t>(v)] = check_vertex(v, simplices[static_cast<std::size_t>(v)]);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  for (auto& r : results)
    if (r) return {false, r};
  return {};
}

}  // namespace raag
