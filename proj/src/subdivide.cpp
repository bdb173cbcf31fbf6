#include "raagkit/marked.hpp"

namespace raag {

namespace {

int pow3(int k) {
  int p = 1;
  for (int i = 0; i < k; ++i) p *= 3;
  return p;
}

std::vector<int> digits(int w, int k) {
  std::vector<int> d(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i, w /= 3) d[static_cast<std::size_t>(i)] = w % 3;
  return d;
}

int encode(const std::vector<int>& d) {
  int w = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) w = 3 * w + *it;
  return w;
}

// Reading along the cube's edges from one corner to another.
NormalForm corner_reading(const MarkedComplex& m, int k, int id, std::uint32_t from, std::uint32_t to) {
  EdgePath p;
  std::uint32_t cur = from;
  for (int i = 0; i < k; ++i) {
    if (((cur ^ to) >> i & 1U) == 0) continue;
    const HalfEdge h = m.complex.corner_edge(k, id, cur, i);
    p.push_back({h.edge, h.end == 0});
    cur ^= 1U << i;
  }
  return read_path(m, p);
}

// Corner of the cell matching corner 0 of its facet (axis, side).
std::uint32_t facet_origin(const Cell& c, int axis, int side) {
  const FacetRef& r = c.facets[static_cast<std::size_t>(axis)][static_cast<std::size_t>(side)];
  std::uint32_t b = side ? 1U << axis : 0U;
  for (int j = 0, m = 0; j < c.dim(); ++j) {
    if (j == axis) continue;
    if (r.flips[static_cast<std::size_t>(m)]) b |= 1U << j;
    ++m;
  }
  return b;
}

}  // namespace

Subdivision subdivide(const MarkedComplex& m) {
  const CubeComplex& x = m.complex;
  const int top = x.dimension();
  Subdivision out;
  out.pieces.resize(static_cast<std::size_t>(top + 1));
  for (int k = 0; k <= top; ++k) {
    out.pieces[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(x.count(k)));
    for (auto& v : out.pieces[static_cast<std::size_t>(k)]) v.assign(static_cast<std::size_t>(pow3(k)), {-1, -1});
  }
  MarkedComplex& sub = out.marked;
  sub.graph = m.graph;
  for (int v : m.moduli) sub.moduli.push_back(2 * v);
  sub.coordinates = m.coordinates;
  auto piece = [&](int k, int id, int w) { return out.pieces[static_cast<std::size_t>(k)][static_cast<std::size_t>(id)][static_cast<std::size_t>(w)]; };

  for (int d = 0; d <= top; ++d) {
    for (int k = d; k <= top; ++k) {
      for (int id = 0; id < x.count(k); ++id) {
        const Cell& c = x.cell(k, id);
        for (int w = 0; w < pow3(k); ++w) {
          const std::vector<int> dg = digits(w, k);
          std::vector<int> free;
          for (int i = 0; i < k; ++i)
            if (dg[static_cast<std::size_t>(i)] != 2) free.push_back(i);
          if (static_cast<int>(free.size()) != d) continue;

          Cell nc;
          for (int i : free) nc.lengths.push_back(c.lengths[static_cast<std::size_t>(i)] / 2);
          if (m.has_coords()) {
            int a = 0;
            for (int s : c.coords) {
              if (s % 2 == 0) {
                nc.coords.push_back(2 * s);
              } else {
                const int digit = dg[static_cast<std::size_t>(a++)];
                nc.coords.push_back(digit == 0 ? 2 * s - 1 : digit == 1 ? 2 * s + 1 : 2 * s);
              }
            }
          }
          for (std::size_t a = 0; a < free.size(); ++a) {
            const int i = free[a];
            std::array<FacetRef, 2> pair;
            std::vector<int> inner = dg;
            inner[static_cast<std::size_t>(i)] = 2;
            FacetRef interior{piece(k, id, encode(inner)).second, {}, {}};
            for (std::size_t t = 0; t + 1 < free.size(); ++t) {
              interior.axes.push_back(static_cast<int>(t));
              interior.flips.push_back(false);
            }
            const int side = dg[static_cast<std::size_t>(i)];  // boundary side of this half
            const FacetRef& r = c.facets[static_cast<std::size_t>(i)][static_cast<std::size_t>(side)];
            std::vector<int> fd(static_cast<std::size_t>(k - 1));
            for (int j = 0, mm = 0; j < k; ++j) {
              if (j == i) continue;
              int digit = dg[static_cast<std::size_t>(j)];
              if (digit != 2 && r.flips[static_cast<std::size_t>(mm)]) digit ^= 1;
              fd[static_cast<std::size_t>(r.axes[static_cast<std::size_t>(mm)])] = digit;
              ++mm;
            }
            FacetRef boundary{piece(k - 1, r.cell, encode(fd)).second, {}, {}};
            for (int j = 0, mm = 0; j < k; ++j) {
              if (j == i) continue;
              const int fa = r.axes[static_cast<std::size_t>(mm)];
              const bool fl = r.flips[static_cast<std::size_t>(mm)];
              ++mm;
              if (dg[static_cast<std::size_t>(j)] == 2) continue;
              int rank = 0;
              for (int q = 0; q < fa; ++q)
                if (fd[static_cast<std::size_t>(q)] != 2) ++rank;
              boundary.axes.push_back(rank);
              boundary.flips.push_back(fl);
            }
            pair[static_cast<std::size_t>(side)] = boundary;
            pair[static_cast<std::size_t>(1 - side)] = interior;
            nc.facets.push_back(std::move(pair));
          }
          const int nid = sub.complex.add_cell(std::move(nc));
          out.pieces[static_cast<std::size_t>(k)][static_cast<std::size_t>(id)][static_cast<std::size_t>(w)] = {d, nid};
          if (d == 1) {
            const int i = free[0];
            const int side = dg[static_cast<std::size_t>(i)];
            const std::uint32_t b = facet_origin(c, i, side);
            sub.labels.push_back(side == 0 ? corner_reading(m, k, id, b, 0) : corner_reading(m, k, id, 0, b));
          }
        }
      }
    }
  }
  sub.basepoint = out.vertex(m.basepoint);
  return out;
}

}  // namespace raag
