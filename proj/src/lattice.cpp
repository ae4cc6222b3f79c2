#include "rydsim/lattice.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace rydsim {

namespace {

int wrap(int v, int n) { return ((v % n) + n) % n; }

// Greedy colouring in term-index order. Two terms conflict when they share a
// link or a corner.
SublatticeColoring greedy_color(TermKind kind, const std::vector<std::vector<int>>& links,
                                const std::vector<std::vector<int>>& corners) {
  const std::size_t n = links.size();
  SublatticeColoring out;
  out.kind = kind;
  out.group_of.assign(n, -1);
  auto conflict = [&](std::size_t a, std::size_t b) {
    for (int l : links[a]) {
      if (std::find(links[b].begin(), links[b].end(), l) != links[b].end()) return true;
    }
    for (int c : corners[a]) {
      if (std::find(corners[b].begin(), corners[b].end(), c) != corners[b].end()) return true;
    }
    return false;
  };
  for (std::size_t t = 0; t < n; ++t) {
    int color = 0;
    for (;; ++color) {
      bool ok = true;
      if (color < out.z()) {
        for (int other : out.groups[color]) {
          if (conflict(t, static_cast<std::size_t>(other))) {
            ok = false;
            break;
          }
        }
      }
      if (ok) break;
    }
    if (color == out.z()) out.groups.emplace_back();
    out.groups[color].push_back(static_cast<int>(t));
    out.group_of[t] = color;
  }
  return out;
}

}  // namespace

const char* term_kind_name(TermKind kind) {
  switch (kind) {
    case TermKind::ToricPlaquette: return "plaquette";
    case TermKind::ToricVertex: return "vertex";
    case TermKind::Octahedron: return "octahedron";
    case TermKind::CubicPlaquette: return "cubic_plaquette";
  }
  return "?";
}

int ToricLattice::link(int x, int y, int d) const { return 2 * (wrap(x, L) + L * wrap(y, L)) + d; }

int ToricLattice::cell(int x, int y) const { return wrap(x, L) + L * wrap(y, L); }

std::array<int, 2> ToricLattice::link_plaquettes(int l) const {
  const int v = l / 2;
  const int x = v % L;
  const int y = v / L;
  if (l % 2 == 0) return {cell(x, y), cell(x, y - 1)};  // bottom of (x,y), top of (x,y-1)
  return {cell(x, y), cell(x - 1, y)};                  // left of (x,y), right of (x-1,y)
}

std::array<int, 2> ToricLattice::link_vertices(int l) const {
  const int v = l / 2;
  const int x = v % L;
  const int y = v / L;
  if (l % 2 == 0) return {cell(x, y), cell(x + 1, y)};
  return {cell(x, y), cell(x, y + 1)};
}

std::array<int, 4> ToricLattice::plaquette_corners(int p) const {
  const int x = p % L;
  const int y = p / L;
  return {cell(x, y), cell(x + 1, y), cell(x + 1, y + 1), cell(x, y + 1)};
}

std::array<int, 4> ToricLattice::vertex_corners(int s) const {
  const int x = s % L;
  const int y = s / L;
  return {cell(x, y), cell(x - 1, y), cell(x - 1, y - 1), cell(x, y - 1)};
}

PauliString ToricLattice::plaquette_stabilizer(int p) const {
  const auto& ls = plaquettes.at(p);
  return PauliString::uniform(std::span<const int>(ls.data(), ls.size()), Pauli::X);
}

PauliString ToricLattice::vertex_stabilizer(int s) const {
  const auto& ls = vertices.at(s);
  return PauliString::uniform(std::span<const int>(ls.data(), ls.size()), Pauli::Z);
}

ToricLattice build_toric(int L) {
  if (L < 2) throw std::invalid_argument("build_toric: L must be at least 2, got " + std::to_string(L));
  ToricLattice lat;
  lat.L = L;
  lat.link_count = 2 * L * L;
  for (int y = 0; y < L; ++y) {
    for (int x = 0; x < L; ++x) {
      lat.plaquettes.push_back({lat.link(x, y, 0), lat.link(x + 1, y, 1), lat.link(x, y + 1, 0), lat.link(x, y, 1)});
      lat.vertices.push_back({lat.link(x, y, 0), lat.link(x, y, 1), lat.link(x - 1, y, 0), lat.link(x, y - 1, 1)});
    }
  }
  for (int p = 0; p < L * L; ++p) lat.plaquette_controls.push_back(lat.link_count + p);
  for (int s = 0; s < L * L; ++s) lat.vertex_controls.push_back(lat.link_count + L * L + s);
  return lat;
}

int CubicLattice::cell(int x, int y, int z) const {
  return wrap(x, dims[0]) + dims[0] * (wrap(y, dims[1]) + dims[1] * wrap(z, dims[2]));
}

std::array<int, 3> CubicLattice::coords(int c) const {
  return {c % dims[0], (c / dims[0]) % dims[1], c / (dims[0] * dims[1])};
}

int CubicLattice::step(int c, int axis, int dir) const {
  int a = axis;
  for (int k = 0; k < 3 && dims[a] < 2; ++k) a = (a + 1) % 3;
  auto xyz = coords(c);
  xyz[a] += dir;
  return cell(xyz[0], xyz[1], xyz[2]);
}

CubicLattice build_cubic(int Lx, int Ly, int Lz) {
  if (Lx < 1 || Ly < 1 || Lz < 1) throw std::invalid_argument("build_cubic: dimensions must be positive");
  if (Lx < 2 && Ly < 2 && Lz < 2) throw std::invalid_argument("build_cubic: at least one dimension must be >= 2");
  CubicLattice lat;
  lat.dims = {Lx, Ly, Lz};
  lat.link_count = 3 * lat.cell_count();
  for (int c = 0; c < lat.cell_count(); ++c) {
    std::array<int, 6> o{lat.link(c, 0), lat.link(c, 1), lat.link(c, 2),
                         lat.link(lat.step(c, 0, -1), 0), lat.link(lat.step(c, 1, -1), 1),
                         lat.link(lat.step(c, 2, -1), 2)};
    std::set<int> distinct(o.begin(), o.end());
    if (distinct.size() != 6) throw std::invalid_argument("build_cubic: octahedron with repeated links");
    lat.octahedra.push_back(o);
  }
  std::set<std::set<int>> seen;
  for (int c = 0; c < lat.cell_count(); ++c) {
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        const int ca = lat.step(c, a, +1);
        const int cb = lat.step(c, b, +1);
        const int cab = lat.step(ca, b, +1);
        std::array<int, 4> p{lat.link(c, a), lat.link(ca, b), lat.link(cb, a), lat.link(c, b)};
        std::set<int> key(p.begin(), p.end());
        if (key.size() != 4 || !seen.insert(key).second) continue;
        lat.plaquettes.push_back(p);
        lat.plaquette_cells.push_back({c, ca, cab, cb});
        lat.plaquette_planes.push_back({a, b});
      }
    }
  }
  const int n_oct = static_cast<int>(lat.octahedra.size());
  for (int o = 0; o < n_oct; ++o) lat.octahedron_controls.push_back(lat.link_count + o);
  for (int p = 0; p < static_cast<int>(lat.plaquettes.size()); ++p) {
    lat.plaquette_controls.push_back(lat.link_count + n_oct + p);
  }
  return lat;
}

std::vector<std::vector<int>> term_links(const ToricLattice& lattice, TermKind kind) {
  std::vector<std::vector<int>> out;
  if (kind == TermKind::ToricPlaquette) {
    for (const auto& p : lattice.plaquettes) out.emplace_back(p.begin(), p.end());
  } else if (kind == TermKind::ToricVertex) {
    for (const auto& v : lattice.vertices) out.emplace_back(v.begin(), v.end());
  } else {
    throw std::invalid_argument("term_links: term kind does not belong to the toric lattice");
  }
  return out;
}

std::vector<std::vector<int>> term_links(const CubicLattice& lattice, TermKind kind) {
  std::vector<std::vector<int>> out;
  if (kind == TermKind::Octahedron) {
    for (const auto& o : lattice.octahedra) out.emplace_back(o.begin(), o.end());
  } else if (kind == TermKind::CubicPlaquette) {
    for (const auto& p : lattice.plaquettes) out.emplace_back(p.begin(), p.end());
  } else {
    throw std::invalid_argument("term_links: term kind does not belong to the cubic lattice");
  }
  return out;
}

SublatticeColoring color_sublattices(const ToricLattice& lattice, TermKind kind) {
  auto links = term_links(lattice, kind);
  std::vector<std::vector<int>> corners;
  const int n = lattice.L * lattice.L;
  for (int t = 0; t < n; ++t) {
    auto c = kind == TermKind::ToricPlaquette ? lattice.plaquette_corners(t) : lattice.vertex_corners(t);
    corners.emplace_back(c.begin(), c.end());
  }
  return greedy_color(kind, links, corners);
}

SublatticeColoring color_sublattices(const CubicLattice& lattice, TermKind kind) {
  auto links = term_links(lattice, kind);
  std::vector<std::vector<int>> corners(links.size());
  if (kind == TermKind::CubicPlaquette) {
    for (std::size_t p = 0; p < links.size(); ++p) {
      const auto& c = lattice.plaquette_cells[p];
      corners[p].assign(c.begin(), c.end());
    }
  }
  return greedy_color(kind, links, corners);
}

bool coloring_is_valid(const SublatticeColoring& coloring, const std::vector<std::vector<int>>& links) {
  std::vector<int> count(links.size(), 0);
  for (const auto& g : coloring.groups) {
    std::set<int> used;
    for (int t : g) {
      if (t < 0 || t >= static_cast<int>(links.size())) return false;
      ++count[t];
      for (int l : links[t]) {
        if (!used.insert(l).second) return false;
      }
    }
  }
  return std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });
}

}  // namespace rydsim
