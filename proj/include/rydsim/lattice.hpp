#pragma once

#include <array>
#include <vector>

#include "rydsim/pauli.hpp"

namespace rydsim {

enum class TermKind { ToricPlaquette, ToricVertex, Octahedron, CubicPlaquette };

const char* term_kind_name(TermKind kind);

/// Periodic L x L square lattice with one spin per link.
///
/// Link id 2*(x + L*y) + d, where d = 0 is the east link and d = 1 the north
/// link leaving vertex (x, y). Plaquette (x, y) has vertex (x, y) as its lower
/// left corner; its links are listed bottom, right, top, left.
struct ToricLattice {
  int L = 0;
  int link_count = 0;
  std::vector<std::array<int, 4>> plaquettes;
  std::vector<std::array<int, 4>> vertices;
  // Logical control-qubit slots, numbered after the links.
  std::vector<int> plaquette_controls;
  std::vector<int> vertex_controls;

  int link(int x, int y, int d) const;
  int cell(int x, int y) const;
  // The two plaquettes (resp. vertices) containing a link.
  std::array<int, 2> link_plaquettes(int link) const;
  std::array<int, 2> link_vertices(int link) const;
  // Vertices at the corners of a plaquette, and plaquettes around a vertex.
  std::array<int, 4> plaquette_corners(int p) const;
  std::array<int, 4> vertex_corners(int s) const;

  PauliString plaquette_stabilizer(int p) const;  // prod X
  PauliString vertex_stabilizer(int s) const;     // prod Z
  int spin_count() const { return link_count; }
  int vertex_count() const { return L * L; }
};

/// Periodic cubic lattice with one spin per link; link id 3*cell + axis.
///
/// An axis of size 1 would turn its links into self loops. Instead, a step
/// along such an axis is taken as a step of +1 along the next axis (cyclic
/// order x, y, z) whose size is at least 2.
struct CubicLattice {
  std::array<int, 3> dims{};
  int link_count = 0;
  std::vector<std::array<int, 6>> octahedra;
  // Links in cyclic order around the plaquette.
  std::vector<std::array<int, 4>> plaquettes;
  // Cells at the plaquette corners, in the same cyclic order.
  std::vector<std::array<int, 4>> plaquette_cells;
  // Normal-plane axes (a, b) of each plaquette.
  std::vector<std::array<int, 2>> plaquette_planes;
  std::vector<int> octahedron_controls;
  std::vector<int> plaquette_controls;

  int cell_count() const { return dims[0] * dims[1] * dims[2]; }
  int cell(int x, int y, int z) const;
  std::array<int, 3> coords(int cell) const;
  int link(int cell, int axis) const { return 3 * cell + axis; }
  // Neighbour of `cell` one step along `axis` in direction `dir` (+1 or -1).
  int step(int cell, int axis, int dir) const;
  int spin_count() const { return link_count; }
};

/// Partition of one term family into groups whose members act on disjoint
/// links and corners, so each group can be applied in parallel.
struct SublatticeColoring {
  TermKind kind{};
  std::vector<std::vector<int>> groups;
  int z() const { return static_cast<int>(groups.size()); }
  // group_of[term] = colour index.
  std::vector<int> group_of;
};

ToricLattice build_toric(int L);
CubicLattice build_cubic(int Lx, int Ly, int Lz);

SublatticeColoring color_sublattices(const ToricLattice& lattice, TermKind kind);
SublatticeColoring color_sublattices(const CubicLattice& lattice, TermKind kind);

// Link sets of a term family, used for validity checks and tests.
std::vector<std::vector<int>> term_links(const ToricLattice& lattice, TermKind kind);
std::vector<std::vector<int>> term_links(const CubicLattice& lattice, TermKind kind);

// True when no two terms of a group share a link.
bool coloring_is_valid(const SublatticeColoring& coloring, const std::vector<std::vector<int>>& links);

}  // namespace rydsim
