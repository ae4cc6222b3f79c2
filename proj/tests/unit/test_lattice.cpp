#include <doctest.h>

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "rydsim/gauge.hpp"
#include "rydsim/lattice.hpp"

using namespace rydsim;

TEST_CASE("lattice: toric counts and incidence") {
  for (int L : {2, 3, 4, 5}) {
    const ToricLattice t = build_toric(L);
    CHECK(t.link_count == 2 * L * L);
    CHECK(t.plaquettes.size() == std::size_t(L * L));
    CHECK(t.vertices.size() == std::size_t(L * L));
    std::vector<int> in_plaq(t.link_count), in_vert(t.link_count);
    for (const auto& p : t.plaquettes)
      for (int l : p) ++in_plaq[l];
    for (const auto& v : t.vertices)
      for (int l : v) ++in_vert[l];
    CHECK(std::all_of(in_plaq.begin(), in_plaq.end(), [](int c) { return c == 2; }));
    CHECK(std::all_of(in_vert.begin(), in_vert.end(), [](int c) { return c == 2; }));
    for (int l = 0; l < t.link_count; ++l) {
      for (int p : t.link_plaquettes(l)) CHECK(std::count(t.plaquettes[p].begin(), t.plaquettes[p].end(), l) == 1);
      for (int s : t.link_vertices(l)) CHECK(std::count(t.vertices[s].begin(), t.vertices[s].end(), l) == 1);
    }
  }
}

TEST_CASE("lattice: toric stabilizers commute") {
  const ToricLattice t = build_toric(3);
  for (int p = 0; p < 9; ++p)
    for (int s = 0; s < 9; ++s) CHECK(commutes(t.plaquette_stabilizer(p), t.vertex_stabilizer(s)));
}

TEST_CASE("lattice: colourings are valid partitions") {
  for (int L : {2, 3, 4}) {
    const ToricLattice t = build_toric(L);
    for (TermKind k : {TermKind::ToricPlaquette, TermKind::ToricVertex}) {
      const auto c = color_sublattices(t, k);
      CHECK(coloring_is_valid(c, term_links(t, k)));
      std::size_t total = 0;
      for (const auto& g : c.groups) total += g.size();
      CHECK(total == std::size_t(L * L));
      if (L % 2 == 0) CHECK(c.z() <= 4);
    }
  }
  const CubicLattice cube = build_cubic(2, 2, 2);
  for (TermKind k : {TermKind::Octahedron, TermKind::CubicPlaquette})
    CHECK(coloring_is_valid(color_sublattices(cube, k), term_links(cube, k)));
}

TEST_CASE("lattice: cubic steps wrap and redirect size-1 axes") {
  const CubicLattice c = build_cubic(3, 2, 2);
  CHECK(c.link_count == 36);
  for (int cell = 0; cell < c.cell_count(); ++cell)
    for (int a = 0; a < 3; ++a) CHECK(c.step(c.step(cell, a, +1), a, -1) == cell);
  CHECK(c.step(c.cell(2, 0, 0), 0, +1) == c.cell(0, 0, 0));

  const CubicLattice flat = build_cubic(2, 2, 1);
  CHECK(flat.link_count == 12);
  CHECK(flat.octahedra.size() == 4);
  for (int cell = 0; cell < 4; ++cell) CHECK(flat.step(cell, 2, +1) == flat.step(cell, 0, +1));
  for (const auto& o : flat.octahedra) CHECK(std::set<int>(o.begin(), o.end()).size() == 6);
}

TEST_CASE("lattice: (2,2,1) dimer coverings against brute force") {
  const CubicLattice c = build_cubic(2, 2, 1);
  // Oracle: every 12-bit state with exactly three up spins (bit 0) per octahedron.
  std::vector<std::uint64_t> brute;
  for (std::uint64_t s = 0; s < (1u << 12); ++s) {
    bool ok = true;
    for (const auto& o : c.octahedra) {
      int down = 0;
      for (int l : o) down += int((s >> l) & 1);
      ok = ok && down == 3;
    }
    if (ok) brute.push_back(s);
  }
  CHECK(enumerate_dimer_coverings(c) == brute);
  CHECK(brute.size() == 176);

  const DimerSectors sec = dimer_sectors(c);
  std::size_t total = 0;
  for (const auto& s : sec.sectors) total += s.size();
  CHECK(total == brute.size());
  CHECK(sec.sectors.size() == 67);
  CHECK(sec.sectors[0].size() == 24);
  for (std::size_t k = 1; k < sec.sectors.size(); ++k) CHECK(sec.sectors[k - 1].size() >= sec.sectors[k].size());
  // A flippable plaquette maps a covering to another covering of the same sector.
  for (std::uint64_t s : sec.sectors[0])
    for (const auto& p : c.plaquettes)
      if (plaquette_flippable(s, p)) {
        std::uint64_t t = s;
        for (int l : p) t ^= std::uint64_t{1} << l;
        CHECK(sec.sector_of(t) == 0);
      }
}
