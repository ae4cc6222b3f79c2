#include "rydsim/toric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rydsim {

namespace {

std::vector<int> flatten(const SublatticeColoring& c, int offset) {
  std::vector<int> out;
  for (const auto& g : c.groups) {
    for (int t : g) out.push_back(offset + t);
  }
  return out;
}

}  // namespace

ToricModel make_toric_model(int L) {
  ToricModel m;
  m.lattice = build_toric(L);
  m.plaquette_colors = color_sublattices(m.lattice, TermKind::ToricPlaquette);
  m.vertex_colors = color_sublattices(m.lattice, TermKind::ToricVertex);
  return m;
}

std::vector<JumpOperatorSpec> toric_jump_specs(const ToricLattice& lattice, double theta, FlipSchedule schedule) {
  std::vector<JumpOperatorSpec> out;
  for (const auto& p : lattice.plaquettes) {
    JumpOperatorSpec s;
    s.region = Region::uniform(p, Pauli::X);
    s.flip_letter = Pauli::Z;
    s.theta = theta;
    s.schedule = schedule;
    out.push_back(std::move(s));
  }
  for (const auto& v : lattice.vertices) {
    JumpOperatorSpec s;
    s.region = Region::uniform(v, Pauli::Z);
    s.flip_letter = Pauli::X;
    s.theta = theta;
    s.schedule = schedule;
    out.push_back(std::move(s));
  }
  return out;
}

ModelSpec toric_model_spec(const ToricModel& model) {
  const auto& lat = model.lattice;
  const int np = static_cast<int>(lat.plaquettes.size());
  ModelSpec spec;
  spec.n_system = lat.link_count;
  spec.tau = model.tau;
  spec.error = model.error;
  spec.error_phi = model.phi;
  if (model.coherent) {
    for (int p = 0; p < np; ++p) {
      const auto& ls = lat.plaquettes[p];
      spec.coherent.push_back({OperatorSum{{1.0, lat.plaquette_stabilizer(p)}}, model.phi,
                               std::vector<int>(ls.begin(), ls.end()), "A_p" + std::to_string(p)});
    }
    for (int s = 0; s < lat.vertex_count(); ++s) {
      const auto& ls = lat.vertices[s];
      spec.coherent.push_back({OperatorSum{{1.0, lat.vertex_stabilizer(s)}}, model.phi,
                               std::vector<int>(ls.begin(), ls.end()), "B_s" + std::to_string(s)});
    }
    spec.coherent_order = flatten(model.plaquette_colors, 0);
    const auto vo = flatten(model.vertex_colors, np);
    spec.coherent_order.insert(spec.coherent_order.end(), vo.begin(), vo.end());
  }
  spec.jumps = toric_jump_specs(lat, model.theta, model.schedule);
  spec.jump_order = flatten(model.plaquette_colors, 0);
  const auto vo = flatten(model.vertex_colors, np);
  spec.jump_order.insert(spec.jump_order.end(), vo.begin(), vo.end());
  spec.validate();
  return spec;
}

int AnyonConfig::plaquette_count() const { return std::accumulate(plaquette.begin(), plaquette.end(), 0); }
int AnyonConfig::vertex_count() const { return std::accumulate(vertex.begin(), vertex.end(), 0); }
bool AnyonConfig::even_parity() const { return plaquette_count() % 2 == 0 && vertex_count() % 2 == 0; }

StateVector init_all_down(const ToricLattice& lattice, int extra_qubits) {
  const std::uint64_t all_down = (std::uint64_t{1} << lattice.link_count) - 1;
  return StateVector(lattice.link_count + extra_qubits, all_down);
}

AnyonConfig sample_initial_anyons(const ToricLattice& lattice, Rng& rng) {
  AnyonConfig c;
  const int n = lattice.L * lattice.L;
  c.vertex.assign(n, 0);
  c.plaquette.assign(n, 0);
  // Independent fair bits with the last one fixing even parity.
  int parity = 0;
  for (int p = 0; p + 1 < n; ++p) {
    c.plaquette[p] = static_cast<std::uint8_t>(rng.bits() >> 63);
    parity ^= c.plaquette[p];
  }
  c.plaquette[n - 1] = static_cast<std::uint8_t>(parity);
  return c;
}

double anyon_density(const AnyonConfig& config) {
  const double total = static_cast<double>(config.plaquette.size() + config.vertex.size());
  return (config.plaquette_count() + config.vertex_count()) / total;
}

double anyon_density(const StateVector& state, const ToricLattice& lattice) {
  int negative = 0;
  for (int p = 0; p < static_cast<int>(lattice.plaquettes.size()); ++p) {
    negative += state.expectation(lattice.plaquette_stabilizer(p)) < 0.0;
  }
  for (int s = 0; s < lattice.vertex_count(); ++s) negative += state.expectation(lattice.vertex_stabilizer(s)) < 0.0;
  return negative / static_cast<double>(lattice.plaquettes.size() + lattice.vertices.size());
}

double effective_temperature(double n, double E0) {
  if (!(n > 0.0 && n < 1.0)) throw std::invalid_argument("effective_temperature: density must lie in (0, 1)");
  return -E0 / std::log(n);
}

void walker_sweep(AnyonConfig& config, const ToricModel& model, long sweep, Rng& rng) {
  const auto& lat = model.lattice;
  const int np = static_cast<int>(lat.plaquettes.size());
  auto move_sector = [&](std::vector<std::uint8_t>& occ, const SublatticeColoring& colors, bool plaquettes) {
    for (const auto& group : colors.groups) {
      std::vector<int> order = group;
      for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng.index(k)]);
      for (int cell : order) {
        if (!occ[cell]) continue;
        const auto& links = plaquettes ? lat.plaquettes[cell] : lat.vertices[cell];
        const int term = plaquettes ? cell : np + cell;
        int slot;
        if (model.schedule == FlipSchedule::Random) {
          slot = static_cast<int>(rng.index(4));
        } else {
          slot = static_cast<int>(((sweep + term) % 4 + 4) % 4);
        }
        const int link = links[slot];
        const auto ends = plaquettes ? lat.link_plaquettes(link) : lat.link_vertices(link);
        occ[ends[0]] ^= 1;
        occ[ends[1]] ^= 1;
      }
    }
  };
  move_sector(config.plaquette, model.plaquette_colors, true);
  move_sector(config.vertex, model.vertex_colors, false);
  if (model.p_heat > 0.0) {
    auto heat = [&](std::vector<std::uint8_t>& occ, bool plaquettes) {
      for (int cell = 0; cell < static_cast<int>(occ.size()); ++cell) {
        if (!rng.bernoulli(model.p_heat)) continue;
        const auto& links = plaquettes ? lat.plaquettes[cell] : lat.vertices[cell];
        const int link = links[rng.index(4)];
        const auto ends = plaquettes ? lat.link_plaquettes(link) : lat.link_vertices(link);
        occ[ends[0]] ^= 1;
        occ[ends[1]] ^= 1;
      }
    };
    heat(config.plaquette, true);
    if (model.heat_vertices) heat(config.vertex, false);
  }
}

const char* toric_engine_name(ToricEngine e) { return e == ToricEngine::Walker ? "walker" : "dense"; }

ToricEngine toric_engine_from_name(const std::string& name) {
  if (name == "walker") return ToricEngine::Walker;
  if (name == "dense") return ToricEngine::Dense;
  throw std::invalid_argument("unknown toric engine '" + name + "'");
}

std::vector<TrajectoryRecord> cool_toric(const ToricModel& model, const ToricCoolOptions& options) {
  const auto& lat = model.lattice;
  const int np = static_cast<int>(lat.plaquettes.size());
  const int nv = lat.vertex_count();
  const std::vector<std::string> names{"anyon_density", "plaquette_density", "vertex_density"};

  if (options.engine == ToricEngine::Walker) {
    auto body = [&](int, Rng& rng) {
      TrajectoryRecord rec;
      rec.names = names;
      AnyonConfig c = sample_initial_anyons(lat, rng);
      auto observe = [&](long s) {
        rec.record(s, s * model.tau,
                   {anyon_density(c), c.plaquette_count() / static_cast<double>(np),
                    c.vertex_count() / static_cast<double>(nv)});
      };
      observe(0);
      for (long s = 0; s < options.sweeps; ++s) {
        walker_sweep(c, model, s, rng);
        observe(s + 1);
      }
      return rec;
    };
    return run_trajectories(options.trajectories, options.workers, options.seed, body);
  }

  if (lat.link_count + 1 > kStateCap) throw std::invalid_argument("cool_toric: lattice too large for the dense engine");
  const ModelSpec spec = toric_model_spec(model);
  std::vector<PauliString> stabilizers;
  for (int p = 0; p < np; ++p) stabilizers.push_back(lat.plaquette_stabilizer(p));
  for (int s = 0; s < nv; ++s) stabilizers.push_back(lat.vertex_stabilizer(s));

  auto body = [&](int, Rng& rng) {
    TrajectoryRecord rec;
    rec.names = names;
    StateVector psi = init_all_down(lat, 1);
    auto observe = [&](long s) {
      const auto ev = sample_observables(psi, spec.control(), stabilizers, rng);
      int cp = 0, cv = 0;
      for (int k = 0; k < np; ++k) cp += ev[k] < 0;
      for (int k = 0; k < nv; ++k) cv += ev[np + k] < 0;
      rec.record(s, s * model.tau,
                 {(cp + cv) / static_cast<double>(np + nv), cp / static_cast<double>(np), cv / static_cast<double>(nv)});
    };
    observe(0);
    std::vector<std::pair<int, int>> log;
    for (long s = 0; s < options.sweeps; ++s) {
      log.clear();
      trotter_sweep(psi, spec, s, rng, &log);
      for (const auto& [term, site] : log) rec.jumps.push_back({s, term, site});
      observe(s + 1);
    }
    return rec;
  };
  return run_trajectories(options.trajectories, options.workers, options.seed, body);
}

}  // namespace rydsim
