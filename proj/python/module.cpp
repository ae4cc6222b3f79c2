#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rydsim/channels.hpp"
#include "rydsim/config.hpp"
#include "rydsim/experiments.hpp"
#include "rydsim/gates.hpp"
#include "rydsim/gauge.hpp"
#include "rydsim/lattice.hpp"
#include "rydsim/output.hpp"
#include "rydsim/pauli.hpp"
#include "rydsim/rydphys.hpp"
#include "rydsim/statevec.hpp"
#include "rydsim/toric.hpp"
#include "rydsim/verify.hpp"

namespace py = pybind11;
using namespace rydsim;

namespace {

py::array_t<cplx> amplitudes_array(const StateVector& s) {
  return py::array_t<cplx>(static_cast<py::ssize_t>(s.dim()), s.amplitudes().data());
}

StateVector state_from_array(py::array_t<cplx, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 1) throw std::invalid_argument("amplitudes must be one-dimensional");
  return StateVector::from_amplitudes(std::vector<cplx>(a.data(), a.data() + a.size()));
}

// Toric plaquette jump on local sites 0..3 with the flip on `flip_site`.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> kraus_pair_toric(double theta, int flip_site) {
  const std::vector<int> sites{0, 1, 2, 3};
  JumpOperatorSpec spec;
  spec.region = Region::uniform(sites, Pauli::X);
  spec.flip_letter = Pauli::Z;
  spec.theta = theta;
  return kraus_pair(spec, flip_site);
}

py::dict toric_dict(int L) {
  const ToricLattice t = build_toric(L);
  py::dict d;
  d["L"] = t.L;
  d["links"] = t.link_count;
  d["plaquettes"] = t.plaquettes;
  d["vertices"] = t.vertices;
  d["plaquette_colors"] = color_sublattices(t, TermKind::ToricPlaquette).groups;
  return d;
}

py::dict cubic_dict(int Lx, int Ly, int Lz) {
  const CubicLattice c = build_cubic(Lx, Ly, Lz);
  py::dict d;
  d["dims"] = c.dims;
  d["links"] = c.link_count;
  d["octahedra"] = c.octahedra;
  d["plaquettes"] = c.plaquettes;
  return d;
}

std::vector<std::size_t> dimer_sector_sizes(int Lx, int Ly, int Lz) {
  const DimerSectors s = dimer_sectors(build_cubic(Lx, Ly, Lz));
  std::vector<std::size_t> sizes;
  for (const auto& sector : s.sectors) sizes.push_back(sector.size());
  return sizes;
}

// Runs one CLI experiment in memory: {file name: content} plus the summary.
py::dict run_experiment(const RunConfig& config) {
  config.validate();
  ExperimentResult r;
  {
    py::gil_scoped_release release;
    if (config.experiment == "toric-cool") r = cmd_toric_cool(config);
    else if (config.experiment == "gauge-cool") r = cmd_gauge_cool(config);
    else if (config.experiment == "gauge-ramp") r = cmd_gauge_ramp(config);
    else if (config.experiment == "ryd-params") r = cmd_ryd_params(config);
    else throw std::invalid_argument("unknown experiment: " + config.experiment);
  }
  py::dict files;
  for (const auto& f : r.files) files[py::str(f.name)] = f.content;
  py::dict out;
  out["files"] = files;
  out["summary"] = r.summary_json;
  return out;
}

}  // namespace

PYBIND11_MODULE(_rydsim, m) {
  m.doc() = "Dense state-vector simulator for stroboscopic Rydberg-atom quantum simulation";

  py::enum_<Pauli>(m, "Pauli")
      .value("I", Pauli::I)
      .value("X", Pauli::X)
      .value("Y", Pauli::Y)
      .value("Z", Pauli::Z);

  py::class_<PauliString>(m, "PauliString")
      .def(py::init<>())
      .def_static("parse", &PauliString::parse)
      .def_static("single", &PauliString::single)
      .def_static("uniform",
                  [](const std::vector<int>& sites, Pauli letter, int phase) {
                    return PauliString::uniform(sites, letter, phase);
                  },
                  py::arg("sites"), py::arg("letter"), py::arg("phase") = 0)
      .def_property_readonly("phase", &PauliString::phase)
      .def_property_readonly("support", &PauliString::support)
      .def("is_hermitian", &PauliString::is_hermitian)
      .def("adjoint", &PauliString::adjoint)
      .def("matrix", [](const PauliString& p, int n) { return to_matrix(p, n); })
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def("__str__", &PauliString::to_string)
      .def("__repr__", [](const PauliString& p) { return "PauliString('" + p.to_string() + "')"; });
  m.def("commutes", &commutes);

  py::class_<StateVector>(m, "StateVector")
      .def(py::init<int, std::uint64_t>(), py::arg("n"), py::arg("basis_state") = 0)
      .def_static("from_amplitudes", &state_from_array)
      .def_property_readonly("qubits", &StateVector::qubits)
      .def_property_readonly("amplitudes", &amplitudes_array)
      .def("norm_squared", &StateVector::norm_squared)
      .def("apply_single_qubit", &StateVector::apply_single_qubit)
      .def("apply_pauli_string", &StateVector::apply_pauli_string)
      .def("apply_pauli_rotation", &StateVector::apply_pauli_rotation, py::arg("P"), py::arg("angle"),
           py::arg("control") = -1)
      .def("probability_one", &StateVector::probability_one)
      .def("project", &StateVector::project)
      .def("expectation", py::overload_cast<const PauliString&>(&StateVector::expectation, py::const_))
      .def("inner", &StateVector::inner);

  m.def("control_pulse", &control_pulse, py::arg("alpha") = kPi / 2);
  m.def(
      "coherent_step",
      [](StateVector& s, int control, const std::vector<int>& sites, Pauli letter, double phi) {
        coherent_step(s, control, Region::uniform(sites, letter), phi);
      },
      py::arg("state"), py::arg("control"), py::arg("sites"), py::arg("letter"), py::arg("phi"),
      "exp(i phi prod_j W_j) through the control qubit, which must start in |0>");
  m.def("kraus_pair_toric", &kraus_pair_toric, py::arg("theta"), py::arg("flip_site") = 0);

  m.def("build_toric", &toric_dict);
  m.def("build_cubic", &cubic_dict);
  m.def("dimer_sector_sizes", &dimer_sector_sizes);

  m.def("gate_time", &gate_time, py::arg("delta"), py::arg("omega_p"));
  m.def("blockade_radius", &blockade_radius, py::arg("delta"), py::arg("omega_c"), py::arg("c6"));
  m.def("c6_for_radius", &c6_for_radius, py::arg("delta"), py::arg("omega_c"), py::arg("r"));
  m.def("sweep_time", &sweep_time, py::arg("z"), py::arg("gates_per_term"), py::arg("t_gate"),
        py::arg("overhead") = 1.2);
  m.def("energy_scales", [](double phi, double theta, double tau) {
    const EnergyScales e = energy_scales(phi, theta, tau);
    return py::dict(py::arg("energy_rad_per_s") = e.energy_rad_per_s, py::arg("energy_joule") = e.energy_joule,
                    py::arg("rate_per_s") = e.rate_per_s);
  });
  m.def("effective_temperature", &effective_temperature, py::arg("n"), py::arg("E0") = 1.0);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_static("parse", &RunConfig::parse)
      .def("serialize", &RunConfig::serialize)
      .def("set", &RunConfig::set)
      .def("validate", &RunConfig::validate)
      .def_readwrite("experiment", &RunConfig::experiment)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("workers", &RunConfig::workers)
      .def(py::self == py::self);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("what", &CheckResult::what)
      .def_readonly("measured", &CheckResult::measured)
      .def_readonly("lower", &CheckResult::lower)
      .def_readonly("upper", &CheckResult::upper)
      .def_readonly("passed", &CheckResult::passed);
  m.def(
      "run_verification",
      [](bool include_engine, std::uint64_t seed) {
        VerifyOptions o;
        o.include_engine = include_engine;
        o.seed = seed;
        py::gil_scoped_release release;
        return run_verification(o);
      },
      py::arg("include_engine") = false, py::arg("seed") = 1);
  m.def("run_experiment", &run_experiment);
  m.def("sha256_hex", &sha256_hex);
}
