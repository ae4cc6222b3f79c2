#include "rydsim/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace rydsim {

namespace {

using FieldPtr = std::variant<int RunConfig::*, std::uint64_t RunConfig::*, double RunConfig::*, bool RunConfig::*,
                              std::string RunConfig::*>;

struct Field {
  const char* section;
  const char* key;
  FieldPtr ptr;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> table{
      {"run", "experiment", &RunConfig::experiment},
      {"run", "seed", &RunConfig::seed},
      {"run", "workers", &RunConfig::workers},
      {"run", "out", &RunConfig::out},
      {"toric", "L", &RunConfig::toric_L},
      {"toric", "sweeps", &RunConfig::toric_sweeps},
      {"toric", "trajectories", &RunConfig::toric_trajectories},
      {"toric", "engine", &RunConfig::toric_engine},
      {"toric", "phi", &RunConfig::toric_phi},
      {"toric", "theta", &RunConfig::toric_theta},
      {"toric", "tau", &RunConfig::toric_tau},
      {"toric", "schedule", &RunConfig::toric_schedule},
      {"toric", "errors", &RunConfig::toric_errors},
      {"toric", "q", &RunConfig::toric_q},
      {"toric", "q_letter", &RunConfig::toric_q_letter},
      {"toric", "q_spec", &RunConfig::toric_q_spec},
      {"toric", "p_heat", &RunConfig::toric_p_heat},
      {"toric", "heat_vertices", &RunConfig::toric_heat_vertices},
      {"toric", "coherent", &RunConfig::toric_coherent},
      {"toric", "write_trajectories", &RunConfig::toric_write_trajectories},
      {"gauge", "Lx", &RunConfig::gauge_Lx},
      {"gauge", "Ly", &RunConfig::gauge_Ly},
      {"gauge", "Lz", &RunConfig::gauge_Lz},
      {"gauge", "U", &RunConfig::gauge_U},
      {"gauge", "J", &RunConfig::gauge_J},
      {"gauge", "V", &RunConfig::gauge_V},
      {"gauge", "theta_constraint", &RunConfig::gauge_theta_constraint},
      {"gauge", "theta_rk", &RunConfig::gauge_theta_rk},
      {"gauge", "sweeps", &RunConfig::gauge_sweeps},
      {"gauge", "constraint_sweeps", &RunConfig::gauge_constraint_sweeps},
      {"gauge", "trajectories", &RunConfig::gauge_trajectories},
      {"gauge", "initial", &RunConfig::gauge_initial},
      {"gauge", "tau", &RunConfig::gauge_tau},
      {"ramp", "phi_scales", &RunConfig::ramp_phi_scales},
      {"ramp", "total_time", &RunConfig::ramp_total_time},
      {"ryd", "omega_p", &RunConfig::ryd_omega_p},
      {"ryd", "omega_c", &RunConfig::ryd_omega_c},
      {"ryd", "delta", &RunConfig::ryd_delta},
      {"ryd", "c6", &RunConfig::ryd_c6},
      {"ryd", "tau", &RunConfig::ryd_tau},
      {"ryd", "z", &RunConfig::ryd_z},
      {"ryd", "gates_per_term", &RunConfig::ryd_gates_per_term},
      {"ryd", "overhead", &RunConfig::ryd_overhead},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
T parse_number(const std::string& text, const std::string& key) {
  T v{};
  const char* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || p != end) throw std::invalid_argument("config: bad value '" + text + "' for " + key);
  return v;
}

bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw std::invalid_argument("config: bad boolean '" + text + "' for " + key);
}

const Field& find_field(const std::string& section, const std::string& key) {
  for (const auto& f : fields()) {
    if (section == f.section && key == f.key) return f;
  }
  throw std::invalid_argument("config: unknown key " + section + "." + key);
}

void assign(RunConfig& c, const Field& f, const std::string& value) {
  const std::string name = std::string(f.section) + "." + f.key;
  std::visit(
      [&](auto ptr) {
        using T = std::remove_reference_t<decltype(c.*ptr)>;
        if constexpr (std::is_same_v<T, std::string>) {
          c.*ptr = value;
        } else if constexpr (std::is_same_v<T, bool>) {
          c.*ptr = parse_bool(value, name);
        } else {
          c.*ptr = parse_number<T>(value, name);
        }
      },
      f.ptr);
}

std::string render(const RunConfig& c, const Field& f) {
  return std::visit(
      [&](auto ptr) -> std::string {
        using T = std::remove_cvref_t<decltype(c.*ptr)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return c.*ptr;
        } else if constexpr (std::is_same_v<T, bool>) {
          return c.*ptr ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(c.*ptr);
        } else {
          return std::to_string(c.*ptr);
        }
      },
      f.ptr);
}

}  // namespace

std::string RunConfig::serialize() const {
  std::ostringstream out;
  std::string section;
  for (const auto& f : fields()) {
    if (section != f.section) {
      if (!section.empty()) out << '\n';
      section = f.section;
      out << '[' << section << "]\n";
    }
    out << f.key << " = " << render(*this, f) << '\n';
  }
  return out.str();
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw std::invalid_argument("config: bad section header on line " + std::to_string(lineno));
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config: expected key = value on line " + std::to_string(lineno));
    if (section.empty()) throw std::invalid_argument("config: key outside a section on line " + std::to_string(lineno));
    assign(c, find_field(section, trim(t.substr(0, eq))), trim(t.substr(eq + 1)));
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void RunConfig::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw std::invalid_argument("config: override must look like section.key=value, got '" + assignment + "'");
  }
  assign(*this, find_field(trim(assignment.substr(0, dot)), trim(assignment.substr(dot + 1, eq - dot - 1))),
         trim(assignment.substr(eq + 1)));
}

std::vector<double> RunConfig::phi_scales() const {
  std::vector<double> out;
  std::istringstream in(ramp_phi_scales);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(parse_number<double>(tok, "ramp.phi_scales"));
  }
  return out;
}

void RunConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("config: ") + what);
  };
  require(workers >= 0, "run.workers must be >= 0");
  require(toric_L >= 2, "toric.L must be >= 2");
  require(toric_sweeps >= 1 && toric_trajectories >= 1, "toric sweeps and trajectories must be positive");
  require(toric_engine == "dense" || toric_engine == "walker", "toric.engine must be dense or walker");
  require(toric_schedule == "random" || toric_schedule == "round_robin", "toric.schedule must be random or round_robin");
  require(toric_tau > 0.0, "toric.tau must be positive");
  require(toric_q >= 0.0, "toric.q must be non-negative");
  require(toric_q_letter == "X" || toric_q_letter == "Y" || toric_q_letter == "Z", "toric.q_letter must be X, Y or Z");
  require(toric_p_heat <= 1.0, "toric.p_heat must be <= 1");
  require(gauge_Lx >= 1 && gauge_Ly >= 1 && gauge_Lz >= 1, "gauge dims must be positive");
  require(gauge_sweeps >= 1 && gauge_trajectories >= 1, "gauge sweeps and trajectories must be positive");
  require(gauge_constraint_sweeps >= 0 && gauge_constraint_sweeps <= gauge_sweeps,
          "gauge.constraint_sweeps must lie in [0, sweeps]");
  require(gauge_initial == "all_down" || gauge_initial == "covering", "gauge.initial must be all_down or covering");
  require(gauge_tau > 0.0, "gauge.tau must be positive");
  require(ramp_total_time > 0.0, "ramp.total_time must be positive");
  const auto scales = phi_scales();
  require(!scales.empty(), "ramp.phi_scales must list at least one value");
  for (double s : scales) require(s > 0.0, "ramp.phi_scales must be positive");
  require(ryd_omega_p > 0.0 && ryd_omega_c > 0.0 && ryd_delta > 0.0, "ryd frequencies must be positive");
  require(ryd_c6 >= 0.0 && ryd_tau >= 0.0, "ryd.c6 and ryd.tau must be non-negative");
  require(ryd_z >= 1 && ryd_gates_per_term >= 1 && ryd_overhead > 0.0, "ryd counts and overhead must be positive");
}

std::vector<std::string> RunConfig::keys() {
  std::vector<std::string> out;
  for (const auto& f : fields()) out.push_back(std::string(f.section) + "." + f.key);
  return out;
}

}  // namespace rydsim
