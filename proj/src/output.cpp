#include "rydsim/output.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rydsim {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256_hex: digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[digest[k] >> 4];
    out += hex[digest[k] & 15];
  }
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trajectories_csv(const std::vector<TrajectoryRecord>& records) {
  std::ostringstream out;
  out << "# schema=" << kCsvSchema << "\ntrajectory_id,sweep,time_s,observable_name,value\n";
  for (const auto& r : records) {
    for (const auto& s : r.samples) {
      for (std::size_t o = 0; o < r.names.size(); ++o) {
        out << r.id << ',' << s.sweep << ',' << format_number(s.time_s) << ',' << r.names[o] << ','
            << format_number(s.values[o]) << '\n';
      }
    }
  }
  return out.str();
}

std::string aggregate_csv(const AggregateSeries& series) {
  std::ostringstream out;
  out << "# schema=" << kCsvSchema << "\nsweep,time_s,observable_name,mean,sem,stddev,trajectories\n";
  for (std::size_t k = 0; k < series.sweeps.size(); ++k) {
    for (std::size_t o = 0; o < series.names.size(); ++o) {
      out << series.sweeps[k] << ',' << format_number(series.times[k]) << ',' << series.names[o] << ','
          << format_number(series.mean[k][o]) << ',' << format_number(series.sem[k][o]) << ','
          << format_number(series.stddev[k][o]) << ',' << series.trajectories << '\n';
    }
  }
  return out.str();
}

std::string ramp_csv(const std::vector<RampPoint>& points) {
  std::ostringstream out;
  out << "# schema=" << kCsvSchema << "\nphi_scale,step,time,V_over_J,energy,exact_energy\n";
  for (const auto& p : points) {
    out << format_number(p.phi_scale) << ',' << p.step << ',' << format_number(p.time) << ','
        << format_number(p.V_over_J) << ',' << format_number(p.energy) << ',' << format_number(p.exact_energy)
        << '\n';
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed for " + path);
}

}  // namespace rydsim
