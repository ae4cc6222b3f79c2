#pragma once

#include <string>
#include <vector>

#include "rydsim/channels.hpp"
#include "rydsim/gauge.hpp"

namespace rydsim {

inline constexpr int kCsvSchema = 1;

std::string sha256_hex(const std::string& bytes);

// "# schema=1" then trajectory_id,sweep,time_s,observable_name,value.
std::string trajectories_csv(const std::vector<TrajectoryRecord>& records);
// "# schema=1" then sweep,time_s,observable_name,mean,sem,stddev,trajectories.
std::string aggregate_csv(const AggregateSeries& series);
// "# schema=1" then phi_scale,step,time,V_over_J,energy,exact_energy.
std::string ramp_csv(const std::vector<RampPoint>& points);

// Number formatting shared by every writer (17 significant digits).
std::string format_number(double v);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace rydsim
