#pragma once

#include <vector>

namespace rydsim {

struct MeanSem {
  double mean = 0.0;
  double sem = 0.0;
  int count = 0;
};

MeanSem mean_sem(const std::vector<double>& x);

struct TwoSampleTest {
  double t = 0.0;
  double dof = 0.0;
  double p_value = 1.0;  // two-sided
};

// Welch's unequal-variance t-test. Two constant samples with equal means give
// p = 1; with different means p = 0.
TwoSampleTest welch_t_test(const std::vector<double>& a, const std::vector<double>& b);

// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rydsim
