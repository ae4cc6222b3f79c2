#include "rydsim/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <stdexcept>

namespace rydsim {

MeanSem mean_sem(const std::vector<double>& x) {
  MeanSem r;
  r.count = static_cast<int>(x.size());
  if (x.empty()) return r;
  double s = 0.0;
  for (double v : x) s += v;
  r.mean = s / x.size();
  if (x.size() < 2) return r;
  double ss = 0.0;
  for (double v : x) ss += (v - r.mean) * (v - r.mean);
  r.sem = std::sqrt(ss / (x.size() - 1) / x.size());
  return r;
}

TwoSampleTest welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("welch_t_test: need two values per sample");
  const MeanSem ma = mean_sem(a);
  const MeanSem mb = mean_sem(b);
  const double va = ma.sem * ma.sem;
  const double vb = mb.sem * mb.sem;
  TwoSampleTest r;
  const double diff = ma.mean - mb.mean;
  if (va + vb == 0.0) {
    r.p_value = diff == 0.0 ? 1.0 : 0.0;
    r.t = diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
    return r;
  }
  r.t = diff / std::sqrt(va + vb);
  r.dof = (va + vb) * (va + vb) / (va * va / (a.size() - 1) + vb * vb / (b.size() - 1));
  const boost::math::students_t dist(r.dof);
  r.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(r.t)));
  return r;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("log_log_slope: need matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace rydsim
