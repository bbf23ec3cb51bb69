#ifndef STHAWKES_DIAGNOSTICS_HPP
#define STHAWKES_DIAGNOSTICS_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "sthawkes/sampler.hpp"
#include "sthawkes/types.hpp"

namespace hawkes {

struct EssResult {
  double ess = 0.0;
  // Set for (numerically) constant input, where autocorrelation is
  // undefined; ess is then the sample count.
  bool degenerateVariance = false;
};

// Effective sample size via Geyer's initial-positive-sequence truncation of
// the autocorrelation sum. Requires length >= 10; result lies in (0, S].
EssResult effectiveSampleSize(const Eigen::VectorXd& samples);

// Shortest contiguous interval covering ceil(mass * S) sorted samples.
// Requires length >= 20 and mass in (0, 1).
std::pair<double, double> hpdInterval(const Eigen::VectorXd& samples,
                                      double mass = 0.95);

struct TimeCurve {
  Eigen::VectorXd time;
  Eigen::VectorXd value;
};

// Nadaraya-Watson smoothing of per-event values over event time with a
// Gaussian kernel, evaluated on a uniform grid across the data range.
TimeCurve smoothProbabilitiesOverTime(const EventSet& events,
                                      const Eigen::VectorXd& meanPi,
                                      double bandwidth, int gridSize = 512);

// One row of the posterior summary table, in reporting units.
struct ParameterSummary {
  std::string name;
  std::string unit;   // "" when unitless
  double mean = 0.0;
  double sd = 0.0;
  double hpdLo = 0.0;
  double hpdHi = 0.0;
  double ess = 0.0;
  bool degenerate = false;
};

// Pools post-burn-in draws across chains. Reported rows are mu0, theta
// (unitless), h in meters and 1/omega in minutes; ESS is computed per chain
// on the transformed series and summed.
std::vector<ParameterSummary> summarizeChains(const std::vector<Chain>& chains,
                                              double hpdMass = 0.95);

std::string formatSummaryTable(const std::vector<ParameterSummary>& rows);

}  // namespace hawkes

#endif  // STHAWKES_DIAGNOSTICS_HPP
