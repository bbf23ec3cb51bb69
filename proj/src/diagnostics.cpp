#include "sthawkes/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hawkes {

EssResult effectiveSampleSize(const Eigen::VectorXd& samples) {
  const Index n = samples.size();
  if (n < 10) {
    throw std::invalid_argument("effectiveSampleSize: need >= 10 samples");
  }
  const double mean = samples.mean();
  const Eigen::VectorXd centered = samples.array() - mean;
  const double var = centered.squaredNorm() / static_cast<double>(n);
  if (!(var > 0.0)) {
    return {static_cast<double>(n), true};
  }

  auto rho = [&](Index lag) {
    double acc = 0.0;
    for (Index i = 0; i + lag < n; ++i) acc += centered[i] * centered[i + lag];
    return acc / (static_cast<double>(n) * var);
  };

  // Sum paired autocorrelations Gamma_m = rho(2m) + rho(2m+1) while positive.
  double tau = -1.0;  // the m = 0 pair contributes rho(0) = 1 twice below
  for (Index m = 0; 2 * m + 1 < n; ++m) {
    const double gamma = rho(2 * m) + rho(2 * m + 1);
    if (gamma <= 0.0) break;
    tau += 2.0 * gamma;
  }
  if (tau < 1.0) tau = 1.0;
  double ess = static_cast<double>(n) / tau;
  if (ess > static_cast<double>(n)) ess = static_cast<double>(n);
  return {ess, false};
}

std::pair<double, double> hpdInterval(const Eigen::VectorXd& samples,
                                      double mass) {
  const Index n = samples.size();
  if (n < 20) {
    throw std::invalid_argument("hpdInterval: need >= 20 samples");
  }
  if (!(mass > 0.0 && mass < 1.0)) {
    throw std::invalid_argument("hpdInterval: mass must lie in (0, 1)");
  }
  std::vector<double> sorted(samples.data(), samples.data() + n);
  std::sort(sorted.begin(), sorted.end());

  Index k = static_cast<Index>(
      std::ceil(mass * static_cast<double>(n)));  // samples to cover
  if (k < 2) k = 2;
  if (k > n) k = n;

  Index best = 0;
  double bestWidth = sorted[static_cast<size_t>(k - 1)] - sorted[0];
  for (Index i = 1; i + k <= n; ++i) {
    const double width = sorted[static_cast<size_t>(i + k - 1)] -
                         sorted[static_cast<size_t>(i)];
    if (width < bestWidth) {
      bestWidth = width;
      best = i;
    }
  }
  return {sorted[static_cast<size_t>(best)],
          sorted[static_cast<size_t>(best + k - 1)]};
}

TimeCurve smoothProbabilitiesOverTime(const EventSet& events,
                                      const Eigen::VectorXd& meanPi,
                                      double bandwidth, int gridSize) {
  if (meanPi.size() != events.size()) {
    throw std::invalid_argument(
        "smoothProbabilitiesOverTime: length mismatch");
  }
  if (!(bandwidth > 0.0)) {
    throw std::invalid_argument(
        "smoothProbabilitiesOverTime: bandwidth must be > 0");
  }
  if (gridSize < 2) {
    throw std::invalid_argument(
        "smoothProbabilitiesOverTime: gridSize must be >= 2");
  }

  const Index n = events.size();
  const double t0 = events.ts()[0];
  const double t1 = events.ts()[n - 1];
  const double span = t1 - t0;  // 0 collapses the grid onto t0

  TimeCurve curve;
  curve.time.resize(gridSize);
  curve.value.resize(gridSize);

  for (int g = 0; g < gridSize; ++g) {
    const double tg =
        t0 + span * static_cast<double>(g) / static_cast<double>(gridSize - 1);
    curve.time[g] = tg;
    // Factor out the largest kernel weight so the weight sum never
    // underflows even when the grid point is far from all events.
    double minE = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) {
      const double z = (tg - events.ts()[i]) / bandwidth;
      minE = std::min(minE, 0.5 * z * z);
    }
    double wsum = 0.0, vsum = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double z = (tg - events.ts()[i]) / bandwidth;
      const double w = std::exp(minE - 0.5 * z * z);
      wsum += w;
      vsum += w * meanPi[i];
    }
    curve.value[g] = vsum / wsum;
  }
  return curve;
}

namespace {

struct Series {
  std::string name;
  std::string unit;
  // One transformed draw vector per chain (post burn-in).
  std::vector<Eigen::VectorXd> perChain;
};

ParameterSummary summarizeSeries(const Series& series, double hpdMass) {
  Index total = 0;
  for (const auto& v : series.perChain) total += v.size();
  Eigen::VectorXd pooled(total);
  Index at = 0;
  double essSum = 0.0;
  bool degenerate = false;
  for (const auto& v : series.perChain) {
    pooled.segment(at, v.size()) = v;
    at += v.size();
    const EssResult e = effectiveSampleSize(v);
    essSum += e.ess;
    degenerate = degenerate || e.degenerateVariance;
  }
  const double mean = pooled.mean();
  const double sd = std::sqrt((pooled.array() - mean).square().sum() /
                              std::max<double>(1.0, pooled.size() - 1.0));
  const auto [lo, hi] = hpdInterval(pooled, hpdMass);
  return {series.name, series.unit, mean, sd, lo, hi, essSum, degenerate};
}

}  // namespace

std::vector<ParameterSummary> summarizeChains(const std::vector<Chain>& chains,
                                              double hpdMass) {
  if (chains.empty()) {
    throw std::invalid_argument("summarizeChains: no chains");
  }
  std::vector<Series> series(4);
  series[0] = {"mu0", "", {}};
  series[1] = {"theta", "", {}};
  series[2] = {"h", "m", {}};
  series[3] = {"1/omega", "min", {}};

  for (const auto& chain : chains) {
    series[0].perChain.push_back(chain.retained(kMu0));
    series[1].perChain.push_back(chain.retained(kTheta));
    series[2].perChain.push_back(Eigen::VectorXd(
        units::kmToMeters(1.0) * chain.retained(kHInv).cwiseInverse()));
    series[3].perChain.push_back(Eigen::VectorXd(
        units::daysToMinutes(1.0) * chain.retained(kOmega).cwiseInverse()));
  }

  std::vector<ParameterSummary> rows;
  rows.reserve(series.size());
  for (const auto& s : series) rows.push_back(summarizeSeries(s, hpdMass));
  return rows;
}

std::string formatSummaryTable(const std::vector<ParameterSummary>& rows) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-5s %12s %12s %12s %12s %10s\n",
                "parameter", "unit", "mean", "sd", "hpd2.5", "hpd97.5", "ess");
  os << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line,
                  "%-10s %-5s %12.6g %12.6g %12.6g %12.6g %10.1f\n",
                  r.name.c_str(), r.unit.empty() ? "-" : r.unit.c_str(),
                  r.mean, r.sd, r.hpdLo, r.hpdHi, r.ess);
    os << line;
  }
  return os.str();
}

}  // namespace hawkes
