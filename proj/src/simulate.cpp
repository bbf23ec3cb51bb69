#include "sthawkes/simulate.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace hawkes {

SimTruth simulateClusterProcess(const Params& params, const SimWindow& window,
                                double backgroundRatePerArea, Rng& rng) {
  params.validate();
  window.validate();
  if (!(params.theta < 1.0)) {
    throw std::invalid_argument(
        "simulateClusterProcess: theta must be < 1 (subcritical)");
  }
  if (!(backgroundRatePerArea > 0.0)) {
    throw std::invalid_argument(
        "simulateClusterProcess: background rate must be > 0");
  }

  std::vector<double> x, y, t;
  std::vector<Index> parent;  // -1 = immigrant, else 0-based creation index

  const long immigrants =
      rng.poisson(backgroundRatePerArea * window.area() * window.tEnd);
  for (long i = 0; i < immigrants; ++i) {
    x.push_back(rng.uniform(window.xmin, window.xmax));
    y.push_back(rng.uniform(window.ymin, window.ymax));
    t.push_back(rng.uniform(0.0, window.tEnd));
    parent.push_back(-1);
  }

  // Breadth-first cascade in creation order; offspring join the queue.
  for (size_t i = 0; i < t.size(); ++i) {
    const long offspring = rng.poisson(params.theta);
    for (long c = 0; c < offspring; ++c) {
      const double dt = rng.exponential(params.omega);
      const double dx = params.h * rng.normal();
      const double dy = params.h * rng.normal();
      const double ct = t[i] + dt;
      if (ct >= window.tEnd) continue;
      x.push_back(x[i] + dx);
      y.push_back(y[i] + dy);
      t.push_back(ct);
      parent.push_back(static_cast<Index>(i));
    }
  }

  const Index n = static_cast<Index>(t.size());
  if (n == 0) {
    throw std::runtime_error(
        "simulateClusterProcess: no events generated; increase window or "
        "background rate");
  }

  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&t](Index a, Index b) {
    return t[static_cast<size_t>(a)] < t[static_cast<size_t>(b)];
  });
  std::vector<Index> newPos(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) newPos[static_cast<size_t>(order[i])] = i;

  Eigen::ArrayXd sx(n), sy(n), st(n);
  Eigen::VectorXi sp(n);
  for (Index i = 0; i < n; ++i) {
    const size_t src = static_cast<size_t>(order[static_cast<size_t>(i)]);
    sx[i] = x[src];
    sy[i] = y[src];
    st[i] = t[src];
    const Index p = parent[src];
    sp[i] = p < 0 ? 0 : static_cast<int>(newPos[static_cast<size_t>(p)]) + 1;
  }

  SimTruth truth{EventSet(std::move(sx), std::move(sy), std::move(st),
                          window.tEnd),
                 std::move(sp), params};
  return truth;
}

EventSet generateBenchmarkCloud(Index n, const SimWindow& window, Rng& rng) {
  window.validate();
  if (n < 1) {
    throw std::invalid_argument("generateBenchmarkCloud: n must be >= 1");
  }
  Eigen::ArrayXd x(n), y(n), t(n);
  for (Index i = 0; i < n; ++i) {
    x[i] = rng.uniform(window.xmin, window.xmax);
    y[i] = rng.uniform(window.ymin, window.ymax);
    t[i] = rng.uniform(0.0, window.tEnd);
  }
  return EventSet::sortedByTime(x, y, t, window.tEnd);
}

}  // namespace hawkes
