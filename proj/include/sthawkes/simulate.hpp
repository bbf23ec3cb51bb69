#ifndef STHAWKES_SIMULATE_HPP
#define STHAWKES_SIMULATE_HPP

#include <Eigen/Core>

#include "sthawkes/rng.hpp"
#include "sthawkes/types.hpp"

namespace hawkes {

// Spatial rectangle crossed with the time interval (0, tEnd).
struct SimWindow {
  double xmin = 0.0, xmax = 10.0;
  double ymin = 0.0, ymax = 10.0;
  double tEnd = 100.0;

  double area() const { return (xmax - xmin) * (ymax - ymin); }

  void validate() const {
    if (!(xmax > xmin) || !(ymax > ymin) || !(tEnd > 0.0)) {
      throw std::invalid_argument(
          "SimWindow: need positive area and duration");
    }
  }
};

// Simulated events plus their generative ground truth. parentIndex[i] is 0
// for background immigrants, otherwise the 1-based index (into the sorted
// event list) of the triggering parent.
struct SimTruth {
  EventSet events;
  Eigen::VectorXi parentIndex;
  Params trueParams;
};

// Branching (cluster) construction: immigrants form a homogeneous Poisson
// process of intensity backgroundRatePerArea on the window; every event
// spawns Poisson(theta) offspring displaced Exponential(omega) in time and
// isotropic Gaussian(sd h) in space. Offspring past tEnd are discarded;
// spatial displacements are unrestricted. Requires theta < 1.
//
// Note the homogeneous background deliberately differs from the model's
// kernel-density background estimator, which has no generative reading;
// calibration against simulations treats mu0 as a nuisance parameter.
SimTruth simulateClusterProcess(const Params& params, const SimWindow& window,
                                double backgroundRatePerArea, Rng& rng);

// n events uniform on the window, time-sorted; benchmark input data.
EventSet generateBenchmarkCloud(Index n, const SimWindow& window, Rng& rng);

}  // namespace hawkes

#endif  // STHAWKES_SIMULATE_HPP
