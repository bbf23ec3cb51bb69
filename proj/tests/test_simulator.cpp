#include "sthawkes/simulate.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace hawkes;

namespace {

Params clusterParams(double theta, double omega, double h) {
  Params p;
  p.mu0 = 1.0;
  p.tauX = 1.6;
  p.tauT = 14.0;
  p.theta = theta;
  p.omega = omega;
  p.h = h;
  return p;
}

// One-sample Kolmogorov-Smirnov statistic against an exponential CDF.
double ksExponential(std::vector<double> samples, double rate) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    const double f = 1.0 - std::exp(-rate * samples[i]);
    const double hi = (static_cast<double>(i) + 1.0) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

}  // namespace

TEST(ClusterProcess, RejectsSupercriticalTheta) {
  Rng rng(1);
  SimWindow w{0.0, 5.0, 0.0, 5.0, 10.0};
  EXPECT_THROW(
      simulateClusterProcess(clusterParams(1.0, 1.0, 0.1), w, 1.0, rng),
      std::invalid_argument);
  EXPECT_THROW(
      simulateClusterProcess(clusterParams(1.5, 1.0, 0.1), w, 1.0, rng),
      std::invalid_argument);
}

TEST(ClusterProcess, ThetaZeroYieldsOnlyImmigrants) {
  Rng rng(2);
  SimWindow w{0.0, 5.0, 0.0, 5.0, 40.0};
  const double rate = 0.2;  // mean immigrants = 0.2 * 25 * 40 = 200
  const SimTruth sim =
      simulateClusterProcess(clusterParams(0.0, 1.0, 0.1), w, rate, rng);
  for (Index i = 0; i < sim.events.size(); ++i) {
    EXPECT_EQ(sim.parentIndex[i], 0);
  }
  // Poisson(200): stay within 5 standard deviations.
  EXPECT_NEAR(static_cast<double>(sim.events.size()), 200.0,
              5.0 * std::sqrt(200.0));
}

TEST(ClusterProcess, OutputSortedAndInsideTemporalWindow) {
  Rng rng(3);
  SimWindow w{-2.0, 2.0, -1.0, 3.0, 25.0};
  const SimTruth sim =
      simulateClusterProcess(clusterParams(0.4, 1.5, 0.2), w, 2.0, rng);
  ASSERT_GE(sim.events.size(), 1);
  EXPECT_EQ(sim.events.windowEnd(), w.tEnd);
  for (Index i = 0; i < sim.events.size(); ++i) {
    EXPECT_GE(sim.events.ts()[i], 0.0);
    EXPECT_LT(sim.events.ts()[i], w.tEnd);
    if (i > 0) EXPECT_LE(sim.events.ts()[i - 1], sim.events.ts()[i]);
  }
}

TEST(ClusterProcess, ParentStrictlyPrecedesChild) {
  Rng rng(4);
  SimWindow w{0.0, 6.0, 0.0, 6.0, 60.0};
  const SimTruth sim =
      simulateClusterProcess(clusterParams(0.5, 1.0, 0.15), w, 0.5, rng);
  for (Index i = 0; i < sim.events.size(); ++i) {
    const int p = sim.parentIndex[i];
    ASSERT_GE(p, 0);
    ASSERT_LE(p, static_cast<int>(sim.events.size()));
    if (p > 0) {
      EXPECT_LT(sim.events.ts()[p - 1], sim.events.ts()[i]);
    }
  }
}

TEST(ClusterProcess, MeanOffspringMatchesTheta) {
  const double theta = 0.15;
  const double omega = 2.0;
  Rng rng(5);
  SimWindow w{0.0, 30.0, 0.0, 30.0, 300.0};
  // ~110k immigrants; descendants push the total higher.
  const SimTruth sim =
      simulateClusterProcess(clusterParams(theta, omega, 0.1), w, 0.4, rng);
  ASSERT_GT(sim.events.size(), 100000);

  // Out-count per event, restricted to parents far from the right edge so
  // temporal truncation of offspring is negligible (< e^-40).
  const double cutoff = w.tEnd - 20.0 / omega;
  std::vector<long> children(static_cast<size_t>(sim.events.size()), 0);
  for (Index i = 0; i < sim.events.size(); ++i) {
    const int p = sim.parentIndex[i];
    if (p > 0) ++children[static_cast<size_t>(p - 1)];
  }
  double count = 0.0, total = 0.0;
  for (Index i = 0; i < sim.events.size(); ++i) {
    if (sim.events.ts()[i] < cutoff) {
      total += 1.0;
      count += static_cast<double>(children[static_cast<size_t>(i)]);
    }
  }
  const double meanOffspring = count / total;
  const double se = std::sqrt(theta / total);
  EXPECT_NEAR(meanOffspring, theta, 3.0 * se);
}

TEST(ClusterProcess, TriggeredFractionApproachesTheta) {
  const double theta = 0.1;
  Rng rng(6);
  SimWindow w{0.0, 20.0, 0.0, 20.0, 2000.0};
  const SimTruth sim =
      simulateClusterProcess(clusterParams(theta, 2.0, 0.1), w, 0.15, rng);
  ASSERT_GT(sim.events.size(), 100000);
  double triggered = 0.0;
  for (Index i = 0; i < sim.events.size(); ++i) {
    if (sim.parentIndex[i] != 0) triggered += 1.0;
  }
  const double frac = triggered / static_cast<double>(sim.events.size());
  EXPECT_NEAR(frac, theta, 0.01);
}

TEST(ClusterProcess, OffspringGapsPassKsAgainstExponential) {
  const double omega = 1.7;
  Rng rng(7);
  SimWindow w{0.0, 20.0, 0.0, 20.0, 400.0};
  const SimTruth sim =
      simulateClusterProcess(clusterParams(0.3, omega, 0.1), w, 0.25, rng);

  // Collect child-parent gaps for parents far from the window edge, where
  // censoring is negligible.
  std::vector<double> gaps;
  const double cutoff = w.tEnd - 30.0 / omega;
  for (Index i = 0; i < sim.events.size(); ++i) {
    const int p = sim.parentIndex[i];
    if (p > 0 && sim.events.ts()[p - 1] < cutoff) {
      gaps.push_back(sim.events.ts()[i] - sim.events.ts()[p - 1]);
    }
  }
  ASSERT_GE(gaps.size(), 10000u);
  if (gaps.size() > 10000u) gaps.resize(10000);
  const double d = ksExponential(gaps, omega);
  // alpha = 0.01 critical value: 1.628 / sqrt(n).
  EXPECT_LT(d * std::sqrt(static_cast<double>(gaps.size())), 1.628);
}

TEST(ClusterProcess, ReproducibleBitwise) {
  SimWindow w{0.0, 8.0, 0.0, 8.0, 50.0};
  const Params p = clusterParams(0.35, 1.2, 0.2);
  Rng rngA(99), rngB(99);
  const SimTruth a = simulateClusterProcess(p, w, 0.5, rngA);
  const SimTruth b = simulateClusterProcess(p, w, 0.5, rngB);
  ASSERT_EQ(a.events.size(), b.events.size());
  for (Index i = 0; i < a.events.size(); ++i) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a.events.xs()[i]),
              std::bit_cast<std::uint64_t>(b.events.xs()[i]));
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a.events.ts()[i]),
              std::bit_cast<std::uint64_t>(b.events.ts()[i]));
    EXPECT_EQ(a.parentIndex[i], b.parentIndex[i]);
  }
}

TEST(BenchmarkCloud, SingleEventInsideWindow) {
  Rng rng(10);
  SimWindow w{1.0, 2.0, 3.0, 4.0, 5.0};
  const EventSet e = generateBenchmarkCloud(1, w, rng);
  ASSERT_EQ(e.size(), 1);
  EXPECT_GE(e.xs()[0], w.xmin);
  EXPECT_LE(e.xs()[0], w.xmax);
  EXPECT_GE(e.ys()[0], w.ymin);
  EXPECT_LE(e.ys()[0], w.ymax);
  EXPECT_GE(e.ts()[0], 0.0);
  EXPECT_LE(e.ts()[0], w.tEnd);
}

TEST(BenchmarkCloud, BoundsAndOrdering) {
  Rng rng(11);
  SimWindow w{0.0, 3.0, -1.0, 1.0, 10.0};
  const EventSet e = generateBenchmarkCloud(1000, w, rng);
  ASSERT_EQ(e.size(), 1000);
  for (Index i = 0; i < e.size(); ++i) {
    EXPECT_GE(e.xs()[i], w.xmin);
    EXPECT_LE(e.xs()[i], w.xmax);
    EXPECT_GE(e.ys()[i], w.ymin);
    EXPECT_LE(e.ys()[i], w.ymax);
    if (i > 0) EXPECT_LE(e.ts()[i - 1], e.ts()[i]);
  }
}

TEST(BenchmarkCloud, SameSeedSameCloud) {
  SimWindow w{0.0, 3.0, 0.0, 3.0, 10.0};
  Rng rngA(123), rngB(123);
  const EventSet a = generateBenchmarkCloud(257, w, rngA);
  const EventSet b = generateBenchmarkCloud(257, w, rngB);
  for (Index i = 0; i < a.size(); ++i) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a.xs()[i]),
              std::bit_cast<std::uint64_t>(b.xs()[i]));
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a.ts()[i]),
              std::bit_cast<std::uint64_t>(b.ts()[i]));
  }
}

TEST(SimWindow, Validation) {
  EXPECT_THROW((SimWindow{1.0, 1.0, 0.0, 1.0, 5.0}).validate(),
               std::invalid_argument);
  EXPECT_THROW((SimWindow{0.0, 1.0, 0.0, 1.0, 0.0}).validate(),
               std::invalid_argument);
  EXPECT_NO_THROW((SimWindow{0.0, 1.0, 0.0, 1.0, 5.0}).validate());
}
