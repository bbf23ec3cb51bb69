#include "sthawkes/likelihood.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "sthawkes/kernels.hpp"
#include "sthawkes/rng.hpp"
#include "sthawkes/simulate.hpp"

using namespace hawkes;

namespace {

EventSet randomEvents(Index n, std::uint64_t seed) {
  Rng rng(seed);
  SimWindow window{0.0, 4.0, 0.0, 4.0, 60.0};
  return generateBenchmarkCloud(n, window, rng);
}

Params randomParams(Rng& rng) {
  Params p;
  p.mu0 = rng.uniform(0.3, 2.0);
  p.tauX = rng.uniform(0.5, 2.0);
  p.tauT = rng.uniform(2.0, 20.0);
  p.theta = rng.uniform(0.05, 0.8);
  p.omega = rng.uniform(0.3, 3.0);
  p.h = rng.uniform(0.1, 1.0);
  return p;
}

std::vector<Backend> allBackends() {
  return {Backend::serial(),           Backend::vectorized(2),
          Backend::vectorized(4),      Backend::vectorized(8),
          Backend::threaded(4),        Backend::threadedVectorized(4, 4),
          Backend::threadedVectorized(2, 8)};
}

}  // namespace

TEST(LogLikelihood, SingleEventClosedForm) {
  Eigen::ArrayXd x(1), y(1), t(1);
  x << 0.0;
  y << 0.0;
  t << 1.0;
  EventSet one(x, y, t, 1.0);
  Params p;
  p.mu0 = p.tauX = p.tauT = p.theta = p.omega = p.h = 1.0;

  const LikelihoodResult r = logLikelihood(one, p, Backend::serial());
  ASSERT_TRUE(r.valid);
  // log((2pi)^{-3/2}) - (0.5 - Phi(-1)), frozen from the erf-series oracle.
  EXPECT_NEAR(r.logLik, -3.0981603456825612, 1e-13);
  EXPECT_NEAR(r.logLik, oracle::logLikelihood(one, p), 1e-13);
}

TEST(LogLikelihood, ThetaZeroReducesToPureBackground) {
  const EventSet events = randomEvents(40, 11);
  Rng rng(12);
  Params p = randomParams(rng);
  p.theta = 0.0;

  // Manual pure-background evaluation: trigger terms dropped, compensator
  // keeps only the mu0 part.
  double expected = 0.0;
  for (Index i = 0; i < events.size(); ++i) {
    double lambda = 0.0;
    for (Index j = 0; j < events.size(); ++j) {
      lambda +=
          p.mu0 * backgroundPairRate(events.event(i), events.event(j), p);
    }
    const double comp =
        p.mu0 * (normalCdf((events.windowEnd() - events.ts()[i]) / p.tauT) -
                 normalCdf(-events.ts()[i] / p.tauT));
    expected += std::log(lambda) - comp;
  }

  const LikelihoodResult r = logLikelihood(events, p, Backend::serial());
  ASSERT_TRUE(r.valid);
  EXPECT_NEAR(r.logLik, expected, 1e-10 * std::fabs(expected));
}

TEST(LogLikelihood, FiveEventInstanceAcrossBackendsAndOracle) {
  Eigen::ArrayXd x(5), y(5), t(5);
  x << 0.1, 0.9, -0.4, 0.2, 1.1;
  y << -0.2, 0.3, 0.5, 0.9, -0.8;
  t << 0.4, 1.1, 1.9, 3.0, 4.2;
  EventSet events(x, y, t, 5.0);
  Params p;
  p.mu0 = 0.6;
  p.tauX = 0.9;
  p.tauT = 3.0;
  p.theta = 0.5;
  p.omega = 1.1;
  p.h = 0.35;

  const double want = oracle::logLikelihood(events, p);
  const double serial = logLikelihood(events, p, Backend::serial()).logLik;
  const double tv =
      logLikelihood(events, p, Backend::threadedVectorized(4, 4)).logLik;
  EXPECT_NEAR(serial, want, 1e-10 * std::fabs(want));
  EXPECT_NEAR(tv, serial, 1e-10 * std::fabs(serial));
}

TEST(LogLikelihood, MatchesNaiveOracleOnRandomInstances) {
  Rng rng(2024);
  int instance = 0;
  for (Index n : {2, 3, 10, 100}) {
    for (int rep = 0; rep < 8; ++rep) {
      const EventSet events = randomEvents(n, 1000 + instance);
      const Params p = randomParams(rng);
      const double want = oracle::logLikelihood(events, p);
      const double got = logLikelihood(events, p, Backend::serial()).logLik;
      ASSERT_FALSE(std::isnan(want));
      EXPECT_NEAR(got, want, 1e-10 * std::fabs(want))
          << "instance " << instance << " n " << n;
      ++instance;
    }
  }
}

TEST(LogLikelihood, BackendInvariance) {
  const EventSet events = randomEvents(300, 77);
  Rng rng(78);
  const Params p = randomParams(rng);
  const double reference = logLikelihood(events, p, Backend::serial()).logLik;
  for (const Backend& b : allBackends()) {
    const double v = logLikelihood(events, p, b).logLik;
    EXPECT_NEAR(v, reference, 1e-10 * std::fabs(reference)) << b.label();
  }
}

TEST(LogLikelihood, PerEventTermsSumToTotal) {
  const EventSet events = randomEvents(120, 5);
  Rng rng(6);
  const Params p = randomParams(rng);
  const LikelihoodResult r =
      logLikelihood(events, p, Backend::threaded(3), /*keepPerEvent=*/true);
  ASSERT_TRUE(r.valid);
  ASSERT_EQ(r.perEvent.size(), events.size());
  EXPECT_NEAR(r.perEvent.sum(), r.logLik, 1e-12 * events.size());

  const LikelihoodResult noKeep = logLikelihood(events, p, Backend::serial());
  EXPECT_EQ(noKeep.perEvent.size(), 0);
}

TEST(LogLikelihood, InvalidParamsThrowDistinctFromUnderflow) {
  const EventSet events = randomEvents(5, 3);
  Params bad;
  bad.omega = -1.0;
  EXPECT_THROW(logLikelihood(events, bad, Backend::serial()),
               std::invalid_argument);
}

TEST(LogLikelihood, UnderflowYieldsInvalidNotThrow) {
  // mu0 at the bottom of the denormal range with enormous bandwidths pushes
  // every rate product below the smallest denormal: lambda == 0.
  Eigen::ArrayXd x(2), y(2), t(2);
  x << 0.0, 1.0;
  y << 0.0, 0.0;
  t << 0.0, 1.0;
  EventSet events(x, y, t);
  Params p;
  p.mu0 = 5e-324;
  p.tauX = 1e120;
  p.tauT = 1e120;
  p.theta = 0.0;
  p.omega = 1.0;
  p.h = 1.0;

  const LikelihoodResult r = logLikelihood(events, p, Backend::serial());
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.logLik, -std::numeric_limits<double>::infinity());
}

TEST(LogLikelihood, SimulatedTruthBeatsScaledTheta) {
  Params truth;
  truth.mu0 = 1.0;
  truth.tauX = 1.6;
  truth.tauT = 14.0;
  truth.theta = 0.3;
  truth.omega = 1.0;
  truth.h = 0.1;

  Rng rng(321);
  SimWindow window{0.0, 10.0, 0.0, 10.0, 250.0};
  const SimTruth sim = simulateClusterProcess(truth, window, 0.07, rng);
  ASSERT_GT(sim.events.size(), 1200);

  const Backend b = Backend::vectorized(4);
  auto at = [&](double theta) {
    Params p = truth;
    p.theta = theta;
    return logLikelihood(sim.events, p, b).logLik;
  };
  const double atTruth = at(truth.theta);
  EXPECT_GT(atTruth, at(truth.theta / 10.0));
  EXPECT_GT(atTruth, at(truth.theta * 10.0));
}

TEST(LogLikelihood, FullTensorQuadratureAgreesOnTinyInstance) {
  Eigen::ArrayXd x(2), y(2), t(2);
  x << 0.0, 0.6;
  y << 0.1, -0.3;
  t << 0.5, 1.5;
  EventSet events(x, y, t, 2.0);
  Params p;
  p.mu0 = 0.9;
  p.tauX = 1.0;
  p.tauT = 2.0;
  p.theta = 0.35;
  p.omega = 1.2;
  p.h = 0.5;

  double closed = 0.0;
  for (Index i = 0; i < events.size(); ++i) {
    closed += compensatorTerm(events.event(i), events.windowEnd(), p);
  }
  const double quad3d = oracle::quadLambdaTotal3d(events, p, events.windowEnd());
  EXPECT_NEAR(quad3d, closed, 2e-6 * closed);
}

TEST(LogLikelihoodBatch, MatchesSingleCallsBitwise) {
  const EventSet events = randomEvents(100, 55);
  Rng rng(56);
  std::vector<Params> list{randomParams(rng), randomParams(rng),
                           randomParams(rng)};
  list.push_back(list[0]);  // duplicate entry

  const Backend b = Backend::threadedVectorized(2, 4);
  const auto batch = logLikelihoodBatch(events, list, b);
  ASSERT_EQ(batch.size(), list.size());
  for (size_t i = 0; i < list.size(); ++i) {
    const LikelihoodResult single = logLikelihood(events, list[i], b);
    EXPECT_EQ(std::bit_cast<std::uint64_t>(batch[i].logLik),
              std::bit_cast<std::uint64_t>(single.logLik));
  }
  EXPECT_EQ(std::bit_cast<std::uint64_t>(batch[0].logLik),
            std::bit_cast<std::uint64_t>(batch[3].logLik));

  const auto one = logLikelihoodBatch(events, {list[1]}, b);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].logLik, logLikelihood(events, list[1], b).logLik);

  EXPECT_THROW(logLikelihoodBatch(events, {}, b), std::invalid_argument);
}
