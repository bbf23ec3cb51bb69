#ifndef STHAWKES_SAMPLER_HPP
#define STHAWKES_SAMPLER_HPP

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sthawkes/backend.hpp"
#include "sthawkes/rng.hpp"
#include "sthawkes/types.hpp"

namespace hawkes {

// The four free parameters, in sampling order. h is sampled as hInv = 1/h,
// which is the scale the prior is placed on.
enum FreeParam : int { kMu0 = 0, kTheta = 1, kOmega = 2, kHInv = 3 };
inline constexpr int kFreeParams = 4;
inline constexpr std::array<const char*, kFreeParams> kFreeParamNames = {
    "mu0", "theta", "omega", "hInv"};

// Normal(mean, sd) truncated below at 0, per coordinate.
struct PriorSpec {
  struct TruncNormal {
    double mean = 0.0;
    double sd = 1.0;
  };
  std::array<TruncNormal, kFreeParams> coord = {
      TruncNormal{0.0, 1.0},    // mu0
      TruncNormal{0.0, 10.0},   // theta
      TruncNormal{0.0, 10.0},   // omega
      TruncNormal{0.0, 10.0},   // hInv
  };

  void validate() const {
    for (const auto& c : coord) {
      if (!(c.sd > 0.0) || !std::isfinite(c.sd) || !std::isfinite(c.mean)) {
        throw std::invalid_argument("PriorSpec: sd must be positive finite");
      }
    }
  }
};

struct SamplerConfig {
  long iterations = 10000;
  long burnIn = 1000;
  std::uint64_t seed = 1;
  double targetAcceptance = 0.44;
  // (mu0, theta, omega, hInv)
  Eigen::Vector4d initialTheta{1.0, 0.1, 1.0, 1.0};
  Eigen::Vector4d initialProposalSd{1.0, 1.0, 1.0, 1.0};
  double initialAdaptBound = 5.0;
  bool adapt = true;
  // Fixed background bandwidths (canonical km / days).
  double tauX = 1.6;
  double tauT = 14.0;
  Backend backend = Backend::serial();
  int chainCount = 1;
  bool keepPerEvent = false;

  void validate() const;
};

// Mutable algorithmic state of one chain: current position, proposal SDs,
// and the per-coordinate adaptation bookkeeping.
struct SamplerState {
  Eigen::Vector4d theta;
  Eigen::Vector4d v;             // proposal SDs
  Eigen::Vector4d b;             // adaptation interval bounds (real)
  Eigen::Array4i l;              // proposals since last adaptation
  Eigen::Array4i a;              // acceptances since last adaptation
  double cachedLogPost = -std::numeric_limits<double>::infinity();
};

struct AdaptationEvent {
  long step;      // 0-based step at which the interval completed
  int coord;
  double vAfter;
  double bAfter;
};

struct StepOutcome {
  int coord;
  bool accepted;
};

// One chain of posterior draws with full bookkeeping; reproducible bitwise
// from (seed snapshot, data, backend settings) on a fixed build.
struct Chain {
  Eigen::MatrixXd draws;                    // iterations x 4
  Eigen::VectorXd logPost;                  // iterations
  std::vector<std::int8_t> scannedCoord;    // iterations
  std::vector<std::int8_t> accepted;        // iterations
  std::vector<AdaptationEvent> adaptations;
  SamplerConfig config;                     // snapshot
  PriorSpec priors;                         // snapshot
  std::uint64_t chainSeed = 0;
  int chainIndex = 0;
  Index eventCount = 0;

  long burnIn() const { return config.burnIn; }
  // Post-burn-in draws for one free parameter.
  Eigen::VectorXd retained(int coord) const {
    return draws.col(coord).segment(config.burnIn,
                                    draws.rows() - config.burnIn);
  }
};

// Assembles the six-parameter vector from a sampling-space position.
Params paramsFromState(const Eigen::Vector4d& theta,
                       const SamplerConfig& config);

// Sum of log truncated-normal densities; -inf if any coordinate <= 0.
double priorLogDensity(const Eigen::Vector4d& theta, const PriorSpec& priors);

struct Proposal {
  double value;
  // log q(theta | theta*) - log q(theta* | theta): the Gaussian kernels
  // cancel, the truncation masses Phi(./v) do not.
  double logHastingsCorrection;
};

Proposal proposeCoordinate(const SamplerState& state, int d, Rng& rng);

// One random-scan Metropolis-Hastings transition; exactly one likelihood
// evaluation (the current value is cached). Returns the scanned coordinate
// and whether the proposal was accepted.
StepOutcome mhStep(SamplerState& state, const EventSet& events,
                   const PriorSpec& priors, const SamplerConfig& config,
                   Rng& rng);

// Robbins-Monro-style interval adaptation: after ceil(b_d) proposals of
// coordinate d, rescale v_d by clamp((a_d/ceil(b_d))/target, 0.5, 2) and
// grow the interval b_d <- b_d^1.1. Returns true when an interval completed.
bool adaptStep(SamplerState& state, int d, const SamplerConfig& config);

Chain runChain(const EventSet& events, const PriorSpec& priors,
               const SamplerConfig& config, int chainIndex = 0);

// chainCount independent chains with seeds derived per chain index.
std::vector<Chain> runChains(const EventSet& events, const PriorSpec& priors,
                             const SamplerConfig& config);

}  // namespace hawkes

#endif  // STHAWKES_SAMPLER_HPP
