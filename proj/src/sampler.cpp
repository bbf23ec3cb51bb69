#include "sthawkes/sampler.hpp"

#include <cmath>

#include "sthawkes/kernels.hpp"
#include "sthawkes/likelihood.hpp"

namespace hawkes {

void SamplerConfig::validate() const {
  if (iterations < 1) {
    throw std::invalid_argument("SamplerConfig: iterations must be >= 1");
  }
  if (burnIn < 0 || burnIn >= iterations) {
    throw std::invalid_argument(
        "SamplerConfig: burnIn must be in [0, iterations)");
  }
  if (!(targetAcceptance > 0.0 && targetAcceptance < 1.0)) {
    throw std::invalid_argument(
        "SamplerConfig: targetAcceptance must lie in (0, 1)");
  }
  if ((initialTheta.array() <= 0.0).any() ||
      !initialTheta.allFinite()) {
    throw std::invalid_argument("SamplerConfig: initialTheta must be > 0");
  }
  if ((initialProposalSd.array() <= 0.0).any()) {
    throw std::invalid_argument("SamplerConfig: proposal SDs must be > 0");
  }
  if (!(initialAdaptBound >= 2.0)) {
    throw std::invalid_argument("SamplerConfig: initialAdaptBound too small");
  }
  if (!(tauX > 0.0) || !(tauT > 0.0)) {
    throw std::invalid_argument("SamplerConfig: tauX and tauT must be > 0");
  }
  if (chainCount < 1) {
    throw std::invalid_argument("SamplerConfig: chainCount must be >= 1");
  }
  backend.validate();
}

Params paramsFromState(const Eigen::Vector4d& theta,
                       const SamplerConfig& config) {
  Params p;
  p.mu0 = theta[kMu0];
  p.theta = theta[kTheta];
  p.omega = theta[kOmega];
  p.h = 1.0 / theta[kHInv];
  p.tauX = config.tauX;
  p.tauT = config.tauT;
  return p;
}

double priorLogDensity(const Eigen::Vector4d& theta, const PriorSpec& priors) {
  double total = 0.0;
  for (int d = 0; d < kFreeParams; ++d) {
    const double x = theta[d];
    if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
    const auto& c = priors.coord[static_cast<size_t>(d)];
    const double z = (x - c.mean) / c.sd;
    // log N(x; m, sd) - log P(X > 0)
    total += -0.5 * z * z - std::log(c.sd) + std::log(kInvSqrt2Pi) -
             std::log1p(-normalCdf(-c.mean / c.sd));
  }
  return total;
}

Proposal proposeCoordinate(const SamplerState& state, int d, Rng& rng) {
  const double current = state.theta[d];
  const double sd = state.v[d];
  // Rejection against the positive half-axis; acceptance probability is
  // Phi(current/sd) >= 1/2 since current > 0.
  double proposal;
  do {
    proposal = current + sd * rng.normal();
  } while (!(proposal > 0.0));
  const double correction = std::log(normalCdf(current / sd)) -
                            std::log(normalCdf(proposal / sd));
  return {proposal, correction};
}

namespace {

double logPosterior(const Eigen::Vector4d& theta, const EventSet& events,
                    const PriorSpec& priors, const SamplerConfig& config) {
  const double lp = priorLogDensity(theta, priors);
  if (!std::isfinite(lp)) return -std::numeric_limits<double>::infinity();
  const LikelihoodResult lik =
      logLikelihood(events, paramsFromState(theta, config), config.backend);
  if (!lik.valid) return -std::numeric_limits<double>::infinity();
  return lik.logLik + lp;
}

}  // namespace

StepOutcome mhStep(SamplerState& state, const EventSet& events,
                   const PriorSpec& priors, const SamplerConfig& config,
                   Rng& rng) {
  const int d = rng.uniformInt(kFreeParams);
  const Proposal prop = proposeCoordinate(state, d, rng);

  Eigen::Vector4d candidate = state.theta;
  candidate[d] = prop.value;
  const double candidateLogPost =
      logPosterior(candidate, events, priors, config);

  const double logRatio =
      candidateLogPost - state.cachedLogPost + prop.logHastingsCorrection;
  const double u = rng.uniform();
  const bool accept = std::log(u) < logRatio;
  if (accept) {
    state.theta = candidate;
    state.cachedLogPost = candidateLogPost;
    state.a[d] += 1;
  }
  return {d, accept};
}

bool adaptStep(SamplerState& state, int d, const SamplerConfig& config) {
  state.l[d] += 1;
  const double bound = std::ceil(state.b[d]);
  if (static_cast<double>(state.l[d]) < bound) return false;

  const double rate = static_cast<double>(state.a[d]) / bound;
  double r = rate / config.targetAcceptance;
  if (r > 2.0) r = 2.0;
  if (r < 0.5) r = 0.5;
  state.v[d] *= r;
  state.b[d] = std::pow(state.b[d], 1.1);
  state.l[d] = 0;
  state.a[d] = 0;
  return true;
}

Chain runChain(const EventSet& events, const PriorSpec& priors,
               const SamplerConfig& config, int chainIndex) {
  config.validate();
  priors.validate();

  Chain chain;
  chain.config = config;
  chain.priors = priors;
  chain.chainIndex = chainIndex;
  chain.chainSeed = deriveSeed(config.seed, static_cast<std::uint64_t>(chainIndex));
  chain.eventCount = events.size();

  const long s = config.iterations;
  chain.draws.resize(s, kFreeParams);
  chain.logPost.resize(s);
  chain.scannedCoord.resize(static_cast<size_t>(s));
  chain.accepted.resize(static_cast<size_t>(s));

  Rng rng(chain.chainSeed);

  SamplerState state;
  state.theta = config.initialTheta;
  state.v = config.initialProposalSd;
  state.b.setConstant(config.initialAdaptBound);
  state.l.setZero();
  state.a.setZero();
  state.cachedLogPost = logPosterior(state.theta, events, priors, config);

  for (long i = 0; i < s; ++i) {
    const StepOutcome out = mhStep(state, events, priors, config, rng);
    if (config.adapt && adaptStep(state, out.coord, config)) {
      chain.adaptations.push_back(
          {i, out.coord, state.v[out.coord], state.b[out.coord]});
    }
    chain.draws.row(i) = state.theta.transpose();
    chain.logPost[i] = state.cachedLogPost;
    chain.scannedCoord[static_cast<size_t>(i)] =
        static_cast<std::int8_t>(out.coord);
    chain.accepted[static_cast<size_t>(i)] = out.accepted ? 1 : 0;
  }
  return chain;
}

std::vector<Chain> runChains(const EventSet& events, const PriorSpec& priors,
                             const SamplerConfig& config) {
  config.validate();
  std::vector<Chain> chains;
  chains.reserve(static_cast<size_t>(config.chainCount));
  for (int c = 0; c < config.chainCount; ++c) {
    chains.push_back(runChain(events, priors, config, c));
  }
  return chains;
}

}  // namespace hawkes
