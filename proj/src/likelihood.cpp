#include "sthawkes/likelihood.hpp"

#include <atomic>
#include <cmath>

#include "sthawkes/kernels.hpp"

namespace hawkes {

LikelihoodResult logLikelihood(const EventSet& events, const Params& params,
                               const Backend& backend, bool keepPerEvent) {
  params.validate();
  backend.validate();

  const Index n = events.size();
  const double windowEnd = events.windowEnd();

  // Compensator terms are O(N) and stay outside the pairwise loops.
  Eigen::VectorXd lambdaBar(n);
  for (Index i = 0; i < n; ++i) {
    lambdaBar[i] = compensatorTerm(events.event(i), windowEnd, params);
  }

  LikelihoodResult result;
  if (keepPerEvent) result.perEvent.setZero(n);

  std::atomic<bool> degenerate{false};
  const double mu0 = params.mu0;
  double* perEvent = keepPerEvent ? result.perEvent.data() : nullptr;

  auto spec = makePairReduceSpec<2>(
      HawkesPairTerm(params),
      [&lambdaBar, &degenerate, mu0, perEvent](
          Index tgt, const std::array<double, 2>& sums) {
        const double lambda = mu0 * sums[0] + sums[1];
        if (!(lambda > 0.0) || !std::isfinite(lambda)) {
          degenerate.store(true, std::memory_order_relaxed);
          return 0.0;
        }
        const double term = std::log(lambda) - lambdaBar[tgt];
        if (perEvent != nullptr) perEvent[tgt] = term;
        return term;
      });

  const double total = pairReduce(events, spec, backend);

  if (degenerate.load(std::memory_order_relaxed) || !std::isfinite(total)) {
    result.valid = false;
    result.logLik = -std::numeric_limits<double>::infinity();
  } else {
    result.valid = true;
    result.logLik = total;
  }
  return result;
}

std::vector<LikelihoodResult> logLikelihoodBatch(
    const EventSet& events, const std::vector<Params>& paramsList,
    const Backend& backend, bool keepPerEvent) {
  if (paramsList.empty()) {
    throw std::invalid_argument("logLikelihoodBatch: empty parameter list");
  }
  std::vector<LikelihoodResult> results;
  results.reserve(paramsList.size());
  for (size_t i = 0; i < paramsList.size(); ++i) {
    try {
      results.push_back(
          logLikelihood(events, paramsList[i], backend, keepPerEvent));
    } catch (const std::exception& e) {
      throw std::invalid_argument("logLikelihoodBatch: entry " +
                                  std::to_string(i) + ": " + e.what());
    }
  }
  return results;
}

}  // namespace hawkes
