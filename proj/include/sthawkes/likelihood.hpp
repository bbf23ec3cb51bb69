#ifndef STHAWKES_LIKELIHOOD_HPP
#define STHAWKES_LIKELIHOOD_HPP

#include <Eigen/Core>
#include <vector>

#include "sthawkes/backend.hpp"
#include "sthawkes/types.hpp"

namespace hawkes {

// Log-likelihood of an event set under one parameter vector.
//
// valid == false means some per-event rate underflowed to <= 0 (or went
// non-finite): logLik is -inf and the draw should be treated as rejected.
// This is a data/parameter regime outcome, not an error; invalid *arguments*
// throw instead.
struct LikelihoodResult {
  double logLik = -std::numeric_limits<double>::infinity();
  bool valid = false;
  Eigen::VectorXd perEvent;  // per-event terms; empty unless requested
};

LikelihoodResult logLikelihood(const EventSet& events, const Params& params,
                               const Backend& backend,
                               bool keepPerEvent = false);

// Elementwise identical to repeated logLikelihood calls.
std::vector<LikelihoodResult> logLikelihoodBatch(
    const EventSet& events, const std::vector<Params>& paramsList,
    const Backend& backend, bool keepPerEvent = false);

}  // namespace hawkes

#endif  // STHAWKES_LIKELIHOOD_HPP
