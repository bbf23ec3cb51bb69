#ifndef STHAWKES_EXCITATION_HPP
#define STHAWKES_EXCITATION_HPP

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "sthawkes/backend.hpp"
#include "sthawkes/types.hpp"

namespace hawkes {

// Per-event decomposition of the rate into background (mu) and
// self-excitatory (xi) components, with pi = xi / (mu + xi).
struct ExcitationVector {
  Eigen::VectorXd pi;
  Eigen::VectorXd mu;
  Eigen::VectorXd xi;
};

ExcitationVector excitationProbabilities(const EventSet& events,
                                         const Params& params,
                                         const Backend& backend);

struct PosteriorExcitationOptions {
  // Evenly thin the draw list down to at most this many draws.
  Index thinTo = 1000;
  // Retain the per-draw matrix in memory only when kept * N fits this cap.
  Index memoryCapEntries = 100'000'000;
  // Optional streaming sink: one line per retained draw (see io docs).
  std::optional<std::string> dumpPath;
};

// Posterior summary of pi over a set of parameter draws.
struct PosteriorExcitation {
  Eigen::VectorXd meanPi;              // length N
  Eigen::MatrixXd perDraw;             // kept x N; 0x0 when over the cap
  std::vector<Index> drawIndices;      // indices retained from `draws`
};

PosteriorExcitation posteriorExcitation(
    const EventSet& events, const std::vector<Params>& draws,
    const Backend& backend, const PosteriorExcitationOptions& options = {});

// Evenly spaced thinning indices: j -> floor(j * total / kept).
std::vector<Index> thinIndices(Index total, Index keep);

}  // namespace hawkes

#endif  // STHAWKES_EXCITATION_HPP
