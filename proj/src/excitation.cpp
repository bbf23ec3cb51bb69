#include "sthawkes/excitation.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "sthawkes/kernels.hpp"

namespace hawkes {

ExcitationVector excitationProbabilities(const EventSet& events,
                                         const Params& params,
                                         const Backend& backend) {
  params.validate();
  backend.validate();

  const Index n = events.size();
  ExcitationVector out;
  out.pi.resize(n);
  out.mu.resize(n);
  out.xi.resize(n);

  std::atomic<bool> degenerate{false};
  const double mu0 = params.mu0;
  double* pi = out.pi.data();
  double* mu = out.mu.data();
  double* xi = out.xi.data();

  auto spec = makePairReduceSpec<2>(
      HawkesPairTerm(params),
      [pi, mu, xi, mu0, &degenerate](Index tgt,
                                     const std::array<double, 2>& sums) {
        const double m = mu0 * sums[0];
        const double s = sums[1];
        mu[tgt] = m;
        xi[tgt] = s;
        // The n' = n background self-term keeps m > 0 for sane parameters;
        // flag the pathological underflow case instead of emitting NaN.
        const double lambda = m + s;
        if (!(lambda > 0.0) || !std::isfinite(lambda)) {
          degenerate.store(true, std::memory_order_relaxed);
          pi[tgt] = 0.0;
          return 0.0;
        }
        pi[tgt] = s / lambda;
        return 0.0;
      });

  pairReduce(events, spec, backend);

  if (degenerate.load(std::memory_order_relaxed)) {
    throw std::runtime_error(
        "excitationProbabilities: per-event rate underflowed to zero");
  }
  return out;
}

std::vector<Index> thinIndices(Index total, Index keep) {
  if (total < 1 || keep < 1) {
    throw std::invalid_argument("thinIndices: need total >= 1 and keep >= 1");
  }
  if (keep > total) keep = total;
  std::vector<Index> idx(static_cast<size_t>(keep));
  for (Index j = 0; j < keep; ++j) {
    idx[static_cast<size_t>(j)] = j * total / keep;
  }
  return idx;
}

PosteriorExcitation posteriorExcitation(
    const EventSet& events, const std::vector<Params>& draws,
    const Backend& backend, const PosteriorExcitationOptions& options) {
  if (draws.empty()) {
    throw std::invalid_argument("posteriorExcitation: no draws");
  }
  if (options.thinTo < 1) {
    throw std::invalid_argument("posteriorExcitation: thinTo must be >= 1");
  }

  const Index n = events.size();
  PosteriorExcitation out;
  out.drawIndices =
      thinIndices(static_cast<Index>(draws.size()), options.thinTo);
  const Index kept = static_cast<Index>(out.drawIndices.size());

  const bool retain = kept * n <= options.memoryCapEntries;
  if (retain) out.perDraw.setZero(kept, n);
  out.meanPi.setZero(n);

  std::ofstream dump;
  if (options.dumpPath) {
    dump.open(*options.dumpPath);
    if (!dump) {
      throw std::runtime_error("posteriorExcitation: cannot open dump file " +
                               *options.dumpPath);
    }
    dump << "# sthawkes pi draws v1, events=" << n << "\n";
  }

  char buf[40];
  for (Index j = 0; j < kept; ++j) {
    const Index drawIdx = out.drawIndices[static_cast<size_t>(j)];
    ExcitationVector ex;
    try {
      ex = excitationProbabilities(events, draws[static_cast<size_t>(drawIdx)],
                                   backend);
    } catch (const std::exception& e) {
      throw std::runtime_error("posteriorExcitation: draw " +
                               std::to_string(drawIdx) + ": " + e.what());
    }
    out.meanPi += ex.pi;
    if (retain) out.perDraw.row(j) = ex.pi.transpose();
    if (dump.is_open()) {
      dump << drawIdx;
      for (Index i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", ex.pi[i]);
        dump << '\t' << buf;
      }
      dump << '\n';
    }
  }
  out.meanPi /= static_cast<double>(kept);

  if (dump.is_open() && !dump) {
    throw std::runtime_error("posteriorExcitation: failed writing dump file");
  }
  return out;
}

}  // namespace hawkes
