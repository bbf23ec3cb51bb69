#ifndef STHAWKES_BENCH_HPP
#define STHAWKES_BENCH_HPP

#include <string>
#include <vector>

#include "sthawkes/backend.hpp"
#include "sthawkes/types.hpp"

namespace hawkes {

struct TimingRecord {
  std::string backend;
  Index n = 0;
  int repeats = 0;
  int warmups = 0;
  double medianSeconds = 0.0;
  double minSeconds = 0.0;
  std::string hardware;
};

// Times repeated logLikelihood evaluations: `warmups` untimed runs, then
// `repeats` timed ones (median and min reported). All repeats must return
// bitwise-identical log-likelihoods; any drift is a hard failure.
TimingRecord timeLikelihood(const EventSet& events, const Params& params,
                            const Backend& backend, int repeats, int warmups);

// Short provenance string: CPU model and logical core count.
std::string hardwareDescriptor();

std::string formatTimingTable(const std::vector<TimingRecord>& records);

}  // namespace hawkes

#endif  // STHAWKES_BENCH_HPP
