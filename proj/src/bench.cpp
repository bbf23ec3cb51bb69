#include "sthawkes/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sthawkes/likelihood.hpp"

namespace hawkes {

TimingRecord timeLikelihood(const EventSet& events, const Params& params,
                            const Backend& backend, int repeats,
                            int warmups) {
  if (repeats < 3) {
    throw std::invalid_argument("timeLikelihood: repeats must be >= 3");
  }
  if (warmups < 1) {
    throw std::invalid_argument("timeLikelihood: warmups must be >= 1");
  }

  for (int i = 0; i < warmups; ++i) {
    (void)logLikelihood(events, params, backend);
  }

  std::vector<double> seconds;
  seconds.reserve(static_cast<size_t>(repeats));
  double reference = 0.0;
  for (int i = 0; i < repeats; ++i) {
    const auto start = std::chrono::steady_clock::now();
    const LikelihoodResult r = logLikelihood(events, params, backend);
    const auto stop = std::chrono::steady_clock::now();
    seconds.push_back(std::chrono::duration<double>(stop - start).count());
    if (i == 0) {
      reference = r.logLik;
    } else if (r.logLik != reference) {
      throw std::runtime_error(
          "timeLikelihood: result drift across repeats on backend " +
          backend.label());
    }
  }

  std::vector<double> sorted = seconds;
  std::sort(sorted.begin(), sorted.end());
  const size_t mid = sorted.size() / 2;
  const double median = sorted.size() % 2 == 1
                            ? sorted[mid]
                            : 0.5 * (sorted[mid - 1] + sorted[mid]);

  return {backend.label(), events.size(), repeats,  warmups,
          median,          sorted.front(), hardwareDescriptor()};
}

std::string hardwareDescriptor() {
  std::string model = "unknown-cpu";
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpuinfo, line)) {
    const auto pos = line.find("model name");
    if (pos != std::string::npos) {
      const auto colon = line.find(':');
      if (colon != std::string::npos && colon + 2 <= line.size()) {
        model = line.substr(colon + 2);
      }
      break;
    }
  }
  return model + " (" + std::to_string(std::thread::hardware_concurrency()) +
         " hw threads)";
}

std::string formatTimingTable(const std::vector<TimingRecord>& records) {
  std::ostringstream os;
  os << "n\tbackend\trepeats\twarmups\tmedian_s\tmin_s\tspeedup_vs_serial\t"
        "hardware\n";
  // Serial medians per size, for the speedup column.
  auto serialMedian = [&records](Index n) -> double {
    for (const auto& r : records) {
      if (r.n == n && r.backend == "serial") return r.medianSeconds;
    }
    return 0.0;
  };
  char buf[64];
  for (const auto& r : records) {
    os << r.n << '\t' << r.backend << '\t' << r.repeats << '\t' << r.warmups;
    std::snprintf(buf, sizeof buf, "\t%.6g\t%.6g", r.medianSeconds,
                  r.minSeconds);
    os << buf;
    const double base = serialMedian(r.n);
    if (base > 0.0 && r.medianSeconds > 0.0) {
      std::snprintf(buf, sizeof buf, "\t%.3g", base / r.medianSeconds);
      os << buf;
    } else {
      os << "\t-";
    }
    os << '\t' << r.hardware << '\n';
  }
  return os.str();
}

}  // namespace hawkes
