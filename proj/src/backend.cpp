#include "sthawkes/backend.hpp"

#include <algorithm>

namespace hawkes {

std::string Backend::label() const {
  switch (kind) {
    case BackendKind::Serial:
      return "serial";
    case BackendKind::Vectorized:
      return "simd" + std::to_string(laneWidth);
    case BackendKind::Threaded:
      return "threads" + std::to_string(threadCount);
    case BackendKind::ThreadedVectorized:
      return "threads" + std::to_string(threadCount) + "+simd" +
             std::to_string(laneWidth);
  }
  return "unknown";
}

Backend parseBackend(const std::string& kind, int threads, int lanes) {
  if (threads == 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  Backend b;
  if (kind == "serial") {
    b = Backend::serial();
  } else if (kind == "simd") {
    b = Backend::vectorized(lanes);
  } else if (kind == "threads") {
    b = Backend::threaded(threads);
  } else if (kind == "threads+simd") {
    b = Backend::threadedVectorized(threads, lanes);
  } else {
    throw std::invalid_argument(
        "unknown backend '" + kind +
        "' (expected serial|simd|threads|threads+simd)");
  }
  b.validate();
  return b;
}

namespace {

template <int W>
double sumBlock(const double* p, Index begin, Index end) {
  double total = 0.0;
  Index i = begin;
  if constexpr (W > 1) {
    const Index len = end - begin;
    Pack<W> acc = Pack<W>::zero();
    const Index full = begin + len - len % W;
    for (; i < full; i += W) acc += Pack<W>::load(p + i);
    total = acc.sum();
  }
  for (; i < end; ++i) total += p[i];
  return total;
}

template <int W>
double reduceAllRun(std::span<const double> values, int threads) {
  const Index n = static_cast<Index>(values.size());
  if (threads <= 1) return sumBlock<W>(values.data(), 0, n);

  const Index chunk = n / threads;
  std::vector<double> partials(static_cast<size_t>(threads), 0.0);
  {
    std::vector<std::jthread> workers;
    workers.reserve(static_cast<size_t>(threads - 1));
    for (int w = 1; w < threads; ++w) {
      const Index begin = static_cast<Index>(w) * chunk;
      const Index end = (w == threads - 1) ? n : begin + chunk;
      workers.emplace_back([&values, &partials, w, begin, end] {
        partials[static_cast<size_t>(w)] =
            sumBlock<W>(values.data(), begin, end);
      });
    }
    partials[0] = sumBlock<W>(values.data(), 0, chunk);
  }
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

}  // namespace

double reduceAll(std::span<const double> values, const Backend& backend) {
  backend.validate();
  if (values.empty()) {
    throw std::invalid_argument("reduceAll: empty input");
  }
  const int threads = backend.effectiveThreads();
  switch (backend.effectiveLanes()) {
    case 1:
      return reduceAllRun<1>(values, threads);
    case 2:
      return reduceAllRun<2>(values, threads);
    case 4:
      return reduceAllRun<4>(values, threads);
    case 8:
      return reduceAllRun<8>(values, threads);
    default:
      throw std::invalid_argument("reduceAll: unsupported lane width");
  }
}

}  // namespace hawkes
