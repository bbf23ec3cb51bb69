#ifndef STHAWKES_BACKEND_HPP
#define STHAWKES_BACKEND_HPP

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sthawkes/pack.hpp"
#include "sthawkes/types.hpp"

namespace hawkes {

enum class BackendKind { Serial, Vectorized, Threaded, ThreadedVectorized };

// Execution-strategy selector for the pairwise engines. threadCount applies
// to the Threaded kinds, laneWidth to the Vectorized kinds; both are ignored
// (treated as 1) otherwise. The numerical contract is identical across
// kinds: fixed contiguous target blocks per thread, lane accumulators
// collapsed left-to-right, per-thread partials combined in thread order, so
// results are bitwise reproducible at a fixed configuration.
struct Backend {
  BackendKind kind = BackendKind::Serial;
  int threadCount = 1;
  int laneWidth = 1;

  static Backend serial() { return {BackendKind::Serial, 1, 1}; }
  static Backend vectorized(int lanes = 4) {
    return {BackendKind::Vectorized, 1, lanes};
  }
  static Backend threaded(int threads) {
    return {BackendKind::Threaded, threads, 1};
  }
  static Backend threadedVectorized(int threads, int lanes = 4) {
    return {BackendKind::ThreadedVectorized, threads, lanes};
  }

  bool usesThreads() const {
    return kind == BackendKind::Threaded ||
           kind == BackendKind::ThreadedVectorized;
  }
  bool usesLanes() const {
    return kind == BackendKind::Vectorized ||
           kind == BackendKind::ThreadedVectorized;
  }
  int effectiveThreads() const { return usesThreads() ? threadCount : 1; }
  int effectiveLanes() const { return usesLanes() ? laneWidth : 1; }

  void validate() const {
    if (threadCount < 1) {
      throw std::invalid_argument("Backend: threadCount must be >= 1");
    }
    if (laneWidth != 1 && laneWidth != 2 && laneWidth != 4 && laneWidth != 8) {
      throw std::invalid_argument("Backend: laneWidth must be 1, 2, 4 or 8");
    }
  }

  std::string label() const;
};

Backend parseBackend(const std::string& kind, int threads, int lanes);

// Bundles the two pure callables of a per-target pair reduction.
//
// PairTerm accumulates the K running sums for one target against one source
// lane; it is templated on the lane scalar (double or Pack<W>):
//   void operator()(double tx, double ty, double tt,
//                   const S& sx, const S& sy, const S& st,
//                   S& acc0, S& acc1, ...) const;        // K accumulators
//
// Finalize maps a target's collapsed sums to its contribution to the scalar
// total (and may write per-target outputs at index n — distinct indices, so
// concurrent finalizers never alias):
//   double operator()(Index n, const std::array<double, K>& sums) const;
template <int K, typename PairTerm, typename Finalize>
struct PairReduceSpec {
  static constexpr int kAccumulators = K;
  PairTerm pairTerm;
  Finalize finalize;
};

template <int K, typename PairTerm, typename Finalize>
PairReduceSpec<K, PairTerm, Finalize> makePairReduceSpec(PairTerm term,
                                                         Finalize fin) {
  return {std::move(term), std::move(fin)};
}

namespace detail {

// Inner loop over all sources for targets [begin, end): lanes of width W,
// scalar tail (the j <- min(j, N-n) jump), accumulators collapsed in lane
// order at loop exit.
template <int W, int K, typename Spec>
double pairReduceBlock(const EventSet& events, const Spec& spec, Index begin,
                       Index end) {
  const double* xs = events.xs().data();
  const double* ys = events.ys().data();
  const double* ts = events.ts().data();
  const Index n = events.size();
  double total = 0.0;

  for (Index tgt = begin; tgt < end; ++tgt) {
    const double tx = xs[tgt], ty = ys[tgt], tt = ts[tgt];
    std::array<double, K> sums{};

    Index src = 0;
    if constexpr (W > 1) {
      std::array<Pack<W>, K> acc;
      for (auto& a : acc) a = Pack<W>::zero();
      const Index full = n - n % W;
      for (; src < full; src += W) {
        const Pack<W> sx = Pack<W>::load(xs + src);
        const Pack<W> sy = Pack<W>::load(ys + src);
        const Pack<W> st = Pack<W>::load(ts + src);
        if constexpr (K == 1) {
          spec.pairTerm(tx, ty, tt, sx, sy, st, acc[0]);
        } else if constexpr (K == 2) {
          spec.pairTerm(tx, ty, tt, sx, sy, st, acc[0], acc[1]);
        } else {
          static_assert(K <= 2, "pairReduce: unsupported accumulator count");
        }
      }
      for (int k = 0; k < K; ++k) sums[k] = acc[k].sum();
    }
    for (; src < n; ++src) {
      if constexpr (K == 1) {
        spec.pairTerm(tx, ty, tt, xs[src], ys[src], ts[src], sums[0]);
      } else if constexpr (K == 2) {
        spec.pairTerm(tx, ty, tt, xs[src], ys[src], ts[src], sums[0], sums[1]);
      }
    }
    total += spec.finalize(tgt, sums);
  }
  return total;
}

// Contiguous block per thread: block b owns [b*floor(N/B), (b+1)*floor(N/B)),
// the last block running to N. Thread 0 is the calling thread; partials are
// combined in block order by the caller once all workers join.
template <int W, int K, typename Spec>
double pairReduceRun(const EventSet& events, const Spec& spec, int threads) {
  const Index n = events.size();
  if (threads <= 1) return pairReduceBlock<W, K>(events, spec, 0, n);

  const int b = threads;
  const Index chunk = n / b;
  std::vector<double> partials(static_cast<size_t>(b), 0.0);
  {
    std::vector<std::jthread> workers;
    workers.reserve(static_cast<size_t>(b - 1));
    for (int w = 1; w < b; ++w) {
      const Index begin = static_cast<Index>(w) * chunk;
      const Index end = (w == b - 1) ? n : begin + chunk;
      workers.emplace_back([&events, &spec, &partials, w, begin, end] {
        partials[static_cast<size_t>(w)] =
            pairReduceBlock<W, K>(events, spec, begin, end);
      });
    }
    partials[0] = pairReduceBlock<W, K>(events, spec, 0, chunk);
  }
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

}  // namespace detail

// Runs the per-target transformation-reduction described by `spec` over all
// (target, source) pairs of `events` and returns the scalar total of the
// finalized values. Externally synchronous; memory use is O(targets) for
// caller-side outputs plus O(threads * lanes) internally.
template <int K, typename PairTerm, typename Finalize>
double pairReduce(const EventSet& events,
                  const PairReduceSpec<K, PairTerm, Finalize>& spec,
                  const Backend& backend) {
  backend.validate();
  const int threads = backend.effectiveThreads();
  switch (backend.effectiveLanes()) {
    case 1:
      return detail::pairReduceRun<1, K>(events, spec, threads);
    case 2:
      return detail::pairReduceRun<2, K>(events, spec, threads);
    case 4:
      return detail::pairReduceRun<4, K>(events, spec, threads);
    case 8:
      return detail::pairReduceRun<8, K>(events, spec, threads);
    default:
      throw std::invalid_argument("pairReduce: unsupported lane width");
  }
}

// Sums `values` under the same block/lane discipline as pairReduce: each
// thread sums a contiguous block in index order, one final pass combines the
// per-thread partials in thread order.
double reduceAll(std::span<const double> values, const Backend& backend);

}  // namespace hawkes

#endif  // STHAWKES_BACKEND_HPP
