#include "sthawkes/types.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace hawkes {

EventSet EventSet::sortedByTime(const Eigen::ArrayXd& x,
                                const Eigen::ArrayXd& y,
                                const Eigen::ArrayXd& t,
                                std::optional<double> windowEnd,
                                double timeOrigin, std::vector<Index>* perm) {
  const Index n = t.size();
  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&t](Index a, Index b) { return t[a] < t[b]; });
  Eigen::ArrayXd sx(n), sy(n), st(n);
  for (Index i = 0; i < n; ++i) {
    sx[i] = x[order[static_cast<size_t>(i)]];
    sy[i] = y[order[static_cast<size_t>(i)]];
    st[i] = t[order[static_cast<size_t>(i)]];
  }
  if (perm != nullptr) *perm = order;
  return EventSet(std::move(sx), std::move(sy), std::move(st), windowEnd,
                  timeOrigin);
}

}  // namespace hawkes
