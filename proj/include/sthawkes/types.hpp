#ifndef STHAWKES_TYPES_HPP
#define STHAWKES_TYPES_HPP

#include <Eigen/Core>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace hawkes {

using Index = Eigen::Index;

// Spatial dimension of the process. Fixed at 2: kernels carry 1/s^d
// normalization factors with d = 2 baked in.
inline constexpr int kSpatialDim = 2;

namespace units {

inline constexpr double kMetersPerKm = 1000.0;
inline constexpr double kMinutesPerDay = 24.0 * 60.0;
inline constexpr double kSecondsPerDay = 24.0 * 60.0 * 60.0;
inline constexpr double kHoursPerDay = 24.0;

constexpr double kmToMeters(double km) { return km * kMetersPerKm; }
constexpr double metersToKm(double m) { return m / kMetersPerKm; }
constexpr double daysToMinutes(double d) { return d * kMinutesPerDay; }
constexpr double minutesToDays(double min) { return min / kMinutesPerDay; }
constexpr double daysToSeconds(double d) { return d * kSecondsPerDay; }
constexpr double secondsToDays(double s) { return s / kSecondsPerDay; }
constexpr double daysToHours(double d) { return d * kHoursPerDay; }
constexpr double hoursToDays(double h) { return h / kHoursPerDay; }

}  // namespace units

// One spatiotemporal observation. Canonical units are kilometers and days,
// with t measured from the start of the observation window.
struct Event {
  Eigen::Vector2d x;
  double t = 0.0;
};

// The six model parameters. mu0 weights the kernel-density background with
// bandwidths (tauX, tauT); theta, omega, h parametrize the triggering kernel
// (theta = expected offspring per event, 1/omega = temporal bandwidth,
// h = spatial bandwidth).
//
// theta = 0 is admitted (pure-background process); all other parameters must
// be strictly positive.
struct Params {
  double mu0 = 1.0;
  double tauX = 1.6;
  double tauT = 14.0;
  double theta = 0.1;
  double omega = 1.0;
  double h = 0.1;

  bool isValid() const noexcept {
    auto pos = [](double v) { return std::isfinite(v) && v > 0.0; };
    return pos(mu0) && pos(tauX) && pos(tauT) && pos(omega) && pos(h) &&
           std::isfinite(theta) && theta >= 0.0;
  }

  void validate() const {
    if (!isValid()) {
      throw std::invalid_argument(
          "Params: mu0, tauX, tauT, omega, h must be positive and finite; "
          "theta must be nonnegative and finite");
    }
  }
};

// A time-sorted set of events plus the observation window end. Storage is
// struct-of-arrays so the pairwise kernels stream contiguous coordinates.
// Immutable after construction.
class EventSet {
 public:
  // Requires nondecreasing times; use sortedByTime() for unsorted input.
  EventSet(Eigen::ArrayXd x, Eigen::ArrayXd y, Eigen::ArrayXd t,
           std::optional<double> windowEnd = std::nullopt,
           double timeOrigin = 0.0)
      : x_(std::move(x)), y_(std::move(y)), t_(std::move(t)),
        timeOrigin_(timeOrigin) {
    const Index n = t_.size();
    if (n < 1) throw std::invalid_argument("EventSet: need at least one event");
    if (x_.size() != n || y_.size() != n) {
      throw std::invalid_argument("EventSet: coordinate/time length mismatch");
    }
    for (Index i = 0; i < n; ++i) {
      if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]) ||
          !std::isfinite(t_[i])) {
        throw std::invalid_argument("EventSet: non-finite entry at index " +
                                    std::to_string(i));
      }
      if (t_[i] < 0.0) {
        throw std::invalid_argument("EventSet: negative time at index " +
                                    std::to_string(i));
      }
      if (i > 0 && t_[i] < t_[i - 1]) {
        throw std::invalid_argument("EventSet: times not sorted at index " +
                                    std::to_string(i));
      }
    }
    const double tMax = t_[n - 1];
    windowEnd_ = windowEnd.value_or(tMax);
    if (!std::isfinite(windowEnd_) || windowEnd_ < tMax) {
      throw std::invalid_argument("EventSet: windowEnd precedes last event");
    }
  }

  // Stable-sorts by time, then constructs. `perm` (optional out) receives the
  // applied permutation: perm[newIndex] = oldIndex.
  static EventSet sortedByTime(const Eigen::ArrayXd& x,
                               const Eigen::ArrayXd& y,
                               const Eigen::ArrayXd& t,
                               std::optional<double> windowEnd = std::nullopt,
                               double timeOrigin = 0.0,
                               std::vector<Index>* perm = nullptr);

  Index size() const { return t_.size(); }
  double windowEnd() const { return windowEnd_; }
  // Offset (days) subtracted from source timestamps at ingestion; reporting
  // metadata only, never enters the likelihood.
  double timeOrigin() const { return timeOrigin_; }

  const Eigen::ArrayXd& xs() const { return x_; }
  const Eigen::ArrayXd& ys() const { return y_; }
  const Eigen::ArrayXd& ts() const { return t_; }

  Event event(Index n) const { return Event{{x_[n], y_[n]}, t_[n]}; }

 private:
  Eigen::ArrayXd x_, y_, t_;
  double windowEnd_ = 0.0;
  double timeOrigin_ = 0.0;
};

}  // namespace hawkes

#endif  // STHAWKES_TYPES_HPP
