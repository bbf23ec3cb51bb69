#ifndef STHAWKES_KERNELS_HPP
#define STHAWKES_KERNELS_HPP

#include <cmath>
#include <stdexcept>

#include "sthawkes/pack.hpp"
#include "sthawkes/types.hpp"

namespace hawkes {

inline constexpr double kInvSqrt2Pi = 0.3989422804014326779;  // 1/sqrt(2*pi)
inline constexpr double kInvSqrt2 = 0.7071067811865475244;    // 1/sqrt(2)

// Standard normal density.
inline double gaussianKernel1d(double z) {
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

// Standard normal CDF.
inline double normalCdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

// One summand of the background kernel-density rate at `target` contributed
// by `source`, without the mu0 weight:
//   (1/(tauX^2 tauT)) phi(dx/tauX) phi(dy/tauX) phi(dt/tauT).
inline double backgroundPairRate(const Event& target, const Event& source,
                                 const Params& params) {
  params.validate();
  const double sx = 1.0 / params.tauX;
  const double st = 1.0 / params.tauT;
  return sx * sx * st * gaussianKernel1d((target.x[0] - source.x[0]) * sx) *
         gaussianKernel1d((target.x[1] - source.x[1]) * sx) *
         gaussianKernel1d((target.t - source.t) * st);
}

// Triggering rate added at `target` by a strictly earlier `source`:
//   theta * omega * exp(-omega dt) * (1/h^2) phi(dx/h) phi(dy/h),
// and exactly 0 unless source.t < target.t. The omega * exp(-omega dt)
// factor is a unit-mass exponential density, so the kernel integrates to
// theta over target space and time, matching the closed-form compensator.
inline double triggerPairRate(const Event& target, const Event& source,
                              const Params& params) {
  params.validate();
  if (!(source.t < target.t)) return 0.0;
  const double dt = target.t - source.t;
  const double sh = 1.0 / params.h;
  return params.theta * params.omega * std::exp(-params.omega * dt) * sh * sh *
         gaussianKernel1d((target.x[0] - source.x[0]) * sh) *
         gaussianKernel1d((target.x[1] - source.x[1]) * sh);
}

// Per-event term of the integrated intensity over the window [0, T]:
//   mu0 (Phi((T-t)/tauT) - Phi(-t/tauT)) - theta (exp(-omega (T-t)) - 1).
inline double compensatorTerm(const Event& event, double windowEnd,
                              const Params& params) {
  params.validate();
  if (!(windowEnd >= event.t)) {
    throw std::invalid_argument("compensatorTerm: windowEnd precedes event");
  }
  const double dt = windowEnd - event.t;
  const double bg = params.mu0 * (normalCdf(dt / params.tauT) -
                                  normalCdf(-event.t / params.tauT));
  const double tr = -params.theta * std::expm1(-params.omega * dt);
  return bg + tr;
}

// Fused pairwise term used by the O(N^2) engines: accumulates the background
// and triggering summands for one target against a lane of sources. Scalar
// type S is double or Pack<W>; constants are folded once per parameter set.
//
//   acc[0] += (2pi)^{-3/2}/(tauX^2 tauT) exp(-r2/(2 tauX^2) - dt^2/(2 tauT^2))
//   acc[1] += [st < tt] theta omega (2pi)^{-1}/h^2 exp(-omega dt - r2/(2 h^2))
//
// The trigger exponent is clamped at 0 before exp so masked-out lanes
// (dt <= 0) cannot overflow; the mask then zeroes them exactly.
class HawkesPairTerm {
 public:
  explicit HawkesPairTerm(const Params& p)
      : bgNorm_(std::pow(2.0 * M_PI, -1.5) / (p.tauX * p.tauX * p.tauT)),
        negHalfInvTauX2_(-0.5 / (p.tauX * p.tauX)),
        negHalfInvTauT2_(-0.5 / (p.tauT * p.tauT)),
        trNorm_(p.theta * p.omega / (2.0 * M_PI * p.h * p.h)),
        negHalfInvH2_(-0.5 / (p.h * p.h)),
        negOmega_(-p.omega) {}

  static constexpr int kAccumulators = 2;

  template <typename S>
  void operator()(double tx, double ty, double tt, const S& sx, const S& sy,
                  const S& st, S& bgAcc, S& trAcc) const {
    const S dx = S(tx) - sx;
    const S dy = S(ty) - sy;
    const S dt = S(tt) - st;
    const S r2 = dx * dx + dy * dy;
    bgAcc += S(bgNorm_) * laneExp(S(negHalfInvTauX2_) * r2 +
                                  S(negHalfInvTauT2_) * (dt * dt));
    using hawkes::min;
    using std::min;
    const S trArg = min(S(negOmega_) * dt + S(negHalfInvH2_) * r2, S(0.0));
    trAcc += ltMask(st, S(tt)) * S(trNorm_) * laneExp(trArg);
  }

 private:
  double bgNorm_, negHalfInvTauX2_, negHalfInvTauT2_;
  double trNorm_, negHalfInvH2_, negOmega_;
};

}  // namespace hawkes

#endif  // STHAWKES_KERNELS_HPP
