// Independent reference implementations used to check the engine. Everything
// here is deliberately written from the model definition with no code shared
// with the library: plain double loops, a series/continued-fraction normal
// CDF, and numerical quadrature.
#ifndef STHAWKES_TESTS_ORACLE_HPP
#define STHAWKES_TESTS_ORACLE_HPP

#include <Eigen/Core>
#include <vector>

#include "sthawkes/types.hpp"

namespace oracle {

// Standard normal density / CDF evaluated in long double arithmetic via a
// power series (|z| <= 8) and a Mills-ratio continued fraction (tails).
double normalPdf(double z);
double normalCdf(double z);

// Naive O(N^2) log-likelihood; quiet NaN when some rate is <= 0.
double logLikelihood(const hawkes::EventSet& events,
                     const hawkes::Params& params);

// Naive O(N^2) per-event background/self-excitation split.
struct Excitation {
  std::vector<double> mu, xi, pi;
};
Excitation excitation(const hawkes::EventSet& events,
                      const hawkes::Params& params);

// Composite Gauss-Legendre integral of f over [a, b] with `panels` panels of
// `order`-point rule.
double gaussLegendre(const std::function<double(double)>& f, double a,
                     double b, int panels, int order = 12);

// Adaptive Simpson on [a, b] to absolute tolerance tol.
double adaptiveSimpson(const std::function<double(double)>& f, double a,
                       double b, double tol);

// Integrated intensity over R^2 x [0, T] by 2-D spatial quadrature (per time
// point) and 1-D adaptive temporal quadrature split at event times.
double quadLambdaTotal(const hawkes::EventSet& events,
                       const hawkes::Params& params, double windowEnd);

// Triggering-kernel mass for one source event: quadrature of the kernel over
// target space and (t_source, infinity); equals theta for a correctly
// normalized kernel.
double quadTriggerMass(const hawkes::Params& params);

// Full 3-D tensor quadrature of the intensity (slow; small N only).
double quadLambdaTotal3d(const hawkes::EventSet& events,
                         const hawkes::Params& params, double windowEnd);

}  // namespace oracle

#endif  // STHAWKES_TESTS_ORACLE_HPP
