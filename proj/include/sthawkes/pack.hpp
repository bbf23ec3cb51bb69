#ifndef STHAWKES_PACK_HPP
#define STHAWKES_PACK_HPP

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>

namespace hawkes {

// Fixed-width lane abstraction. A Pack<W> holds W doubles processed
// elementwise; the loops below are written so the compiler turns each
// operation into one (or a few) vector instructions at the target ISA width.
// Width 1 is never instantiated by the backends (they use plain double), so
// every Pack op is genuinely multi-lane.
template <int W>
struct Pack {
  static_assert(W == 2 || W == 4 || W == 8, "supported lane widths: 2, 4, 8");

  alignas(8 * W) double v[W];

  Pack() = default;
  explicit Pack(double s) {
    for (int i = 0; i < W; ++i) v[i] = s;
  }

  static Pack load(const double* p) {
    Pack r;
    for (int i = 0; i < W; ++i) r.v[i] = p[i];
    return r;
  }

  static Pack zero() { return Pack(0.0); }

  // Left-to-right lane collapse; the fixed order keeps results bitwise
  // reproducible at a fixed configuration.
  double sum() const {
    double s = v[0];
    for (int i = 1; i < W; ++i) s += v[i];
    return s;
  }

  Pack& operator+=(const Pack& o) {
    for (int i = 0; i < W; ++i) v[i] += o.v[i];
    return *this;
  }
};

template <int W>
inline Pack<W> operator+(Pack<W> a, const Pack<W>& b) {
  for (int i = 0; i < W; ++i) a.v[i] += b.v[i];
  return a;
}

template <int W>
inline Pack<W> operator-(Pack<W> a, const Pack<W>& b) {
  for (int i = 0; i < W; ++i) a.v[i] -= b.v[i];
  return a;
}

template <int W>
inline Pack<W> operator*(Pack<W> a, const Pack<W>& b) {
  for (int i = 0; i < W; ++i) a.v[i] *= b.v[i];
  return a;
}

template <int W>
inline Pack<W> min(Pack<W> a, const Pack<W>& b) {
  for (int i = 0; i < W; ++i) a.v[i] = a.v[i] < b.v[i] ? a.v[i] : b.v[i];
  return a;
}

// 1.0 on lanes where a < b, else 0.0 (the strict temporal-precedence
// indicator of the triggering kernel).
template <int W>
inline Pack<W> ltMask(const Pack<W>& a, const Pack<W>& b) {
  Pack<W> r;
  for (int i = 0; i < W; ++i) r.v[i] = a.v[i] < b.v[i] ? 1.0 : 0.0;
  return r;
}

inline double ltMask(double a, double b) { return a < b ? 1.0 : 0.0; }

namespace detail {

// exp(x) = 2^k * exp(r), x = k*ln2 + r, |r| <= ln2/2. The reduction uses a
// hi/lo split of ln2 (hi has 32 trailing zero bits, so k*hi is exact), and
// exp(r) is a degree-13 Taylor polynomial whose truncation error on the
// reduced interval is below 5e-18 relative. Inputs below -708 flush to zero;
// the callers' exponents are never above +708 after clamping.
inline constexpr double kLog2E = 1.4426950408889634074;
inline constexpr double kLn2Hi = 6.93147180369123816490e-1;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kExpLo = -708.0;
inline constexpr double kExpHi = 708.0;
inline constexpr double kRoundMagic = 6755399441055744.0;  // 1.5 * 2^52

inline constexpr double kExpC2 = 1.0 / 2;
inline constexpr double kExpC3 = 1.0 / 6;
inline constexpr double kExpC4 = 1.0 / 24;
inline constexpr double kExpC5 = 1.0 / 120;
inline constexpr double kExpC6 = 1.0 / 720;
inline constexpr double kExpC7 = 1.0 / 5040;
inline constexpr double kExpC8 = 1.0 / 40320;
inline constexpr double kExpC9 = 1.0 / 362880;
inline constexpr double kExpC10 = 1.0 / 3628800;
inline constexpr double kExpC11 = 1.0 / 39916800;
inline constexpr double kExpC12 = 1.0 / 479001600;
inline constexpr double kExpC13 = 1.0 / 6227020800;

}  // namespace detail

// Lane-wise exp. Branch-free per lane: every lane runs the same reduction,
// polynomial, and 2^k scaling, so the whole pack vectorizes.
template <int W>
inline Pack<W> exp(const Pack<W>& x) {
  using namespace detail;
  Pack<W> r;
  double kd[W];
  std::int64_t ki[W];
  double zeroMask[W];
  double xc[W];
  for (int i = 0; i < W; ++i) {
    zeroMask[i] = x.v[i] < kExpLo ? 0.0 : 1.0;
    double c = x.v[i] < kExpLo ? kExpLo : x.v[i];
    xc[i] = c > kExpHi ? kExpHi : c;
  }
  for (int i = 0; i < W; ++i) {
    double t = xc[i] * kLog2E + kRoundMagic;
    kd[i] = t - kRoundMagic;
    ki[i] = static_cast<std::int64_t>(kd[i]);
  }
  for (int i = 0; i < W; ++i) {
    double rr = xc[i] - kd[i] * kLn2Hi;
    rr -= kd[i] * kLn2Lo;
    double p = kExpC13;
    p = p * rr + kExpC12;
    p = p * rr + kExpC11;
    p = p * rr + kExpC10;
    p = p * rr + kExpC9;
    p = p * rr + kExpC8;
    p = p * rr + kExpC7;
    p = p * rr + kExpC6;
    p = p * rr + kExpC5;
    p = p * rr + kExpC4;
    p = p * rr + kExpC3;
    p = p * rr + kExpC2;
    p = p * rr + 1.0;
    p = p * rr + 1.0;
    double scale = std::bit_cast<double>((ki[i] + 1023) << 52);
    r.v[i] = p * scale * zeroMask[i];
  }
  return r;
}

// Scalar path: the non-vectorized backends use libm directly.
inline double laneExp(double x) { return std::exp(x); }

template <int W>
inline Pack<W> laneExp(const Pack<W>& x) {
  return exp(x);
}

}  // namespace hawkes

#endif  // STHAWKES_PACK_HPP
