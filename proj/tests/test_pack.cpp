#include "sthawkes/pack.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "sthawkes/rng.hpp"

using namespace hawkes;

namespace {

// |a - b| in units of b's spacing.
double ulpDiff(double a, double b) {
  if (a == b) return 0.0;
  const double u = std::ldexp(std::numeric_limits<double>::epsilon(),
                              std::ilogb(b));
  return std::fabs(a - b) / u;
}

template <int W>
void expUlpSweep() {
  Rng rng(12345);
  double worst = 0.0;
  for (int i = 0; i < 200000 / W; ++i) {
    Pack<W> x;
    for (int l = 0; l < W; ++l) {
      // Emphasize the negative range the kernels use, but cover growth too.
      x.v[l] = (l % 2 == 0) ? rng.uniform(-708.0, 0.0)
                            : rng.uniform(-30.0, 700.0);
    }
    const Pack<W> y = exp(x);
    for (int l = 0; l < W; ++l) {
      worst = std::max(worst, ulpDiff(y.v[l], std::exp(x.v[l])));
    }
  }
  EXPECT_LE(worst, 2.0) << "lane width " << W;
}

}  // namespace

TEST(PackExp, WithinTwoUlpOfLibm) {
  expUlpSweep<2>();
  expUlpSweep<4>();
  expUlpSweep<8>();
}

TEST(PackExp, SpecialPoints) {
  Pack<4> x;
  x.v[0] = 0.0;
  x.v[1] = -750.0;   // below flush threshold
  x.v[2] = -708.0;   // clamp boundary
  x.v[3] = 1.0;
  const Pack<4> y = exp(x);
  EXPECT_DOUBLE_EQ(y.v[0], 1.0);
  EXPECT_EQ(y.v[1], 0.0);
  EXPECT_GT(y.v[2], 0.0);
  EXPECT_LE(ulpDiff(y.v[2], std::exp(-708.0)), 2.0);
  EXPECT_LE(ulpDiff(y.v[3], std::exp(1.0)), 2.0);
}

TEST(PackArithmetic, Elementwise) {
  Pack<4> a, b;
  for (int i = 0; i < 4; ++i) {
    a.v[i] = i + 1.0;
    b.v[i] = 10.0 * (i + 1);
  }
  const Pack<4> s = a + b;
  const Pack<4> d = b - a;
  const Pack<4> m = a * b;
  for (int i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(s.v[i], 11.0 * (i + 1));
    EXPECT_DOUBLE_EQ(d.v[i], 9.0 * (i + 1));
    EXPECT_DOUBLE_EQ(m.v[i], 10.0 * (i + 1) * (i + 1));
  }
}

TEST(PackArithmetic, SumCollapsesLeftToRight) {
  Pack<4> a;
  a.v[0] = 1e16;
  a.v[1] = 1.0;
  a.v[2] = -1e16;
  a.v[3] = 1.0;
  EXPECT_DOUBLE_EQ(a.sum(), ((1e16 + 1.0) + -1e16) + 1.0);
}

TEST(PackArithmetic, LessThanMask) {
  Pack<4> a, b;
  a.v[0] = 0.0; b.v[0] = 1.0;   // a < b
  a.v[1] = 1.0; b.v[1] = 1.0;   // equal: strict, no
  a.v[2] = 2.0; b.v[2] = 1.0;   // a > b
  a.v[3] = -5.0; b.v[3] = -4.0; // a < b
  const Pack<4> m = ltMask(a, b);
  EXPECT_DOUBLE_EQ(m.v[0], 1.0);
  EXPECT_DOUBLE_EQ(m.v[1], 0.0);
  EXPECT_DOUBLE_EQ(m.v[2], 0.0);
  EXPECT_DOUBLE_EQ(m.v[3], 1.0);
  EXPECT_DOUBLE_EQ(ltMask(0.5, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(ltMask(0.4, 0.5), 1.0);
}

TEST(PackArithmetic, MinElementwise) {
  Pack<2> a, b;
  a.v[0] = 3.0; b.v[0] = -1.0;
  a.v[1] = -2.0; b.v[1] = 5.0;
  const Pack<2> m = min(a, b);
  EXPECT_DOUBLE_EQ(m.v[0], -1.0);
  EXPECT_DOUBLE_EQ(m.v[1], -2.0);
}
