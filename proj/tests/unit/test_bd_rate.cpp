#include "rose/harness/bd_rate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace rose::harness {
namespace {

std::vector<RdPoint> anchor_curve() {
  return {{1000.0, 30.0}, {1800.0, 33.5}, {3100.0, 36.0}, {5600.0, 39.2}, {9000.0, 41.0}};
}

std::vector<RdPoint> scaled(const std::vector<RdPoint>& c, double f) {
  auto out = c;
  for (auto& p : out) p.rate *= f;
  return out;
}

TEST(BdRate, IdenticalCurvesGiveZero) {
  const auto a = anchor_curve();
  EXPECT_NEAR(bd_rate(a, a), 0.0, 1e-12);
}

TEST(BdRate, UniformScaling) {
  const auto a = anchor_curve();
  EXPECT_NEAR(bd_rate(a, scaled(a, 0.9)), -10.0, 1e-9);
  EXPECT_NEAR(bd_rate(a, scaled(a, 1.25)), 25.0, 1e-9);
}

TEST(BdRate, Reciprocity) {
  const auto a = anchor_curve();
  const auto b = scaled(a, 0.83);
  const double ab = bd_rate(a, b) / 100.0, ba = bd_rate(b, a) / 100.0;
  EXPECT_NEAR((1.0 + ab) * (1.0 + ba), 1.0, 1e-6);
}

TEST(BdRate, PointOrderDoesNotMatter) {
  const auto a = anchor_curve();
  auto b = scaled(a, 0.9);
  std::swap(b[0], b[3]);
  EXPECT_NEAR(bd_rate(a, b), -10.0, 1e-9);
}

TEST(BdRate, Errors) {
  const auto a = anchor_curve();
  std::vector<RdPoint> three(a.begin(), a.begin() + 3);
  EXPECT_THROW(bd_rate(a, three), std::invalid_argument);
  auto far = a;
  for (auto& p : far) p.quality += 50.0;
  EXPECT_THROW(bd_rate(a, far), std::invalid_argument);
  auto flat = a;
  flat[2].quality = flat[1].quality;
  EXPECT_THROW(bd_rate(a, flat), std::invalid_argument);
  auto non_positive = a;
  non_positive[0].rate = 0.0;
  EXPECT_THROW(bd_rate(a, non_positive), std::invalid_argument);
}

TEST(Pchip, InterpolatesAndReproducesLines) {
  const Pchip line({0.0, 1.0, 3.0, 4.0}, {1.0, 3.0, 7.0, 9.0});
  EXPECT_NEAR(line(2.0), 5.0, 1e-12);
  EXPECT_NEAR(line.integrate(0.5, 3.5), 3.0 * 5.0, 1e-12);

  const std::vector<double> x{0.0, 1.0, 2.0, 5.0, 6.0};
  const std::vector<double> y{0.0, 0.2, 2.0, 2.1, 4.0};
  const Pchip p(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(p(x[i]), y[i], 1e-12);
  // Monotone data stays monotone between knots.
  double prev = p(0.0);
  for (double t = 0.01; t <= 6.0; t += 0.01) {
    const double v = p(t);
    EXPECT_GE(v, prev - 1e-12);
    prev = v;
  }
  // Exact integral against fine composite Simpson on the evaluated curve.
  const int n = 6000;
  const double h = 6.0 / n;
  double simpson = p(0.0) + p(6.0);
  for (int i = 1; i < n; ++i) simpson += (i % 2 ? 4.0 : 2.0) * p(i * h);
  simpson *= h / 3.0;
  EXPECT_NEAR(p.integrate(0.0, 6.0), simpson, 1e-9);
}

TEST(Pchip, KnownSlopes) {
  // Interior slope is the weighted harmonic mean of the secants
  // (here 1 and 3 on unit spacing: 2 / (1/1 + 1/3) = 1.5).
  const Pchip p({0.0, 1.0, 2.0}, {0.0, 1.0, 4.0});
  const double eps = 1e-6;
  EXPECT_NEAR((p(1.0 + eps) - p(1.0 - eps)) / (2 * eps), 1.5, 1e-6);
}

}  // namespace
}  // namespace rose::harness
