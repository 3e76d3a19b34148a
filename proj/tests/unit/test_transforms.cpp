#include "rose/transforms.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace rose {
namespace {

using testing::kFig2S0;
using testing::kFig2S1Spectrum;

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

TEST(Transforms, WidthsPerType) {
  EXPECT_EQ(block_width(TransformType::kDst4), 4);
  EXPECT_EQ(block_width(TransformType::kDct4), 4);
  EXPECT_EQ(block_width(TransformType::kDct8), 8);
  EXPECT_EQ(block_width(TransformType::kDct16), 16);
  EXPECT_EQ(block_width(TransformType::kDct32), 32);
  EXPECT_EQ(parse_transform_type("DCT_16"), TransformType::kDct16);
  EXPECT_THROW(parse_transform_type("DCT_64"), std::invalid_argument);
  EXPECT_THROW(dct_for_width(12), std::invalid_argument);
}

TEST(Transforms, Dct8RowOneMatchesFigure) {
  const auto t = build_transform_matrix(TransformType::kDct8);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(t.matrix()(1, i), kFig2S0[static_cast<std::size_t>(i)], 5e-5);
}

TEST(Transforms, Dct4DcRowIsHalf) {
  const auto t = build_transform_matrix(TransformType::kDct4);
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(t.matrix()(0, i), 0.5);
}

TEST(Transforms, MatchesClosedFormDct) {
  for (int n : {4, 8, 16, 32}) {
    const auto& t = transform_matrix(dct_for_width(n));
    for (int mu = 0; mu < n; ++mu)
      for (int i = 0; i < n; ++i) EXPECT_NEAR(t.matrix()(mu, i), testing::dct2_entry(n, mu, i), 1e-15);
  }
}

TEST(Transforms, OrthonormalAllTypes) {
  for (auto type : kAllTransformTypes) {
    const auto t = build_transform_matrix(type);
    const Eigen::MatrixXd gram = t.matrix() * t.matrix().transpose();
    const auto n = t.size();
    EXPECT_LE((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12) << to_string(type);
    for (int mu = 0; mu < n; ++mu) EXPECT_NEAR(t.matrix().row(mu).norm(), 1.0, 1e-12);
  }
}

TEST(Transforms, Dst4IsNotDct4) {
  const auto& dst = transform_matrix(TransformType::kDst4);
  const auto& dct = transform_matrix(TransformType::kDct4);
  EXPECT_GT((dst.matrix() - dct.matrix()).cwiseAbs().maxCoeff(), 0.1);
  // DST-VII first basis function rises monotonically.
  for (int i = 0; i + 1 < 4; ++i) EXPECT_LT(dst.matrix()(0, i), dst.matrix()(0, i + 1));
}

TEST(Transforms, Forward1dFigureSignals) {
  const auto& t = transform_matrix(TransformType::kDct8);
  const Eigen::VectorXd spike = forward_1d(to_vector(kFig2S0), t);
  for (int mu = 0; mu < 8; ++mu) EXPECT_NEAR(spike[mu], mu == 1 ? 1.0 : 0.0, 5e-4);

  auto s1 = kFig2S0;
  s1[7] = 0.0;
  const Eigen::VectorXd spectrum = forward_1d(to_vector(s1), t);
  for (int mu = 0; mu < 8; ++mu) EXPECT_NEAR(spectrum[mu], kFig2S1Spectrum[static_cast<std::size_t>(mu)], 5e-4);

  EXPECT_TRUE(forward_1d(Eigen::VectorXd::Zero(8), t).isZero());
  EXPECT_THROW(forward_1d(Eigen::VectorXd::Zero(7), t), std::invalid_argument);
}

TEST(Transforms, EnergyOutsideMainCoefficient) {
  // The figure caption quotes roughly 21 %; the printed spectrum itself
  // puts 24 % of the masked signal's energy outside mu = 1.
  const auto& t = transform_matrix(TransformType::kDct8);
  Eigen::VectorXd s1(8);
  for (int i = 0; i < 8; ++i) s1[i] = testing::dct2_entry(8, 1, i);
  s1[7] = 0.0;
  const Eigen::VectorXd spectrum = forward_1d(s1, t);
  const double share = 1.0 - spectrum[1] * spectrum[1] / spectrum.squaredNorm();
  EXPECT_NEAR(share, 0.2405, 5e-4);
}

TEST(Transforms, BasisBlockMapsToUnitCoefficient) {
  for (auto type : kAllTransformTypes) {
    const auto& t = transform_matrix(type);
    const int b = t.size();
    const int k1 = b - 1, k2 = b / 2;
    const CoeffBlock c = forward_2d(testing::separable_basis(t.matrix(), k1, k2), t);
    CoeffBlock expected = CoeffBlock::Zero(b, b);
    expected(k1, k2) = 1.0;
    EXPECT_LE((c - expected).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(forward_2d(Block::Zero(b, b), t).isZero());
  }
}

TEST(Transforms, Forward2dMatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (auto type : kAllTransformTypes) {
    const auto& t = transform_matrix(type);
    if (t.size() > 16) continue;
    const Block s = testing::random_block(rng, t.size());
    EXPECT_LE((forward_2d(s, t) - testing::brute_force_forward(t.matrix(), s)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Transforms, RoundTripAndParseval) {
  std::mt19937_64 rng(2024);
  for (auto type : kAllTransformTypes) {
    const auto& t = transform_matrix(type);
    for (int rep = 0; rep < 20; ++rep) {
      const Block s = testing::random_block(rng, t.size());
      const CoeffBlock c = forward_2d(s, t);
      EXPECT_LE((inverse_2d(c, t) - s).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LE((forward_2d(inverse_2d(c, t), t) - c).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_NEAR(c.squaredNorm(), s.squaredNorm(), 1e-9 * s.squaredNorm());
    }
  }
}

TEST(Transforms, ShapeMismatchThrows) {
  const auto& t = transform_matrix(TransformType::kDct8);
  EXPECT_THROW(forward_2d(Block::Zero(4, 4), t), std::invalid_argument);
  EXPECT_THROW(inverse_2d(CoeffBlock::Zero(8, 4), t), std::invalid_argument);
}

}  // namespace
}  // namespace rose
