#include "rose/quant_rd.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace rose {
namespace {

TEST(QuantRd, QstepAndLambda) {
  EXPECT_DOUBLE_EQ(qstep_from_qp(4), 1.0);
  EXPECT_NEAR(qstep_from_qp(32), 25.398416831491197, 1e-12);
  EXPECT_DOUBLE_EQ(lambda_from_qp(12), 0.57);
  for (int qp = kMinQp; qp < kMaxQp; ++qp) EXPECT_LT(qstep_from_qp(qp), qstep_from_qp(qp + 1));
  EXPECT_THROW(qstep_from_qp(-1), std::invalid_argument);
  EXPECT_THROW(lambda_from_qp(52), std::invalid_argument);
  const auto q = QuantParams::from_qp(27);
  EXPECT_GT(q.qstep, 0.0);
  EXPECT_GT(q.lambda, 0.0);
}

TEST(QuantRd, DeadZoneQuantizer) {
  const double qstep = 10.0;
  EXPECT_EQ(quantize_value(0.0, qstep), 0);
  EXPECT_EQ(quantize_value(qstep, qstep), 1);
  EXPECT_EQ(quantize_value(0.5 * qstep, qstep), 0);
  EXPECT_EQ(quantize_value(-qstep, qstep), -1);
  EXPECT_EQ(quantize_value(2.0 / 3.0 * qstep + 1e-9, qstep), 1);
  EXPECT_THROW(quantize(CoeffBlock::Ones(4, 4), 0.0), std::invalid_argument);
}

TEST(QuantRd, DensityOfFigureSpectrum) {
  CoeffBlock c = CoeffBlock::Zero(8, 8);
  for (int mu = 0; mu < 8; ++mu) c(mu, 0) = testing::kFig2S1Spectrum[static_cast<std::size_t>(mu)];
  // Threshold is 0.2 * (1 - 1/3) = 0.1333: six entries survive.
  EXPECT_EQ(density(quantize(c, 0.2)), 6);
  EXPECT_EQ(density(LevelBlock::Zero(4, 4)), 0);
  LevelBlock spike = LevelBlock::Zero(4, 4);
  spike(2, 1) = -3;
  EXPECT_EQ(density(spike), 1);
}

TEST(QuantRd, ReconstructionErrorBoundedByQstep) {
  std::mt19937_64 rng(3);
  for (double qstep : {0.7, 8.0, 25.4}) {
    const CoeffBlock c = testing::random_block(rng, 8, 30.0);
    const CoeffBlock r = dequantize(quantize(c, qstep), qstep);
    EXPECT_LE((r - c).cwiseAbs().maxCoeff(), qstep);
  }
}

TEST(QuantRd, DensityInvariantUnderSignAndPermutation) {
  std::mt19937_64 rng(8);
  const LevelBlock levels = quantize(testing::random_block(rng, 8, 20.0), 16.0);
  LevelBlock flipped = -levels;
  LevelBlock reversed = levels.reverse();
  EXPECT_EQ(density(flipped), density(levels));
  EXPECT_EQ(density(reversed), density(levels));
}

TEST(QuantRd, MaskedSse) {
  const Block a = Block::Ones(4, 4);
  const Block b = Block::Zero(4, 4);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
  for (int i = 0; i < 7; ++i) m.data()[i * 2] = 1.0;
  EXPECT_DOUBLE_EQ(masked_sse(a, b, Mask(m)), 7.0);
  EXPECT_DOUBLE_EQ(masked_sse(a, a, Mask(m)), 0.0);
  EXPECT_DOUBLE_EQ(masked_sse(a, b, Mask::full(4, 4)), sse(a, b));
  EXPECT_THROW(masked_sse(a, Block::Zero(8, 8), Mask::full(4, 4)), std::invalid_argument);
}

TEST(QuantRd, MaskedSseNeverExceedsFull) {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 50; ++rep) {
    const Block a = testing::random_block(rng, 8), b = testing::random_block(rng, 8);
    const Mask mask(testing::random_mask(rng, 8, 0.0, 1.0));
    EXPECT_LE(masked_sse(a, b, mask), sse(a, b) + 1e-9);
  }
  // Equality when the residual vanishes off the mask.
  Block a = Block::Zero(8, 8), b = Block::Zero(8, 8);
  a(1, 1) = 3.0;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(8, 8);
  m(1, 1) = 1.0;
  EXPECT_DOUBLE_EQ(masked_sse(a, b, Mask(m)), sse(a, b));
}

TEST(QuantRd, RdCost) {
  EXPECT_DOUBLE_EQ(rd_cost(5.0, 0.0, 123.0), 5.0);
  EXPECT_DOUBLE_EQ(rd_cost(0.0, 10.0, 2.0), 20.0);
  EXPECT_NEAR(rd_cost(3.0, 4.0, 0.57), 5.28, 1e-12);
}

TEST(QuantRd, MaskValidation) {
  EXPECT_THROW(Mask(Eigen::MatrixXd::Constant(2, 2, 1.5)), std::invalid_argument);
  EXPECT_THROW(Mask(Eigen::MatrixXd(0, 0)), std::invalid_argument);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
  w(0, 0) = 0.5;
  const Mask soft(w);
  EXPECT_FALSE(soft.is_binary());
  EXPECT_EQ(soft.occupied_count(), 1);
  EXPECT_TRUE(soft.is_mixed());
}

}  // namespace
}  // namespace rose
