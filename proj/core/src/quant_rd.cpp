#include "rose/quant_rd.hpp"

#include <cmath>
#include <string>

namespace rose {

Mask::Mask(Eigen::MatrixXd weights) : weights_(std::move(weights)) {
  require(weights_.rows() > 0 && weights_.cols() > 0, "mask must have positive shape");
  require((weights_.array() >= 0.0).all() && (weights_.array() <= 1.0).all(),
          "mask weights must lie in [0, 1]");
}

bool Mask::is_binary() const {
  return ((weights_.array() == 0.0) || (weights_.array() == 1.0)).all();
}

int Mask::occupied_count() const { return static_cast<int>((weights_.array() != 0.0).count()); }

Mask Mask::tile(int i1, int i2, int size) const {
  require(i1 >= 0 && i2 >= 0 && i1 + size <= rows() && i2 + size <= cols(),
          "mask tile out of range");
  return Mask(weights_.block(i1, i2, size, size));
}

double qstep_from_qp(int qp) {
  require(qp >= kMinQp && qp <= kMaxQp, "qp out of range [0, 51]: " + std::to_string(qp));
  return std::exp2((qp - 4) / 6.0);
}

double lambda_from_qp(int qp) {
  require(qp >= kMinQp && qp <= kMaxQp, "qp out of range [0, 51]: " + std::to_string(qp));
  return 0.57 * std::exp2((qp - 12) / 3.0);
}

QuantParams QuantParams::from_qp(int qp) {
  return QuantParams{qp, qstep_from_qp(qp), lambda_from_qp(qp), kDeadZoneOffset};
}

int quantize_value(double coeff, double qstep, double deadzone) {
  const int level = static_cast<int>(std::floor(std::abs(coeff) / qstep + deadzone));
  return coeff < 0.0 ? -level : level;
}

LevelBlock quantize(const CoeffBlock& coeffs, double qstep, double deadzone) {
  require(qstep > 0.0, "qstep must be positive");
  return coeffs.unaryExpr([&](double c) { return quantize_value(c, qstep, deadzone); });
}

CoeffBlock dequantize(const LevelBlock& levels, double qstep) {
  return levels.cast<double>() * qstep;
}

int density(const LevelBlock& levels) { return static_cast<int>((levels.array() != 0).count()); }

double sse(const Block& a, const Block& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "block shapes differ");
  return (a - b).squaredNorm();
}

double masked_sse(const Block& a, const Block& b, const Mask& mask) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "block shapes differ");
  require(a.rows() == mask.rows() && a.cols() == mask.cols(), "mask shape differs from block");
  return ((a - b).array().square() * mask.weights().array()).sum();
}

}  // namespace rose
