#include "rose/transforms.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace rose {

int block_width(TransformType type) {
  switch (type) {
    case TransformType::kDst4:
    case TransformType::kDct4:
      return 4;
    case TransformType::kDct8:
      return 8;
    case TransformType::kDct16:
      return 16;
    case TransformType::kDct32:
      return 32;
  }
  throw std::invalid_argument("unknown transform type");
}

std::string to_string(TransformType type) {
  switch (type) {
    case TransformType::kDst4:
      return "DST_4";
    case TransformType::kDct4:
      return "DCT_4";
    case TransformType::kDct8:
      return "DCT_8";
    case TransformType::kDct16:
      return "DCT_16";
    case TransformType::kDct32:
      return "DCT_32";
  }
  return "?";
}

TransformType parse_transform_type(std::string_view name) {
  for (auto type : kAllTransformTypes) {
    if (to_string(type) == name) return type;
  }
  throw std::invalid_argument("unknown transform type: " + std::string(name));
}

TransformType dct_for_width(int width) {
  switch (width) {
    case 4:
      return TransformType::kDct4;
    case 8:
      return TransformType::kDct8;
    case 16:
      return TransformType::kDct16;
    case 32:
      return TransformType::kDct32;
    default:
      throw std::invalid_argument("unsupported block width " + std::to_string(width));
  }
}

namespace {

Eigen::MatrixXd dct2_matrix(int n) {
  Eigen::MatrixXd t(n, n);
  const double pi = std::numbers::pi;
  for (int mu = 0; mu < n; ++mu) {
    const double scale = std::sqrt((mu == 0 ? 1.0 : 2.0) / n);
    for (int i = 0; i < n; ++i) {
      t(mu, i) = scale * std::cos(pi * (2 * i + 1) * mu / (2.0 * n));
    }
  }
  return t;
}

Eigen::MatrixXd dst7_matrix(int n) {
  Eigen::MatrixXd t(n, n);
  const double pi = std::numbers::pi;
  const double scale = 2.0 / std::sqrt(2.0 * n + 1.0);
  for (int mu = 0; mu < n; ++mu) {
    for (int i = 0; i < n; ++i) {
      t(mu, i) = scale * std::sin(pi * (2 * mu + 1) * (i + 1) / (2.0 * n + 1.0));
    }
  }
  return t;
}

}  // namespace

TransformMatrix::TransformMatrix(TransformType type)
    : type_(type),
      matrix_(type == TransformType::kDst4 ? dst7_matrix(4) : dct2_matrix(block_width(type))) {}

TransformMatrix build_transform_matrix(TransformType type) { return TransformMatrix(type); }

const TransformMatrix& transform_matrix(TransformType type) {
  static const std::array<TransformMatrix, 5> cache = {
      TransformMatrix(TransformType::kDst4), TransformMatrix(TransformType::kDct4),
      TransformMatrix(TransformType::kDct8), TransformMatrix(TransformType::kDct16),
      TransformMatrix(TransformType::kDct32)};
  return cache[static_cast<std::size_t>(type)];
}

Eigen::VectorXd forward_1d(const Eigen::VectorXd& signal, const TransformMatrix& t) {
  require(signal.size() == t.size(), "signal length does not match transform size");
  return t.matrix() * signal;
}

Eigen::VectorXd inverse_1d(const Eigen::VectorXd& coeffs, const TransformMatrix& t) {
  require(coeffs.size() == t.size(), "coefficient length does not match transform size");
  return t.matrix().transpose() * coeffs;
}

CoeffBlock forward_2d(const Block& block, const TransformMatrix& t) {
  require(block.rows() == t.size() && block.cols() == t.size(),
          "block shape does not match transform size");
  return t.matrix() * block * t.matrix().transpose();
}

Block inverse_2d(const CoeffBlock& coeffs, const TransformMatrix& t) {
  require(coeffs.rows() == t.size() && coeffs.cols() == t.size(),
          "coefficient shape does not match transform size");
  return t.matrix().transpose() * coeffs * t.matrix();
}

}  // namespace rose
