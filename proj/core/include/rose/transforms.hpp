#pragma once

#include "rose/types.hpp"

#include <string>
#include <string_view>

namespace rose {

enum class TransformType { kDst4, kDct4, kDct8, kDct16, kDct32 };

inline constexpr TransformType kAllTransformTypes[] = {
    TransformType::kDst4, TransformType::kDct4, TransformType::kDct8,
    TransformType::kDct16, TransformType::kDct32};

/// Transform width B.
int block_width(TransformType type);
std::string to_string(TransformType type);
TransformType parse_transform_type(std::string_view name);
/// DCT of the given width; DST_4 is only chosen explicitly.
TransformType dct_for_width(int width);

/// Orthonormal B x B matrix. Row mu holds the mu-th 1-D basis function, so
/// the forward transform is T * x and the inverse is T^T * X.
class TransformMatrix {
 public:
  explicit TransformMatrix(TransformType type);

  TransformType type() const { return type_; }
  int size() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

 private:
  TransformType type_;
  Eigen::MatrixXd matrix_;
};

/// Builds the orthonormal DCT-II (or DST-VII for DST_4) matrix.
TransformMatrix build_transform_matrix(TransformType type);

/// Cached per-type matrix; safe to call from multiple threads.
const TransformMatrix& transform_matrix(TransformType type);

Eigen::VectorXd forward_1d(const Eigen::VectorXd& signal, const TransformMatrix& t);
Eigen::VectorXd inverse_1d(const Eigen::VectorXd& coeffs, const TransformMatrix& t);

CoeffBlock forward_2d(const Block& block, const TransformMatrix& t);
Block inverse_2d(const CoeffBlock& coeffs, const TransformMatrix& t);

}  // namespace rose
