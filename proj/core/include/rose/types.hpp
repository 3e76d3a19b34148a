#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace rose {

// Square sample arrays are stored so that element (i1, i2) sits at flat
// index i1 + B * i2 of Eigen's column-major storage. i1 is the horizontal
// position (frequency mu1 for coefficients), i2 the vertical one.
using Block = Eigen::MatrixXd;
using CoeffBlock = Eigen::MatrixXd;
using LevelBlock = Eigen::MatrixXi;

/// Flattened view of a block using the i = i1 + B * i2 convention.
inline Eigen::Map<const Eigen::VectorXd> flatten(const Eigen::MatrixXd& block) {
  return {block.data(), block.size()};
}

inline Eigen::MatrixXd unflatten(const Eigen::VectorXd& v, int size) {
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), size, size);
}

/// Occupancy map. Weights are binary (0 = unoccupied, 1 = occupied) for
/// everything except the general ROSE path, which accepts weights in [0, 1].
class Mask {
 public:
  Mask() = default;
  explicit Mask(Eigen::MatrixXd weights);

  static Mask full(int rows, int cols) { return Mask(Eigen::MatrixXd::Ones(rows, cols)); }
  static Mask empty(int rows, int cols) { return Mask(Eigen::MatrixXd::Zero(rows, cols)); }

  int rows() const { return static_cast<int>(weights_.rows()); }
  int cols() const { return static_cast<int>(weights_.cols()); }
  const Eigen::MatrixXd& weights() const { return weights_; }
  double operator()(int i1, int i2) const { return weights_(i1, i2); }

  bool is_binary() const;
  /// Number of samples with nonzero weight.
  int occupied_count() const;
  bool all_occupied() const { return occupied_count() == weights_.size(); }
  bool none_occupied() const { return occupied_count() == 0; }
  bool is_mixed() const { return !all_occupied() && !none_occupied(); }

  /// Sub-mask starting at (i1, i2) with the given square size.
  Mask tile(int i1, int i2, int size) const;

 private:
  Eigen::MatrixXd weights_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

}  // namespace rose
