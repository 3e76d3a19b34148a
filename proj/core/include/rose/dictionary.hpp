#pragma once

#include "rose/transforms.hpp"

#include <vector>

namespace rose {

/// All spatial basis functions of one transform type. Column k of atoms()
/// is the flattened inverse transform of the unit coefficient at
/// (k1, k2) with k = k1 + B * k2.
class BasisDictionary {
 public:
  explicit BasisDictionary(TransformType type);

  TransformType type() const { return type_; }
  int block_size() const { return block_size_; }
  int size() const { return static_cast<int>(atoms_.cols()); }
  const Eigen::MatrixXd& atoms() const { return atoms_; }
  Eigen::Ref<const Eigen::VectorXd> atom(int k) const { return atoms_.col(k); }

 private:
  TransformType type_;
  int block_size_;
  Eigen::MatrixXd atoms_;
};

BasisDictionary build_dictionary(TransformType type);

/// Process-wide cache, built on first use per type.
const BasisDictionary& dictionary(TransformType type);

/// Per-block precomputation for a given mask: the denominators of the
/// projection step and the basis functions restricted to occupied samples.
class MaskedDictionary {
 public:
  MaskedDictionary(const BasisDictionary& dict, const Mask& mask);

  const BasisDictionary& basis() const { return *dict_; }
  const Mask& mask() const { return mask_; }
  int size() const { return dict_->size(); }

  /// sum_i phi_k,i^2 * m_i for every k.
  const Eigen::VectorXd& masked_norms() const { return masked_norms_; }
  /// Flat indices i with nonzero weight, ascending.
  const std::vector<int>& occupied() const { return occupied_; }
  /// Column k holds phi_k restricted to occupied(), in the same order.
  const Eigen::MatrixXd& compact_atoms() const { return compact_; }

  /// Restricts a flattened block to the occupied positions.
  Eigen::VectorXd compact(const Eigen::VectorXd& flat) const;
  /// Inverse of compact(); unoccupied positions become zero.
  Eigen::VectorXd scatter(const Eigen::VectorXd& compacted) const;

 private:
  const BasisDictionary* dict_;
  Mask mask_;
  Eigen::VectorXd masked_norms_;
  std::vector<int> occupied_;
  Eigen::MatrixXd compact_;
};

MaskedDictionary mask_dictionary(const BasisDictionary& dict, const Mask& mask);

}  // namespace rose
