#include "rose/dictionary.hpp"

#include <array>
#include <mutex>
#include <optional>

namespace rose {

BasisDictionary::BasisDictionary(TransformType type)
    : type_(type), block_size_(block_width(type)) {
  const auto& t = transform_matrix(type);
  const int b = block_size_;
  atoms_.resize(b * b, b * b);
  CoeffBlock unit = CoeffBlock::Zero(b, b);
  for (int k2 = 0; k2 < b; ++k2) {
    for (int k1 = 0; k1 < b; ++k1) {
      unit(k1, k2) = 1.0;
      atoms_.col(k1 + b * k2) = flatten(inverse_2d(unit, t));
      unit(k1, k2) = 0.0;
    }
  }
}

BasisDictionary build_dictionary(TransformType type) { return BasisDictionary(type); }

const BasisDictionary& dictionary(TransformType type) {
  static std::array<std::once_flag, 5> flags;
  static std::array<std::optional<BasisDictionary>, 5> cache;
  const auto slot = static_cast<std::size_t>(type);
  std::call_once(flags[slot], [&] { cache[slot].emplace(type); });
  return *cache[slot];
}

MaskedDictionary::MaskedDictionary(const BasisDictionary& dict, const Mask& mask)
    : dict_(&dict), mask_(mask) {
  const int b = dict.block_size();
  require(mask.rows() == b && mask.cols() == b, "mask shape does not match dictionary");

  const auto weights = flatten(mask.weights());
  for (int i = 0; i < weights.size(); ++i) {
    if (weights[i] != 0.0) occupied_.push_back(i);
  }
  masked_norms_ = dict.atoms().array().square().matrix().transpose() * weights;

  compact_.resize(static_cast<Eigen::Index>(occupied_.size()), dict.size());
  for (std::size_t r = 0; r < occupied_.size(); ++r) {
    compact_.row(static_cast<Eigen::Index>(r)) = dict.atoms().row(occupied_[r]);
  }
}

Eigen::VectorXd MaskedDictionary::compact(const Eigen::VectorXd& flat) const {
  require(flat.size() == dict_->atoms().rows(), "vector length does not match block");
  Eigen::VectorXd out(static_cast<Eigen::Index>(occupied_.size()));
  for (std::size_t r = 0; r < occupied_.size(); ++r) out[static_cast<Eigen::Index>(r)] = flat[occupied_[r]];
  return out;
}

Eigen::VectorXd MaskedDictionary::scatter(const Eigen::VectorXd& compacted) const {
  require(compacted.size() == static_cast<Eigen::Index>(occupied_.size()),
          "compacted length does not match occupied count");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dict_->atoms().rows());
  for (std::size_t r = 0; r < occupied_.size(); ++r) out[occupied_[r]] = compacted[static_cast<Eigen::Index>(r)];
  return out;
}

MaskedDictionary mask_dictionary(const BasisDictionary& dict, const Mask& mask) {
  return MaskedDictionary(dict, mask);
}

}  // namespace rose
