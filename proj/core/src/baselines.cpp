#include "rose/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rose {

std::string to_string(MethodKind method) {
  switch (method) {
    case MethodKind::kRef:
      return "REF";
    case MethodKind::kRm:
      return "RM";
    case MethodKind::kOd:
      return "OD";
    case MethodKind::kRoseL:
      return "ROSEL";
    case MethodKind::kRoseS:
      return "ROSES";
  }
  return "?";
}

MethodKind parse_method(std::string_view name) {
  for (auto m : kAllMethods) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown method: " + std::string(name));
}

const RateModelParams& CodingConfig::rate_model_for(MethodKind method) const {
  switch (method) {
    case MethodKind::kRoseL:
      return log_model;
    case MethodKind::kRoseS:
      return stat_model;
    default:
      return bits_model;
  }
}

RoseConfig CodingConfig::rose_config(MethodKind method) const {
  RoseConfig rc;
  rc.transform = transform;
  rc.quant = quant;
  rc.rate_model = rate_model_for(method);
  rc.max_iterations_override = max_iterations_override;
  rc.lambda_override = lambda_override;
  return rc;
}

namespace {

void check(const Block& s, const Mask& mask, const CodingConfig& cfg) {
  const int b = block_width(cfg.transform);
  require(s.rows() == b && s.cols() == b, "block shape does not match transform");
  require(mask.rows() == b && mask.cols() == b, "mask shape does not match block");
}

BlockCodingOutcome code_conventionally(MethodKind method, const Block& input, const Block& s,
                                       const Mask& mask, bool masked_distortion,
                                       const CodingConfig& cfg) {
  const auto& t = transform_matrix(cfg.transform);
  BlockCodingOutcome out;
  out.method = method;
  out.levels = quantize(forward_2d(input, t), cfg.quant.qstep, cfg.quant.deadzone);
  out.reconstruction = inverse_2d(dequantize(out.levels, cfg.quant.qstep), t);
  out.masked_distortion =
      masked_distortion ? masked_sse(s, out.reconstruction, mask) : sse(s, out.reconstruction);
  out.estimated_bits = estimate_bits(out.levels, cfg.rate_model_for(method));
  out.rd_cost = rd_cost(out.masked_distortion, out.estimated_bits, cfg.lambda());
  return out;
}

Block apply_mask(const Block& s, const Mask& mask) {
  return s.cwiseProduct(mask.weights());
}

}  // namespace

BlockCodingOutcome encode_ref(const Block& s, const Mask& mask, const CodingConfig& cfg) {
  check(s, mask, cfg);
  return code_conventionally(MethodKind::kRef, s, s, mask, false, cfg);
}

BlockCodingOutcome encode_rm(const Block& s, const Mask& mask, const CodingConfig& cfg) {
  check(s, mask, cfg);
  return code_conventionally(MethodKind::kRm, apply_mask(s, mask), s, mask, true, cfg);
}

BlockCodingOutcome encode_od(const Block& s, const Mask& mask, const CodingConfig& cfg) {
  check(s, mask, cfg);
  return code_conventionally(MethodKind::kOd, s, s, mask, true, cfg);
}

BlockCodingOutcome score_coefficients(const CoeffBlock& coeffs, const Block& s, const Mask& mask,
                                      const CodingConfig& cfg, MethodKind kind) {
  const auto& t = transform_matrix(cfg.transform);
  BlockCodingOutcome out;
  out.method = kind;
  out.levels = quantize(coeffs, cfg.quant.qstep, cfg.quant.deadzone);
  out.reconstruction = inverse_2d(dequantize(out.levels, cfg.quant.qstep), t);
  out.masked_distortion = masked_sse(s, out.reconstruction, mask);
  out.estimated_bits = estimate_bits(out.levels, cfg.rate_model_for(kind));
  out.rd_cost = rd_cost(out.masked_distortion, out.estimated_bits, cfg.lambda());
  return out;
}

BlockCodingOutcome encode_rose(const Block& s, const Mask& mask, const CodingConfig& cfg,
                               MethodKind kind) {
  check(s, mask, cfg);
  require(is_rose(kind), "encode_rose needs ROSEL or ROSES");
  const Block input = cfg.rose_applies_rm && !mask.all_occupied() ? apply_mask(s, mask) : s;
  const auto rc = cfg.rose_config(kind);
  const RoseResult result = mask.is_binary() ? rose_fast(input, mask, rc) : rose(input, mask, rc);
  auto out = score_coefficients(result.coeffs, s, mask, cfg, kind);
  out.selected = result.model.selected;
  return out;
}

BlockCodingOutcome encode(MethodKind method, const Block& s, const Mask& mask,
                          const CodingConfig& cfg) {
  switch (method) {
    case MethodKind::kRef:
      return encode_ref(s, mask, cfg);
    case MethodKind::kRm:
      return encode_rm(s, mask, cfg);
    case MethodKind::kOd:
      return encode_od(s, mask, cfg);
    case MethodKind::kRoseL:
    case MethodKind::kRoseS:
      return encode_rose(s, mask, cfg, method);
  }
  throw std::invalid_argument("unknown method");
}

BlockCodingOutcome oracle_exhaustive(const Block& s, const Mask& mask, const CodingConfig& cfg,
                                     int n_max, MethodKind kind) {
  check(s, mask, cfg);
  require(block_width(cfg.transform) == 4, "oracle supports 4x4 blocks only");
  require(n_max >= 0 && n_max <= kOracleMaxCoefficients, "oracle supports n_max in [0, 3]");
  require(is_rose(kind), "oracle scores with a ROSE rate model");

  const auto& dict = dictionary(cfg.transform);
  const MaskedDictionary mdict(dict, mask);
  const Eigen::VectorXd s_m = mdict.compact(flatten(s));
  const int b = dict.block_size();
  const int candidates = dict.size();

  BlockCodingOutcome best = score_coefficients(CoeffBlock::Zero(b, b), s, mask, cfg, kind);
  std::vector<int> best_subset;

  std::vector<int> subset;
  auto consider = [&] {
    CoeffBlock coeffs = CoeffBlock::Zero(b, b);
    if (!subset.empty() && s_m.size() > 0) {
      const Eigen::VectorXd values = joint_ls_update(subset, mdict, s_m);
      for (std::size_t j = 0; j < subset.size(); ++j) {
        coeffs(subset[j] % b, subset[j] / b) = values[static_cast<Eigen::Index>(j)];
      }
    }
    auto outcome = score_coefficients(coeffs, s, mask, cfg, kind);
    const double tie = 1e-10 * std::max(1.0, std::abs(best.rd_cost));
    const bool better = outcome.rd_cost < best.rd_cost - tie;
    const bool tied_smaller = std::abs(outcome.rd_cost - best.rd_cost) <= tie &&
                              std::lexicographical_compare(subset.begin(), subset.end(),
                                                           best_subset.begin(), best_subset.end());
    if (better || tied_smaller) {
      best = std::move(outcome);
      best_subset = subset;
    }
  };

  // Depth-first enumeration visits subsets in lexicographic order.
  auto recurse = [&](auto&& self, int start) -> void {
    if (static_cast<int>(subset.size()) == n_max) return;
    for (int k = start; k < candidates; ++k) {
      subset.push_back(k);
      consider();
      self(self, k + 1);
      subset.pop_back();
    }
  };
  recurse(recurse, 0);

  best.selected = best_subset;
  return best;
}

}  // namespace rose
