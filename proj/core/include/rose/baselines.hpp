#pragma once

#include "rose/rose.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rose {

enum class MethodKind { kRef, kRm, kOd, kRoseL, kRoseS };

inline constexpr MethodKind kAllMethods[] = {MethodKind::kRef, MethodKind::kRm, MethodKind::kOd,
                                             MethodKind::kRoseL, MethodKind::kRoseS};

std::string to_string(MethodKind method);
MethodKind parse_method(std::string_view name);
inline bool is_rose(MethodKind m) { return m == MethodKind::kRoseL || m == MethodKind::kRoseS; }

struct CodingConfig {
  TransformType transform = TransformType::kDct8;
  QuantParams quant = QuantParams::from_qp(32);
  /// Rate model used to account bits for REF, RM and OD.
  RateModelParams bits_model = RateModelParams::stat_defaults();
  RateModelParams log_model = RateModelParams::log_defaults();
  RateModelParams stat_model = RateModelParams::stat_defaults();
  /// Zero unoccupied residual samples before ROSE (ablation switch).
  bool rose_applies_rm = true;
  std::optional<int> max_iterations_override;
  std::optional<double> lambda_override;

  double lambda() const { return lambda_override.value_or(quant.lambda); }
  /// Rate model a method is charged with.
  const RateModelParams& rate_model_for(MethodKind method) const;
  RoseConfig rose_config(MethodKind method) const;
};

struct BlockCodingOutcome {
  MethodKind method = MethodKind::kRef;
  LevelBlock levels;
  Block reconstruction;  // decoded residual
  double masked_distortion = 0.0;  // full-block SSE for REF
  double estimated_bits = 0.0;
  double rd_cost = 0.0;
  /// ROSE selection (empty for conventional methods).
  std::vector<int> selected;
};

BlockCodingOutcome encode_ref(const Block& s, const Mask& mask, const CodingConfig& cfg);
BlockCodingOutcome encode_rm(const Block& s, const Mask& mask, const CodingConfig& cfg);
BlockCodingOutcome encode_od(const Block& s, const Mask& mask, const CodingConfig& cfg);
BlockCodingOutcome encode_rose(const Block& s, const Mask& mask, const CodingConfig& cfg,
                               MethodKind kind);
BlockCodingOutcome encode(MethodKind method, const Block& s, const Mask& mask,
                          const CodingConfig& cfg);

inline constexpr int kOracleMaxCoefficients = 3;

/// Exhaustive search over every index subset of size <= n_max of a 4x4
/// dictionary: masked least squares, quantization, then masked distortion
/// plus lambda * bits under the rate model of `kind`. Ties go to the
/// lexicographically smallest subset.
BlockCodingOutcome oracle_exhaustive(const Block& s, const Mask& mask, const CodingConfig& cfg,
                                     int n_max, MethodKind kind = MethodKind::kRoseS);

/// Quantize, reconstruct and cost an arbitrary coefficient block the way
/// encode_rose does. Shared by the oracle so both are scored identically.
BlockCodingOutcome score_coefficients(const CoeffBlock& coeffs, const Block& s, const Mask& mask,
                                      const CodingConfig& cfg, MethodKind kind);

}  // namespace rose
