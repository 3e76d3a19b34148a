#pragma once

#include "rose/dictionary.hpp"
#include "rose/quant_rd.hpp"
#include "rose/rate_models.hpp"

#include <optional>
#include <span>
#include <vector>

namespace rose {

/// Coefficient value used for the distortion term while selecting: the
/// dequantized candidate (what the decoder would see) or the raw projection.
enum class SelectionError { kQuantized, kProjected };

struct RoseConfig {
  TransformType transform = TransformType::kDct8;
  QuantParams quant = QuantParams::from_qp(32);
  RateModelParams rate_model = RateModelParams::stat_defaults();
  /// Replaces the density-derived iteration budget N.
  std::optional<int> max_iterations_override;
  /// Replaces quant.lambda; zero turns the selection into pure distortion.
  std::optional<double> lambda_override;
  SelectionError selection_error = SelectionError::kQuantized;
  /// Stop before N once no candidate lowers masked error + lambda * bits.
  bool stop_without_gain = true;

  double lambda() const { return lambda_override.value_or(quant.lambda); }
  void validate() const;
};

struct SparseModel {
  std::vector<int> selected;  // k in selection order
  std::vector<double> values;  // jointly estimated coefficients, same order
  int iterations_used = 0;
};

/// State after one joint update.
struct IterationTrace {
  int selected = -1;
  /// Masked residual energy after the update.
  double residual_energy = 0.0;
  /// max over selected k of |<phi_k^m, r^m>| / ||s^m||.
  double max_relative_correlation = 0.0;
};

struct RoseResult {
  SparseModel model;
  CoeffBlock coeffs;  // selected values scattered into a B x B block
  double masked_error = 0.0;
  double estimated_bits = 0.0;
  int budget = 0;  // N
  std::vector<IterationTrace> trace;
};

/// Preliminary per-atom projection coefficients for the current residual.
struct Projection {
  Eigen::VectorXd coeffs;
  std::vector<char> excluded;  // masked norm numerically zero
};

inline constexpr double kExcludedNormThreshold = 1e-12;
inline constexpr double kRankTolerance = 1e-10;

/// Number of nonzero levels when the block is coded conventionally.
int analyze_density(const Block& s, const RoseConfig& cfg);

/// c_k = <r^m, phi_k^m> / ||phi_k^m||^2 over compacted vectors.
Projection project_coefficients(const Eigen::VectorXd& residual_m, const MaskedDictionary& mdict);

/// Index minimising masked error + lambda * bits(current selection plus k).
/// Candidates are quantized with qstep before rate evaluation; the error
/// uses the dequantized or raw candidate value per `mode`. Ties go to the
/// smallest k. Throws if every candidate is excluded or taken.
int select_coefficient(const Eigen::VectorXd& residual_m, const Projection& projection,
                       const MaskedDictionary& mdict, double lambda, const SparseModel& current,
                       const RateModelParams& rate_model, double qstep,
                       double deadzone = kDeadZoneOffset,
                       SelectionError mode = SelectionError::kQuantized);

/// Masked least squares over the selected atoms (minimum-norm when the
/// masked atoms are linearly dependent).
Eigen::VectorXd joint_ls_update(std::span<const int> selected, const MaskedDictionary& mdict,
                                const Eigen::VectorXd& s_m);

/// Reference implementation on full-length vectors; accepts mask weights
/// in [0, 1].
RoseResult rose(const Block& s, const Mask& mask, const RoseConfig& cfg);

/// Same contract as rose() for binary masks, working only on occupied
/// samples with precomputed masked norms.
RoseResult rose_fast(const Block& s, const Mask& mask, const RoseConfig& cfg);

/// Scatters a sparse model into a coefficient block.
CoeffBlock to_coeff_block(const SparseModel& model, int block_size);

}  // namespace rose
