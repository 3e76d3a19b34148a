#pragma once

#include "rose/types.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rose {

enum class RateModelKind { kLog, kStat };

std::string to_string(RateModelKind kind);
RateModelKind parse_rate_model_kind(std::string_view name);

struct RateModelParams {
  RateModelKind kind = RateModelKind::kStat;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  /// Trained defaults shipped with the library.
  static RateModelParams log_defaults() { return {RateModelKind::kLog, 2.410, 4.425, 0.036, 9.427}; }
  static RateModelParams stat_defaults() { return {RateModelKind::kStat, 1.096, 1.747, 6.275, 1.346}; }
  static RateModelParams defaults(RateModelKind kind) {
    return kind == RateModelKind::kLog ? log_defaults() : stat_defaults();
  }

  bool operator==(const RateModelParams&) const = default;
};

std::string to_json(const RateModelParams& params);
RateModelParams params_from_json(std::string_view text);
RateModelParams load_params(const std::string& path);
void save_params(const RateModelParams& params, const std::string& path);

/// Binary entropy H(p) with H(0) = H(1) = 0.
double binary_entropy(double p);

/// Positions (mu1, mu2) of the 4x4 zig-zag scan, scan index order.
struct ScanPos {
  int mu1;
  int mu2;
};
std::span<const ScanPos, 16> zigzag_4x4();
/// Scan index of (mu1, mu2) inside its 4x4 subblock.
int zigzag_index(int mu1, int mu2);

struct CoeffStats {
  int count = 0;
  double log_sum = 0.0;        // L = sum log2 |level|
  int last_scan_sum = 0;       // Z
  double entropy_sum = 0.0;    // E
  std::vector<int> n_greater_one;  // N1 per 4x4 subblock, raster order
};

CoeffStats compute_stats(const LevelBlock& levels);

/// Log model over nonzero magnitudes; throws on a non-positive entry.
double estimate_bits_log(std::span<const int> magnitudes, const RateModelParams& params);
/// Log model over the nonzero entries of a level block.
double estimate_bits_log(const LevelBlock& levels, const RateModelParams& params);
double estimate_bits_stat(const LevelBlock& levels, const RateModelParams& params);
double estimate_bits_stat(const CoeffStats& stats, const RateModelParams& params);
/// Dispatches on params.kind.
double estimate_bits(const LevelBlock& levels, const RateModelParams& params);

/// Rate of a fixed level block plus one extra nonzero level, evaluated in
/// O(16) per query. Used by the coefficient selection loop.
class IncrementalRate {
 public:
  IncrementalRate(const RateModelParams& params, int block_size);

  void reset(const LevelBlock& base);
  double base_bits() const { return base_bits_; }
  /// Estimate for base with levels(k) replaced by `level` (k = mu1 + B * mu2).
  double with_level(int k, int level) const;

 private:
  double subblock_terms(int sb1, int sb2, int k_override, int level_override) const;

  RateModelParams params_;
  int block_size_;
  LevelBlock base_;
  double base_bits_ = 0.0;
};

struct RateSample {
  LevelBlock levels;
  double bits = 0.0;
};

/// Least-squares fit. The stat model is linear in its parameters; the log
/// model is fitted with Levenberg-Marquardt starting at the defaults.
RateModelParams fit_params(std::span<const RateSample> samples, RateModelKind kind);

/// Mean of |estimate - observed| / observed.
double mean_relative_error(std::span<const RateSample> samples, const RateModelParams& params);

}  // namespace rose
