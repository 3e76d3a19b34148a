#pragma once

#include "rose/types.hpp"

namespace rose {

inline constexpr int kMinQp = 0;
inline constexpr int kMaxQp = 51;
/// Dead-zone rounding offset (intra convention).
inline constexpr double kDeadZoneOffset = 1.0 / 3.0;

/// qstep = 2^((qp - 4) / 6).
double qstep_from_qp(int qp);
/// HM-style default: 0.57 * 2^((qp - 12) / 3).
double lambda_from_qp(int qp);

struct QuantParams {
  int qp = 32;
  double qstep = 0.0;
  double lambda = 0.0;
  double deadzone = kDeadZoneOffset;

  /// Derives qstep and lambda from qp with the default formulas.
  static QuantParams from_qp(int qp);
};

LevelBlock quantize(const CoeffBlock& coeffs, double qstep, double deadzone = kDeadZoneOffset);
CoeffBlock dequantize(const LevelBlock& levels, double qstep);
int quantize_value(double coeff, double qstep, double deadzone = kDeadZoneOffset);

/// Number of nonzero levels (l0 norm).
int density(const LevelBlock& levels);

double sse(const Block& a, const Block& b);
/// sum_i (a_i - b_i)^2 * m_i.
double masked_sse(const Block& a, const Block& b, const Mask& mask);

inline double rd_cost(double distortion, double bits, double lambda) {
  return distortion + lambda * bits;
}

}  // namespace rose
