#pragma once

#include <span>
#include <vector>

namespace rose::harness {

struct RdPoint {
  double rate = 0.0;
  double quality = 0.0;  // dB
};

/// Bjontegaard delta rate in percent (negative = savings of `test`).
/// log10(rate) is interpolated over quality with monotone piecewise cubic
/// Hermite polynomials and averaged over the overlapping quality range.
double bd_rate(std::span<const RdPoint> anchor, std::span<const RdPoint> test);

/// Shape-preserving cubic Hermite interpolant (Fritsch-Carlson slopes).
class Pchip {
 public:
  Pchip(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  /// Exact integral over [a, b] within the data range.
  double integrate(double a, double b) const;

 private:
  double eval_interval(std::size_t k, double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

}  // namespace rose::harness
