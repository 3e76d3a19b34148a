#include "rose/harness/bd_rate.hpp"

#include "rose/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rose::harness {

Pchip::Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  require(x_.size() == y_.size() && x_.size() >= 2, "pchip needs at least two points");
  const std::size_t n = x_.size();
  for (std::size_t k = 0; k + 1 < n; ++k) require(x_[k + 1] > x_[k], "pchip abscissae must increase");

  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x_[k + 1] - x_[k];
    delta[k] = (y_[k + 1] - y_[k]) / h[k];
  }
  d_.assign(n, 0.0);
  if (n == 2) {
    d_[0] = d_[1] = delta[0];
    return;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    d_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  // One-sided three-point end slopes, clipped to keep the shape.
  auto end_slope = [](double h0, double h1, double m0, double m1) {
    double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (std::signbit(d) != std::signbit(m0) || m0 == 0.0) {
      d = 0.0;
    } else if (std::signbit(m0) != std::signbit(m1) && std::abs(d) > 3.0 * std::abs(m0)) {
      d = 3.0 * m0;
    }
    return d;
  };
  d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

double Pchip::eval_interval(std::size_t k, double x) const {
  const double h = x_[k + 1] - x_[k];
  const double t = (x - x_[k]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y_[k] + (t3 - 2 * t2 + t) * h * d_[k] +
         (-2 * t3 + 3 * t2) * y_[k + 1] + (t3 - t2) * h * d_[k + 1];
}

double Pchip::operator()(double x) const {
  require(x >= x_.front() && x <= x_.back(), "pchip evaluation outside data range");
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t k = static_cast<std::size_t>(std::distance(x_.begin(), it));
  k = std::clamp<std::size_t>(k, 1, x_.size() - 1) - 1;
  return eval_interval(k, x);
}

double Pchip::integrate(double a, double b) const {
  require(a >= x_.front() && b <= x_.back() && a <= b, "integration range outside data");
  // Two-point Gauss-Legendre is exact for the cubic pieces.
  const double node = 1.0 / std::sqrt(3.0);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < x_.size(); ++k) {
    const double lo = std::max(a, x_[k]);
    const double hi = std::min(b, x_[k + 1]);
    if (hi <= lo) continue;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    total += half * (eval_interval(k, mid - half * node) + eval_interval(k, mid + half * node));
  }
  return total;
}

namespace {

Pchip log_rate_curve(std::span<const RdPoint> points) {
  require(points.size() >= 4, "bd-rate needs at least 4 points per curve");
  std::vector<RdPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const RdPoint& a, const RdPoint& b) { return a.rate < b.rate; });
  std::vector<double> q, r;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    require(sorted[k].rate > 0.0 && std::isfinite(sorted[k].rate), "rates must be positive");
    if (k > 0 && !(sorted[k].quality > sorted[k - 1].quality && sorted[k].rate > sorted[k - 1].rate)) {
      throw std::invalid_argument("rd curve is not monotonic (quality must rise with rate)");
    }
    q.push_back(sorted[k].quality);
    r.push_back(std::log10(sorted[k].rate));
  }
  return Pchip(std::move(q), std::move(r));
}

std::pair<double, double> quality_range(std::span<const RdPoint> points) {
  auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                      [](const RdPoint& a, const RdPoint& b) { return a.quality < b.quality; });
  return {lo->quality, hi->quality};
}

}  // namespace

double bd_rate(std::span<const RdPoint> anchor, std::span<const RdPoint> test) {
  const Pchip anchor_curve = log_rate_curve(anchor);
  const Pchip test_curve = log_rate_curve(test);
  const auto [a_lo, a_hi] = quality_range(anchor);
  const auto [t_lo, t_hi] = quality_range(test);
  const double lo = std::max(a_lo, t_lo);
  const double hi = std::min(a_hi, t_hi);
  if (!(hi > lo)) throw std::invalid_argument("rd curves have no quality overlap");
  const double anchor_mean = anchor_curve.integrate(lo, hi) / (hi - lo);
  const double test_mean = test_curve.integrate(lo, hi) / (hi - lo);
  return (std::pow(10.0, test_mean - anchor_mean) - 1.0) * 100.0;
}

}  // namespace rose::harness
