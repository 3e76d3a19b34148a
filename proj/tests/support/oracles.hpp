#pragma once

// Independent reference computations for tests. Nothing here calls into the
// transform, dictionary or ROSE code paths it is used to check.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

namespace rose::testing {

/// Fig. 2 signals, printed to four decimals.
inline const std::vector<double> kFig2S0 = {0.4904, 0.4157, 0.2778, 0.0975,
                                            -0.0975, -0.2778, -0.4157, -0.4904};
inline const std::vector<double> kFig2S1Spectrum = {0.1734, 0.7595, 0.2265, -0.2039,
                                                    0.1734, -0.1362, 0.0938, -0.0478};

inline double dct2_entry(int n, int mu, int i) {
  const double scale = std::sqrt((mu == 0 ? 1.0 : 2.0) / n);
  return scale * std::cos(std::numbers::pi * (2 * i + 1) * mu / (2.0 * n));
}

/// Direct quadruple sum S(mu1, mu2) = sum T(mu1, i1) T(mu2, i2) s(i1, i2).
inline Eigen::MatrixXd brute_force_forward(const Eigen::MatrixXd& t, const Eigen::MatrixXd& s) {
  const auto n = t.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index m1 = 0; m1 < n; ++m1)
    for (Eigen::Index m2 = 0; m2 < n; ++m2)
      for (Eigen::Index i1 = 0; i1 < n; ++i1)
        for (Eigen::Index i2 = 0; i2 < n; ++i2) out(m1, m2) += t(m1, i1) * t(m2, i2) * s(i1, i2);
  return out;
}

/// Spatial basis function for coefficient (k1, k2): outer product of rows.
inline Eigen::MatrixXd separable_basis(const Eigen::MatrixXd& t, int k1, int k2) {
  return t.row(k1).transpose() * t.row(k2);
}

/// Explicit Gram-matrix inversion of the masked normal equations.
inline Eigen::VectorXd normal_equations(const std::vector<Eigen::VectorXd>& atoms,
                                        const Eigen::VectorXd& weights, const Eigen::VectorXd& s) {
  const auto n = static_cast<Eigen::Index>(atoms.size());
  Eigen::MatrixXd gram(n, n);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      gram(a, b) = (atoms[a].array() * weights.array() * atoms[b].array()).sum();
    }
    rhs[a] = (atoms[a].array() * weights.array() * s.array()).sum();
  }
  return gram.inverse() * rhs;
}

/// Keeps the n entries of largest magnitude (ties: smaller flat index).
inline Eigen::MatrixXd n_largest(const Eigen::MatrixXd& coeffs, int n) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(coeffs.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(coeffs.data()[a]) > std::abs(coeffs.data()[b]);
  });
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(coeffs.rows(), coeffs.cols());
  for (int j = 0; j < n && j < static_cast<int>(order.size()); ++j) {
    out.data()[order[static_cast<std::size_t>(j)]] = coeffs.data()[order[static_cast<std::size_t>(j)]];
  }
  return out;
}

inline Eigen::MatrixXd random_block(std::mt19937_64& rng, int b, double sigma = 20.0) {
  std::normal_distribution<double> d(0.0, sigma);
  Eigen::MatrixXd out(b, b);
  for (Eigen::Index i = 0; i < out.size(); ++i) out.data()[i] = d(rng);
  return out;
}

/// Residual-like block: a few low-frequency cosines plus weak noise, so the
/// coded coefficient count stays moderate at typical QPs.
inline Eigen::MatrixXd smooth_block(std::mt19937_64& rng, int b, double amplitude = 60.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::normal_distribution<double> noise(0.0, 2.0);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(b, b);
  const double fx = 0.5 + 1.5 * (u(rng) + 1.0), fy = 0.5 + 1.5 * (u(rng) + 1.0);
  const double px = 3.0 * u(rng), py = 3.0 * u(rng);
  const double a0 = amplitude * u(rng), a1 = amplitude * u(rng), a2 = 0.5 * amplitude * u(rng);
  for (int i1 = 0; i1 < b; ++i1) {
    for (int i2 = 0; i2 < b; ++i2) {
      const double x = static_cast<double>(i1) / b, y = static_cast<double>(i2) / b;
      out(i1, i2) = a0 + a1 * std::cos(std::numbers::pi * fx * x + px) +
                    a2 * std::cos(std::numbers::pi * fy * y + py) + noise(rng);
    }
  }
  return out;
}

/// Binary mask with occupancy drawn uniformly in [lo, hi] (at least one
/// occupied and one unoccupied sample when the range allows it).
inline Eigen::MatrixXd random_mask(std::mt19937_64& rng, int b, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  const int n = b * b;
  int occupied = static_cast<int>(std::lround(u(rng) * n));
  occupied = std::clamp(occupied, 1, n - 1);
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(b, b);
  for (int j = 0; j < occupied; ++j) m.data()[idx[static_cast<std::size_t>(j)]] = 1.0;
  return m;
}

/// Spatially coherent mask: occupied where a random half-plane test passes.
inline Eigen::MatrixXd random_edge_mask(std::mt19937_64& rng, int b) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double angle = 2.0 * std::numbers::pi * u(rng);
  const double offset = (u(rng) - 0.5) * 0.8 * b;
  Eigen::MatrixXd m(b, b);
  for (int i1 = 0; i1 < b; ++i1)
    for (int i2 = 0; i2 < b; ++i2) {
      const double x = i1 - (b - 1) / 2.0, y = i2 - (b - 1) / 2.0;
      m(i1, i2) = x * std::cos(angle) + y * std::sin(angle) > offset ? 1.0 : 0.0;
    }
  return m;
}

/// Fig. 2 1-D signal embedded in an 8x8 block: every column scaled by the
/// vertical DC function, so the 2-D spectrum is the 1-D one in row mu2 = 0.
inline Eigen::MatrixXd embed_1d(const std::vector<double>& s) {
  const int b = static_cast<int>(s.size());
  Eigen::MatrixXd out(b, b);
  for (int i1 = 0; i1 < b; ++i1)
    for (int i2 = 0; i2 < b; ++i2) out(i1, i2) = s[static_cast<std::size_t>(i1)] / std::sqrt(b);
  return out;
}

}  // namespace rose::testing
