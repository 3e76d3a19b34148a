#include "rose/rate_models.hpp"

#include <json.hpp>

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rose {

std::string to_string(RateModelKind kind) { return kind == RateModelKind::kLog ? "log" : "stat"; }

RateModelKind parse_rate_model_kind(std::string_view name) {
  if (name == "log") return RateModelKind::kLog;
  if (name == "stat") return RateModelKind::kStat;
  throw std::invalid_argument("unknown rate model: " + std::string(name));
}

std::string to_json(const RateModelParams& params) {
  nlohmann::ordered_json j;
  j["model_kind"] = to_string(params.kind);
  j["alpha"] = params.alpha;
  j["beta"] = params.beta;
  j["gamma"] = params.gamma;
  j["delta"] = params.delta;
  return j.dump(2);
}

RateModelParams params_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  RateModelParams p;
  p.kind = parse_rate_model_kind(j.at("model_kind").get<std::string>());
  p.alpha = j.at("alpha").get<double>();
  p.beta = j.at("beta").get<double>();
  p.gamma = j.at("gamma").get<double>();
  p.delta = j.at("delta").get<double>();
  require(std::isfinite(p.alpha) && std::isfinite(p.beta) && std::isfinite(p.gamma) &&
              std::isfinite(p.delta),
          "rate model parameters must be finite");
  return p;
}

RateModelParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return params_from_json(buffer.str());
}

void save_params(const RateModelParams& params, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(params) << '\n';
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

namespace {

constexpr std::array<ScanPos, 16> make_zigzag() {
  std::array<ScanPos, 16> scan{};
  int n = 0;
  for (int diag = 0; diag <= 6; ++diag) {
    const int lo = diag > 3 ? diag - 3 : 0;
    const int hi = diag < 3 ? diag : 3;
    // Even diagonals run bottom-left to top-right, odd ones the other way.
    for (int step = 0; step <= hi - lo; ++step) {
      const int row = diag % 2 == 0 ? hi - step : lo + step;
      scan[n++] = ScanPos{diag - row, row};
    }
  }
  return scan;
}

constexpr std::array<ScanPos, 16> kZigzag = make_zigzag();

constexpr std::array<int, 16> make_zigzag_index() {
  std::array<int, 16> index{};
  for (int s = 0; s < 16; ++s) index[kZigzag[s].mu1 + 4 * kZigzag[s].mu2] = s;
  return index;
}

constexpr std::array<int, 16> kZigzagIndex = make_zigzag_index();

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double log_term(int magnitude, const RateModelParams& p) {
  return p.alpha * magnitude + p.beta * logistic(p.gamma * magnitude - p.delta);
}

void require_block(const LevelBlock& levels) {
  require(levels.rows() == levels.cols() && levels.rows() >= 4 && levels.rows() % 4 == 0,
          "level block must be square with a size that is a multiple of 4");
}

}  // namespace

std::span<const ScanPos, 16> zigzag_4x4() { return kZigzag; }

int zigzag_index(int mu1, int mu2) { return kZigzagIndex[(mu1 & 3) + 4 * (mu2 & 3)]; }

CoeffStats compute_stats(const LevelBlock& levels) {
  require_block(levels);
  const int subblocks = static_cast<int>(levels.rows()) / 4;
  CoeffStats stats;
  stats.n_greater_one.reserve(static_cast<std::size_t>(subblocks * subblocks));
  for (int sb2 = 0; sb2 < subblocks; ++sb2) {
    for (int sb1 = 0; sb1 < subblocks; ++sb1) {
      int last = -1;
      int n1 = 0;
      for (int s = 0; s < 16; ++s) {
        const int level = levels(4 * sb1 + kZigzag[s].mu1, 4 * sb2 + kZigzag[s].mu2);
        if (level == 0) continue;
        const int magnitude = std::abs(level);
        ++stats.count;
        stats.log_sum += std::log2(static_cast<double>(magnitude));
        if (magnitude > 1) ++n1;
        last = s;
      }
      if (last >= 0) stats.last_scan_sum += last;
      stats.entropy_sum += binary_entropy(n1 / 16.0);
      stats.n_greater_one.push_back(n1);
    }
  }
  return stats;
}

double estimate_bits_log(std::span<const int> magnitudes, const RateModelParams& params) {
  double bits = 0.0;
  for (int m : magnitudes) {
    require(m > 0, "log rate model requires positive magnitudes");
    bits += log_term(m, params);
  }
  return bits;
}

double estimate_bits_log(const LevelBlock& levels, const RateModelParams& params) {
  double bits = 0.0;
  for (Eigen::Index i = 0; i < levels.size(); ++i) {
    const int level = levels.data()[i];
    if (level != 0) bits += log_term(std::abs(level), params);
  }
  return bits;
}

double estimate_bits_stat(const CoeffStats& stats, const RateModelParams& params) {
  return params.alpha * stats.count + params.beta * stats.log_sum +
         params.gamma * stats.last_scan_sum + params.delta * stats.entropy_sum;
}

double estimate_bits_stat(const LevelBlock& levels, const RateModelParams& params) {
  return estimate_bits_stat(compute_stats(levels), params);
}

double estimate_bits(const LevelBlock& levels, const RateModelParams& params) {
  return params.kind == RateModelKind::kLog ? estimate_bits_log(levels, params)
                                            : estimate_bits_stat(levels, params);
}

IncrementalRate::IncrementalRate(const RateModelParams& params, int block_size)
    : params_(params), block_size_(block_size), base_(LevelBlock::Zero(block_size, block_size)) {
  require(block_size >= 4 && block_size % 4 == 0, "block size must be a multiple of 4");
}

void IncrementalRate::reset(const LevelBlock& base) {
  require(base.rows() == block_size_ && base.cols() == block_size_, "level block shape mismatch");
  base_ = base;
  base_bits_ = estimate_bits(base_, params_);
}

double IncrementalRate::subblock_terms(int sb1, int sb2, int k_override, int level_override) const {
  int count = 0;
  int last = -1;
  int n1 = 0;
  double log_sum = 0.0;
  for (int s = 0; s < 16; ++s) {
    const int mu1 = 4 * sb1 + kZigzag[s].mu1;
    const int mu2 = 4 * sb2 + kZigzag[s].mu2;
    const int level = mu1 + block_size_ * mu2 == k_override ? level_override : base_(mu1, mu2);
    if (level == 0) continue;
    const int magnitude = std::abs(level);
    ++count;
    log_sum += std::log2(static_cast<double>(magnitude));
    if (magnitude > 1) ++n1;
    last = s;
  }
  return params_.alpha * count + params_.beta * log_sum +
         params_.gamma * (last >= 0 ? last : 0) + params_.delta * binary_entropy(n1 / 16.0);
}

double IncrementalRate::with_level(int k, int level) const {
  const int mu1 = k % block_size_;
  const int mu2 = k / block_size_;
  const int old_level = base_(mu1, mu2);
  if (old_level == level) return base_bits_;
  if (params_.kind == RateModelKind::kLog) {
    double bits = base_bits_;
    if (old_level != 0) bits -= log_term(std::abs(old_level), params_);
    if (level != 0) bits += log_term(std::abs(level), params_);
    return bits;
  }
  const int sb1 = mu1 / 4;
  const int sb2 = mu2 / 4;
  return base_bits_ - subblock_terms(sb1, sb2, -1, 0) + subblock_terms(sb1, sb2, k, level);
}

namespace {

RateModelParams fit_stat(std::span<const RateSample> samples) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd design(n, 4);
  Eigen::VectorXd observed(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto stats = compute_stats(samples[static_cast<std::size_t>(r)].levels);
    design.row(r) << stats.count, stats.log_sum, stats.last_scan_sum, stats.entropy_sum;
    observed[r] = samples[static_cast<std::size_t>(r)].bits;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < 4) {
    throw std::runtime_error("stat rate model fit: design matrix is rank deficient (rank " +
                             std::to_string(qr.rank()) + ")");
  }
  const Eigen::VectorXd theta = qr.solve(observed);
  return {RateModelKind::kStat, theta[0], theta[1], theta[2], theta[3]};
}

struct LogResiduals {
  Eigen::VectorXd residual;
  Eigen::MatrixXd jacobian;
};

LogResiduals log_residuals(std::span<const RateSample> samples, const Eigen::Vector4d& theta) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  LogResiduals out{Eigen::VectorXd(n), Eigen::MatrixXd::Zero(n, 4)};
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& levels = samples[static_cast<std::size_t>(r)].levels;
    double f = 0.0;
    for (Eigen::Index i = 0; i < levels.size(); ++i) {
      const int level = levels.data()[i];
      if (level == 0) continue;
      const double a = std::abs(level);
      const double g = logistic(theta[2] * a - theta[3]);
      const double dg = g * (1.0 - g);
      f += theta[0] * a + theta[1] * g;
      out.jacobian(r, 0) += a;
      out.jacobian(r, 1) += g;
      out.jacobian(r, 2) += theta[1] * dg * a;
      out.jacobian(r, 3) -= theta[1] * dg;
    }
    out.residual[r] = f - samples[static_cast<std::size_t>(r)].bits;
  }
  return out;
}

RateModelParams fit_log(std::span<const RateSample> samples) {
  constexpr int kMaxIterations = 1000;
  constexpr double kTolerance = 1e-9;

  const auto init = RateModelParams::log_defaults();
  Eigen::Vector4d theta(init.alpha, init.beta, init.gamma, init.delta);
  auto current = log_residuals(samples, theta);
  double cost = current.residual.squaredNorm();
  double damping = 1e-3;

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const Eigen::Matrix4d jtj = current.jacobian.transpose() * current.jacobian;
    const Eigen::Vector4d gradient = current.jacobian.transpose() * current.residual;
    if (gradient.lpNorm<Eigen::Infinity>() <= 1e-15 * (1.0 + cost)) {
      return {RateModelKind::kLog, theta[0], theta[1], theta[2], theta[3]};
    }
    Eigen::Matrix4d lhs = jtj;
    lhs.diagonal() += damping * jtj.diagonal().cwiseMax(1e-12);
    const Eigen::Vector4d step = lhs.ldlt().solve(-gradient);
    const Eigen::Vector4d candidate = theta + step;
    auto trial = log_residuals(samples, candidate);
    const double trial_cost = trial.residual.squaredNorm();
    if (std::isfinite(trial_cost) && trial_cost <= cost) {
      const double old_norm = std::sqrt(cost);
      const double new_norm = std::sqrt(trial_cost);
      theta = candidate;
      current = std::move(trial);
      cost = trial_cost;
      damping = std::max(damping / 3.0, 1e-12);
      if (old_norm - new_norm <= kTolerance * std::max(old_norm, 1e-300)) {
        return {RateModelKind::kLog, theta[0], theta[1], theta[2], theta[3]};
      }
    } else {
      damping *= 4.0;
      if (damping > 1e12) break;
    }
  }
  throw std::runtime_error("log rate model fit did not converge");
}

}  // namespace

RateModelParams fit_params(std::span<const RateSample> samples, RateModelKind kind) {
  if (samples.size() < 4) {
    throw std::runtime_error("rate model fit needs at least 4 samples (rank deficient)");
  }
  for (const auto& s : samples) {
    require(std::isfinite(s.bits), "observed bits must be finite");
  }
  return kind == RateModelKind::kStat ? fit_stat(samples) : fit_log(samples);
}

double mean_relative_error(std::span<const RateSample> samples, const RateModelParams& params) {
  require(!samples.empty(), "no samples");
  double total = 0.0;
  for (const auto& s : samples) {
    require(s.bits > 0.0, "observed bits must be positive");
    total += std::abs(estimate_bits(s.levels, params) - s.bits) / s.bits;
  }
  return total / static_cast<double>(samples.size());
}

}  // namespace rose
