#include "rose/rose.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rose {

void RoseConfig::validate() const {
  require(quant.qstep > 0.0, "qstep must be positive");
  require(!max_iterations_override || *max_iterations_override >= 0,
          "iteration override must be non-negative");
  require(!lambda_override || *lambda_override >= 0.0, "lambda override must be non-negative");
}

int analyze_density(const Block& s, const RoseConfig& cfg) {
  const auto& t = transform_matrix(cfg.transform);
  return density(quantize(forward_2d(s, t), cfg.quant.qstep, cfg.quant.deadzone));
}

Projection project_coefficients(const Eigen::VectorXd& residual_m, const MaskedDictionary& mdict) {
  require(residual_m.size() == static_cast<Eigen::Index>(mdict.occupied().size()),
          "residual length does not match occupied count");
  const auto& norms = mdict.masked_norms();
  Projection p{mdict.compact_atoms().transpose() * residual_m,
               std::vector<char>(static_cast<std::size_t>(mdict.size()), 0)};
  for (int k = 0; k < mdict.size(); ++k) {
    if (norms[k] <= kExcludedNormThreshold) {
      p.excluded[static_cast<std::size_t>(k)] = 1;
      p.coeffs[k] = 0.0;
    } else {
      p.coeffs[k] /= norms[k];
    }
  }
  return p;
}

CoeffBlock to_coeff_block(const SparseModel& model, int block_size) {
  CoeffBlock out = CoeffBlock::Zero(block_size, block_size);
  for (std::size_t j = 0; j < model.selected.size(); ++j) {
    const int k = model.selected[j];
    out(k % block_size, k / block_size) = model.values[j];
  }
  return out;
}

namespace {

LevelBlock selection_levels(const SparseModel& model, int block_size, double qstep,
                            double deadzone) {
  LevelBlock levels = LevelBlock::Zero(block_size, block_size);
  for (std::size_t j = 0; j < model.selected.size(); ++j) {
    const int k = model.selected[j];
    levels(k % block_size, k / block_size) = quantize_value(model.values[j], qstep, deadzone);
  }
  return levels;
}

double candidate_value(double c, double qstep, double deadzone, SelectionError mode) {
  return mode == SelectionError::kQuantized ? quantize_value(c, qstep, deadzone) * qstep : c;
}

/// argmin_k error[k] + lambda * bits(k) over admissible candidates.
int pick_candidate(const Eigen::VectorXd& error, const Projection& projection,
                   const std::vector<char>& taken, double lambda, const IncrementalRate& rate,
                   double qstep, double deadzone) {
  int best = -1;
  double best_cost = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < error.size(); ++k) {
    const auto slot = static_cast<std::size_t>(k);
    if (projection.excluded[slot] || taken[slot]) continue;
    double cost = error[k];
    if (lambda != 0.0) {
      const int level = quantize_value(projection.coeffs[k], qstep, deadzone);
      cost += lambda * rate.with_level(static_cast<int>(k), level);
    }
    // Near-equal costs are ties; the smallest index wins.
    const double tie = 1e-10 * std::max(1.0, std::abs(best_cost));
    if (best < 0 || cost < best_cost - tie) {
      best = static_cast<int>(k);
      best_cost = cost;
    }
  }
  return best;
}

/// Whether adding candidate k beats keeping the current selection.
bool lowers_cost(int k, const Eigen::VectorXd& error, const Projection& projection, double energy,
                 double lambda, const IncrementalRate& rate, const RoseConfig& cfg) {
  const int level = quantize_value(projection.coeffs[k], cfg.quant.qstep, cfg.quant.deadzone);
  const double with_k = error[k] + lambda * rate.with_level(k, level);
  const double current = energy + lambda * rate.base_bits();
  return with_k < current - 1e-10 * std::max(1.0, current);
}

std::vector<char> taken_flags(const SparseModel& model, int dict_size) {
  std::vector<char> taken(static_cast<std::size_t>(dict_size), 0);
  for (int k : model.selected) taken[static_cast<std::size_t>(k)] = 1;
  return taken;
}

Eigen::VectorXd solve_min_norm(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  cod.setThreshold(kRankTolerance);
  return cod.solve(b);
}

void check_shapes(const Block& s, const Mask& mask, const RoseConfig& cfg) {
  cfg.validate();
  const int b = block_width(cfg.transform);
  require(s.rows() == b && s.cols() == b, "block shape does not match transform");
  require(mask.rows() == b && mask.cols() == b, "mask shape does not match block");
}

int iteration_budget(const Block& s, const RoseConfig& cfg) {
  return cfg.max_iterations_override ? *cfg.max_iterations_override : analyze_density(s, cfg);
}

void finish(RoseResult& result, const RoseConfig& cfg) {
  const int b = block_width(cfg.transform);
  result.coeffs = to_coeff_block(result.model, b);
  result.estimated_bits = estimate_bits(
      quantize(result.coeffs, cfg.quant.qstep, cfg.quant.deadzone), cfg.rate_model);
}

}  // namespace

int select_coefficient(const Eigen::VectorXd& residual_m, const Projection& projection,
                       const MaskedDictionary& mdict, double lambda, const SparseModel& current,
                       const RateModelParams& rate_model, double qstep, double deadzone,
                       SelectionError mode) {
  require(residual_m.size() == static_cast<Eigen::Index>(mdict.occupied().size()),
          "residual length does not match occupied count");
  const int b = mdict.basis().block_size();
  const auto& atoms = mdict.compact_atoms();

  Eigen::VectorXd error(mdict.size());
  for (int k = 0; k < mdict.size(); ++k) {
    const double c = candidate_value(projection.coeffs[k], qstep, deadzone, mode);
    error[k] = (residual_m - c * atoms.col(k)).squaredNorm();
  }
  IncrementalRate rate(rate_model, b);
  rate.reset(selection_levels(current, b, qstep, deadzone));
  const int k = pick_candidate(error, projection, taken_flags(current, mdict.size()), lambda,
                               rate, qstep, deadzone);
  if (k < 0) throw std::runtime_error("no admissible candidate for selection");
  return k;
}

Eigen::VectorXd joint_ls_update(std::span<const int> selected, const MaskedDictionary& mdict,
                                const Eigen::VectorXd& s_m) {
  require(!selected.empty(), "joint update needs at least one selected index");
  require(s_m.size() == static_cast<Eigen::Index>(mdict.occupied().size()),
          "signal length does not match occupied count");
  Eigen::MatrixXd a(s_m.size(), static_cast<Eigen::Index>(selected.size()));
  for (std::size_t j = 0; j < selected.size(); ++j) {
    a.col(static_cast<Eigen::Index>(j)) = mdict.compact_atoms().col(selected[j]);
  }
  return solve_min_norm(a, s_m);
}

RoseResult rose(const Block& s, const Mask& mask, const RoseConfig& cfg) {
  check_shapes(s, mask, cfg);
  const auto& dict = dictionary(cfg.transform);
  const int b = dict.block_size();
  const int dict_size = dict.size();
  const auto& atoms = dict.atoms();
  const double lambda = cfg.lambda();
  const double qstep = cfg.quant.qstep;

  RoseResult result;
  result.budget = iteration_budget(s, cfg);
  const Eigen::VectorXd signal = flatten(s);
  const Eigen::VectorXd w = flatten(mask.weights());
  const Eigen::VectorXd sqrt_w = w.cwiseSqrt();
  const double signal_energy = (signal.array().square() * w.array()).sum();

  if (result.budget == 0 || mask.none_occupied()) {
    finish(result, cfg);
    return result;
  }

  Eigen::VectorXd denominators(dict_size);
  for (int k = 0; k < dict_size; ++k) {
    denominators[k] = (atoms.col(k).array().square() * w.array()).sum();
  }

  Projection projection{Eigen::VectorXd(dict_size),
                        std::vector<char>(static_cast<std::size_t>(dict_size), 0)};
  std::vector<char> taken(static_cast<std::size_t>(dict_size), 0);
  IncrementalRate rate(cfg.rate_model, b);
  Eigen::VectorXd residual = signal;
  Eigen::VectorXd error(dict_size);
  Eigen::MatrixXd weighted_selected(signal.size(), 0);
  const Eigen::VectorXd weighted_signal = sqrt_w.cwiseProduct(signal);
  double energy = signal_energy;
  auto& model = result.model;

  while (model.iterations_used < result.budget && energy > 1e-12 * signal_energy) {
    // Projection of the current residual onto every atom under the mask.
    for (int k = 0; k < dict_size; ++k) {
      const auto slot = static_cast<std::size_t>(k);
      projection.excluded[slot] = denominators[k] <= kExcludedNormThreshold;
      double numerator = 0.0;
      for (Eigen::Index i = 0; i < signal.size(); ++i) numerator += residual[i] * atoms(i, k) * w[i];
      projection.coeffs[k] = projection.excluded[slot] ? 0.0 : numerator / denominators[k];
    }
    // Masked model error per candidate.
    for (int k = 0; k < dict_size; ++k) {
      const double c =
          candidate_value(projection.coeffs[k], qstep, cfg.quant.deadzone, cfg.selection_error);
      double e = 0.0;
      for (Eigen::Index i = 0; i < signal.size(); ++i) {
        const double d = residual[i] - c * atoms(i, k);
        e += d * d * w[i];
      }
      error[k] = e;
    }
    rate.reset(selection_levels(model, b, qstep, cfg.quant.deadzone));
    const int k = pick_candidate(error, projection, taken, lambda, rate, qstep, cfg.quant.deadzone);
    if (k < 0) break;
    if (cfg.stop_without_gain && !lowers_cost(k, error, projection, energy, lambda, rate, cfg)) break;

    taken[static_cast<std::size_t>(k)] = 1;
    model.selected.push_back(k);
    weighted_selected.conservativeResize(Eigen::NoChange, weighted_selected.cols() + 1);
    weighted_selected.col(weighted_selected.cols() - 1) = sqrt_w.cwiseProduct(atoms.col(k));
    const Eigen::VectorXd values = solve_min_norm(weighted_selected, weighted_signal);
    model.values.assign(values.data(), values.data() + values.size());
    ++model.iterations_used;

    Eigen::VectorXd approximation = Eigen::VectorXd::Zero(signal.size());
    for (std::size_t j = 0; j < model.selected.size(); ++j) {
      approximation += model.values[j] * atoms.col(model.selected[j]);
    }
    residual = signal - approximation;
    energy = (residual.array().square() * w.array()).sum();

    IterationTrace trace{k, energy, 0.0};
    const double scale = std::sqrt(signal_energy);
    for (int sel : model.selected) {
      const double corr = std::abs((atoms.col(sel).array() * residual.array() * w.array()).sum());
      trace.max_relative_correlation = std::max(trace.max_relative_correlation, corr / scale);
    }
    result.trace.push_back(trace);
  }

  result.masked_error = energy;
  finish(result, cfg);
  return result;
}

RoseResult rose_fast(const Block& s, const Mask& mask, const RoseConfig& cfg) {
  check_shapes(s, mask, cfg);
  require(mask.is_binary(), "fast ROSE requires a binary mask");
  const auto& dict = dictionary(cfg.transform);
  const int b = dict.block_size();
  const int dict_size = dict.size();
  const double lambda = cfg.lambda();
  const double qstep = cfg.quant.qstep;

  RoseResult result;
  result.budget = iteration_budget(s, cfg);
  if (result.budget == 0 || mask.none_occupied()) {
    finish(result, cfg);
    return result;
  }

  const MaskedDictionary mdict(dict, mask);
  const auto& atoms = mdict.compact_atoms();
  const auto& norms = mdict.masked_norms();
  const Eigen::VectorXd signal = mdict.compact(flatten(s));
  const double signal_energy = signal.squaredNorm();

  std::vector<char> taken(static_cast<std::size_t>(dict_size), 0);
  IncrementalRate rate(cfg.rate_model, b);
  Eigen::VectorXd residual = signal;
  Eigen::VectorXd error(dict_size);
  Eigen::MatrixXd selected_atoms(signal.size(), 0);
  double energy = signal_energy;
  auto& model = result.model;

  while (model.iterations_used < result.budget && energy > 1e-12 * signal_energy) {
    const Eigen::VectorXd numerators = atoms.transpose() * residual;
    Projection projection{numerators, std::vector<char>(static_cast<std::size_t>(dict_size), 0)};
    for (int k = 0; k < dict_size; ++k) {
      if (norms[k] <= kExcludedNormThreshold) {
        projection.excluded[static_cast<std::size_t>(k)] = 1;
        projection.coeffs[k] = 0.0;
        error[k] = energy;
      } else {
        projection.coeffs[k] = numerators[k] / norms[k];
        // ||r - c phi||^2 expanded via <phi, r> and ||phi||^2.
        const double c =
            candidate_value(projection.coeffs[k], qstep, cfg.quant.deadzone, cfg.selection_error);
        error[k] = energy - 2.0 * c * numerators[k] + c * c * norms[k];
      }
    }
    rate.reset(selection_levels(model, b, qstep, cfg.quant.deadzone));
    const int k = pick_candidate(error, projection, taken, lambda, rate, qstep, cfg.quant.deadzone);
    if (k < 0) break;
    if (cfg.stop_without_gain && !lowers_cost(k, error, projection, energy, lambda, rate, cfg)) break;

    taken[static_cast<std::size_t>(k)] = 1;
    model.selected.push_back(k);
    selected_atoms.conservativeResize(Eigen::NoChange, selected_atoms.cols() + 1);
    selected_atoms.col(selected_atoms.cols() - 1) = atoms.col(k);
    const Eigen::VectorXd values = solve_min_norm(selected_atoms, signal);
    model.values.assign(values.data(), values.data() + values.size());
    ++model.iterations_used;

    residual = signal - selected_atoms * values;
    energy = residual.squaredNorm();

    IterationTrace trace{k, energy, 0.0};
    const Eigen::VectorXd corr = selected_atoms.transpose() * residual;
    trace.max_relative_correlation = corr.cwiseAbs().maxCoeff() / std::sqrt(signal_energy);
    result.trace.push_back(trace);
  }

  result.masked_error = energy;
  finish(result, cfg);
  return result;
}

}  // namespace rose
