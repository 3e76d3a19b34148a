#include "rose/baselines.hpp"
#include "rose/harness/bd_rate.hpp"
#include "rose/harness/frame.hpp"
#include "rose/harness/pipeline.hpp"
#include "rose/harness/rate_samples.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace rose;
using namespace rose::harness;

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, sep);) cells.push_back(cell);
  return cells;
}

/// Square matrix from a CSV file: one line per row y, one column per x.
Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    for (const auto& cell : split(line, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index y = 0; y < n; ++y) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(y)].size()) != n) {
      throw std::runtime_error(path + ": expected a square matrix");
    }
    for (Eigen::Index x = 0; x < n; ++x) m(x, y) = rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
  }
  return m;
}

void print_matrix(const char* title, const Eigen::MatrixXd& m) {
  std::printf("%s\n", title);
  for (Eigen::Index y = 0; y < m.cols(); ++y) {
    for (Eigen::Index x = 0; x < m.rows(); ++x) std::printf("%10.3f", m(x, y));
    std::printf("\n");
  }
}

std::vector<MethodKind> parse_methods(const std::vector<std::string>& names) {
  std::vector<MethodKind> out;
  for (const auto& n : names) out.push_back(parse_method(n));
  return out;
}

void apply_params_file(const std::string& path, FrameJob& job) {
  const auto params = load_params(path);
  if (params.kind == RateModelKind::kLog) {
    job.log_model = params;
  } else {
    job.stat_model = params;
    job.bits_model = params;
  }
}

struct SceneOptions {
  std::string frame;
  std::string mask;
  int width = 256;
  int height = 256;
  int blob_count = 16;
  std::uint64_t seed = 1;
};

void add_scene_options(CLI::App* cmd, SceneOptions& o) {
  cmd->add_option("--frame", o.frame, "Input frame (binary 8-bit PGM)");
  cmd->add_option("--mask", o.mask, "Occupancy mask (PGM, nonzero = occupied)");
  cmd->add_option("--width", o.width, "Synthetic frame width")->check(CLI::PositiveNumber);
  cmd->add_option("--height", o.height, "Synthetic frame height")->check(CLI::PositiveNumber);
  cmd->add_option("--blob-count", o.blob_count, "Synthetic blob count")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", o.seed, "Synthetic scene seed");
}

/// Loads the frame and mask, or synthesises both when no frame is given.
void load_scene(const SceneOptions& o, FrameJob& job) {
  job.seed = o.seed;
  if (o.frame.empty()) {
    auto scene = generate_synthetic(o.width, o.height, o.seed, o.blob_count);
    job.name = "synthetic_" + std::to_string(o.seed);
    job.frame = std::move(scene.frame);
    job.mask = std::move(scene.mask);
    return;
  }
  job.name = o.frame;
  job.frame = read_pgm(o.frame);
  job.mask = o.mask.empty() ? Mask::full(job.frame.width(), job.frame.height()) : read_mask_pgm(o.mask);
}

struct CsvRow {
  std::string method;
  int qp = 0;
  RdPoint point;
};

std::vector<CsvRow> read_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  const auto header = split(line, ',');
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* needed : {"method", "qp", "bits_est", "psnr_occupied"}) {
    if (!col.count(needed)) throw std::runtime_error(path + ": missing column " + needed);
  }
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) throw std::runtime_error(path + ": wrong column count");
    rows.push_back({cells[col["method"]], std::stoi(cells[col["qp"]]),
                    {std::stod(cells[col["bits_est"]]), std::stod(cells[col["psnr_occupied"]])}});
  }
  return rows;
}

std::vector<RdPoint> curve(const std::vector<CsvRow>& rows, const std::string& method) {
  std::vector<RdPoint> out;
  for (const auto& r : rows) {
    if (method.empty() || r.method == method) out.push_back(r.point);
  }
  if (out.empty()) throw std::runtime_error("no rows for method " + method);
  return out;
}

int cmd_run(const SceneOptions& scene, const std::vector<int>& qps,
            const std::vector<std::string>& methods, int block_size,
            const std::vector<std::string>& params, bool no_rm, const std::string& out) {
  FrameJob job;
  load_scene(scene, job);
  job.block_size = block_size;
  job.qps = qps;
  job.methods = parse_methods(methods);
  job.rose_applies_rm = !no_rm;
  for (const auto& p : params) apply_params_file(p, job);

  const auto results = run_frame(job);
  if (out.empty() || out == "-") {
    write_results_csv(std::cout, results);
  } else {
    std::ofstream file(out);
    if (!file) throw std::runtime_error("cannot write " + out);
    write_results_csv(file, results);
  }
  std::fprintf(stderr, "%s: %dx%d, block %d, mixed-block pixel share %.1f%%\n", job.name.c_str(),
               job.frame.width(), job.frame.height(), block_size,
               100.0 * [&] {
                 Frame f = job.frame;
                 Mask m = job.mask;
                 pad_to_block_multiple(f, m, block_size);
                 return mixed_block_share(m, block_size);
               }());
  return 0;
}

int cmd_gen(const SceneOptions& o, const std::string& frame_out, const std::string& mask_out) {
  const auto scene = generate_synthetic(o.width, o.height, o.seed, o.blob_count);
  write_pgm(scene.frame, frame_out);
  write_mask_pgm(scene.mask, mask_out);
  std::printf("wrote %s and %s (%.1f%% occupied)\n", frame_out.c_str(), mask_out.c_str(),
              100.0 * scene.mask.occupied_count() / (static_cast<double>(o.width) * o.height));
  return 0;
}

int cmd_extract(const SceneOptions& scene, const std::vector<int>& qps, int block_size,
                const std::string& out) {
  FrameJob job;
  load_scene(scene, job);
  job.block_size = block_size;
  job.qps = qps;
  const auto samples = extract_rate_samples(job);
  write_samples_csv(out, samples);
  std::printf("wrote %zu samples to %s\n", samples.size(), out.c_str());
  return 0;
}

int cmd_fit(const std::string& samples_path, const std::string& model, const std::string& out) {
  const auto samples = read_samples_csv(samples_path);
  const auto kind = parse_rate_model_kind(model);
  const auto params = fit_params(samples, kind);
  const auto defaults = RateModelParams::defaults(kind);
  std::printf("%s model fitted on %zu samples\n", to_string(kind).c_str(), samples.size());
  std::printf("  alpha %.6f beta %.6f gamma %.6f delta %.6f\n", params.alpha, params.beta,
              params.gamma, params.delta);
  std::printf("  mean relative error: fitted %.4f, defaults %.4f\n",
              mean_relative_error(samples, params), mean_relative_error(samples, defaults));
  if (!out.empty()) save_params(params, out);
  return 0;
}

int cmd_bdrate(const std::string& anchor, const std::string& test, const std::string& anchor_method,
               const std::string& test_method) {
  const auto a = curve(read_results_csv(anchor), anchor_method);
  const auto t = curve(read_results_csv(test), test_method);
  std::printf("BD-rate %.3f %%\n", bd_rate(a, t));
  return 0;
}

int cmd_block(const std::string& input, const std::string& mask_path, int qp,
              std::optional<double> lambda, std::optional<int> n) {
  const Block s = read_matrix_csv(input);
  const int b = static_cast<int>(s.rows());
  const Mask mask(mask_path.empty() ? Eigen::MatrixXd::Ones(b, b) : read_matrix_csv(mask_path));

  CodingConfig cfg;
  cfg.transform = dct_for_width(b);
  cfg.quant = QuantParams::from_qp(qp);
  cfg.lambda_override = lambda;
  cfg.max_iterations_override = n;

  const auto& t = transform_matrix(cfg.transform);
  const Block input_rm = mask.all_occupied() ? s : Block(s.cwiseProduct(mask.weights()));
  auto rc = cfg.rose_config(MethodKind::kRoseS);
  const auto result = mask.is_binary() ? rose_fast(input_rm, mask, rc) : rose::rose(input_rm, mask, rc);

  std::printf("%s, qp %d, qstep %.4f, lambda %.4f, budget N = %d, occupied %d/%d\n",
              to_string(cfg.transform).c_str(), qp, cfg.quant.qstep, cfg.lambda(), result.budget,
              mask.occupied_count(), b * b);
  print_matrix("S (transform of s):", forward_2d(s, t));
  print_matrix("S~ (ROSES):", result.coeffs);
  std::printf("selected:");
  for (int k : result.model.selected) std::printf(" %d", k);
  std::printf("\n\n%-6s %10s %14s %14s\n", "method", "levels", "distortion", "rd_cost");
  for (auto m : kAllMethods) {
    const auto o = encode(m, s, mask, cfg);
    std::printf("%-6s %10d %14.3f %14.3f  (%.2f bits)\n", to_string(m).c_str(), density(o.levels),
                o.masked_distortion, o.rd_cost, o.estimated_bits);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate-constrained selective extrapolation for partially occupied blocks"};
  app.require_subcommand(1);

  SceneOptions scene;
  std::vector<int> qps{22, 27, 32, 37, 42};
  std::vector<std::string> methods{"REF", "RM", "OD", "ROSEL", "ROSES"};
  std::vector<std::string> params_files;
  int block_size = 16;
  bool no_rm = false;
  std::string out;

  auto* run = app.add_subcommand("run", "Code a frame with the selected methods and QPs");
  add_scene_options(run, scene);
  run->add_option("--qp", qps, "QP list")->check(CLI::Range(kMinQp, kMaxQp));
  run->add_option("--method", methods, "Methods: REF RM OD ROSEL ROSES");
  run->add_option("--block-size", block_size, "Block size (4, 8, 16 or 32)");
  run->add_option("--rate-model-params", params_files, "Rate model parameter JSON file(s)")
      ->check(CLI::ExistingFile);
  run->add_flag("--no-rm", no_rm, "Do not zero unoccupied residual samples before ROSE");
  run->add_option("--out", out, "Result CSV (default: stdout)");

  std::string frame_out = "frame.pgm", mask_out = "mask.pgm";
  auto* gen = app.add_subcommand("gen", "Write a synthetic frame and occupancy mask");
  add_scene_options(gen, scene);
  gen->add_option("--frame-out", frame_out, "Output frame PGM");
  gen->add_option("--mask-out", mask_out, "Output mask PGM");

  std::string samples_out = "samples.csv";
  auto* extract = app.add_subcommand("extract", "Extract rate-model training samples from a frame");
  add_scene_options(extract, scene);
  extract->add_option("--qp", qps, "QP list")->check(CLI::Range(kMinQp, kMaxQp));
  extract->add_option("--block-size", block_size, "Block size (4, 8, 16 or 32)");
  extract->add_option("--out", samples_out, "Sample CSV");

  std::string samples, model = "stat", params_out;
  auto* fit = app.add_subcommand("fit", "Fit rate model parameters to samples");
  fit->add_option("--samples", samples, "Sample CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("--model", model, "log or stat");
  fit->add_option("--out", params_out, "Parameter JSON to write");

  std::string anchor, test, anchor_method, test_method;
  auto* bd = app.add_subcommand("bdrate", "Bjontegaard delta rate between two result CSVs");
  bd->add_option("--anchor", anchor, "Anchor result CSV")->required()->check(CLI::ExistingFile);
  bd->add_option("--test", test, "Test result CSV")->required()->check(CLI::ExistingFile);
  bd->add_option("--anchor-method", anchor_method, "Use only rows of this method from the anchor");
  bd->add_option("--test-method", test_method, "Use only rows of this method from the test");

  std::string block_input, block_mask;
  int block_qp = 32;
  std::optional<double> lambda;
  std::optional<int> iterations;
  auto* block = app.add_subcommand("block", "Inspect one block: spectra, ROSE model and costs");
  block->add_option("--input", block_input, "Residual block CSV (one line per row)")
      ->required()
      ->check(CLI::ExistingFile);
  block->add_option("--mask", block_mask, "Mask CSV of the same shape (weights in [0, 1])")
      ->check(CLI::ExistingFile);
  block->add_option("--qp", block_qp, "QP")->check(CLI::Range(kMinQp, kMaxQp));
  block->add_option("--lambda", lambda, "Override the Lagrange multiplier");
  block->add_option("--iterations", iterations, "Override the coefficient budget N");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(scene, qps, methods, block_size, params_files, no_rm, out);
    if (*gen) return cmd_gen(scene, frame_out, mask_out);
    if (*extract) return cmd_extract(scene, qps, block_size, samples_out);
    if (*fit) return cmd_fit(samples, model, params_out);
    if (*bd) return cmd_bdrate(anchor, test, anchor_method, test_method);
    if (*block) return cmd_block(block_input, block_mask, block_qp, lambda, iterations);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
