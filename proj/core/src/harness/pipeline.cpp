#include "rose/harness/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

namespace rose::harness {

namespace {

double dc_prediction(const Eigen::MatrixXd& recon, int x0, int y0, int b, double fallback) {
  double sum = 0.0;
  int n = 0;
  if (y0 > 0) {
    for (int x = x0; x < x0 + b; ++x) sum += recon(x, y0 - 1);
    n += b;
  }
  if (x0 > 0) {
    for (int y = y0; y < y0 + b; ++y) sum += recon(x0 - 1, y);
    n += b;
  }
  return n == 0 ? fallback : std::round(sum / n);
}

CodingConfig coding_config(const FrameJob& job, int qp) {
  CodingConfig cfg;
  cfg.transform = dct_for_width(job.block_size);
  cfg.quant = QuantParams::from_qp(qp);
  cfg.bits_model = job.bits_model;
  cfg.log_model = job.log_model;
  cfg.stat_model = job.stat_model;
  cfg.rose_applies_rm = job.rose_applies_rm;
  return cfg;
}

}  // namespace

FrameResult run_frame(const FrameJob& job, MethodKind method, int qp) {
  const int b = job.block_size;
  require(job.frame.width() == job.mask.rows() && job.frame.height() == job.mask.cols(),
          "frame and mask dimensions differ");
  Frame frame = job.frame;
  Mask mask = job.mask;
  pad_to_block_multiple(frame, mask, b);

  const CodingConfig cfg = coding_config(job, qp);
  const auto& t = transform_matrix(cfg.transform);
  const double max_value = frame.max_value();
  const double mid = std::exp2(frame.bit_depth - 1);

  FrameResult result;
  result.frame = job.name;
  result.method = method;
  result.qp = qp;
  result.block_size = b;
  result.reconstruction = frame;
  auto& recon = result.reconstruction.samples;

  for (int y0 = 0; y0 < frame.height(); y0 += b) {
    for (int x0 = 0; x0 < frame.width(); x0 += b) {
      const Mask tile = mask.tile(x0, y0, b);
      const double p = dc_prediction(recon, x0, y0, b, mid);
      const Block x = frame.samples.block(x0, y0, b, b);
      const Block q = Block::Constant(b, b, p) - x;

      BlockStat stat;
      stat.x = x0;
      stat.y = y0;
      stat.mixed = tile.is_mixed();
      stat.occupied = tile.occupied_count();

      BlockCodingOutcome outcome;
      if (method != MethodKind::kRef && tile.none_occupied()) {
        // Nothing to preserve: the residual is dropped entirely.
        outcome.levels = LevelBlock::Zero(b, b);
        outcome.reconstruction = Block::Zero(b, b);
      } else if (is_rose(method) && tile.all_occupied()) {
        // ROSE only acts on mixed blocks; occupied blocks are coded as usual.
        outcome = score_coefficients(forward_2d(q, t), q, tile, cfg, method);
      } else {
        outcome = encode(method, q, tile, cfg);
      }

      const Block decoded =
          (Block::Constant(b, b, p) - outcome.reconstruction).array().round().min(max_value).max(0.0);
      recon.block(x0, y0, b, b) = decoded;

      stat.bits = outcome.estimated_bits;
      stat.masked_sse = masked_sse(x, decoded, tile);
      stat.levels = std::move(outcome.levels);

      ++result.blocks;
      if (stat.mixed) ++result.mixed_blocks;
      result.bits_est += stat.bits;
      result.masked_sse += stat.masked_sse;
      result.block_stats.push_back(std::move(stat));
    }
  }

  const int occupied = mask.occupied_count();
  if (occupied == 0) {
    result.psnr_occupied = 0.0;
  } else if (result.masked_sse <= 0.0) {
    result.psnr_occupied = kLosslessPsnr;
  } else {
    result.psnr_occupied = std::min(
        kLosslessPsnr, 10.0 * std::log10(max_value * max_value * occupied / result.masked_sse));
  }
  return result;
}

std::vector<FrameResult> run_frame(const FrameJob& job) {
  require(!job.qps.empty() && !job.methods.empty(), "job needs at least one qp and method");
  struct Task {
    int qp;
    MethodKind method;
  };
  std::vector<Task> tasks;
  for (int qp : job.qps) {
    for (auto m : job.methods) tasks.push_back({qp, m});
  }
  std::vector<FrameResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      results[i] = run_frame(job, tasks[i].method, tasks[i].qp);
    }
  };
  const std::size_t threads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return results;
}

double mixed_block_share(const Mask& mask, int block_size) {
  require(block_size > 0 && mask.rows() % block_size == 0 && mask.cols() % block_size == 0,
          "mask dimensions must be multiples of the block size");
  long mixed_pixels = 0;
  for (int y0 = 0; y0 < mask.cols(); y0 += block_size) {
    for (int x0 = 0; x0 < mask.rows(); x0 += block_size) {
      if (mask.tile(x0, y0, block_size).is_mixed()) mixed_pixels += block_size * block_size;
    }
  }
  return static_cast<double>(mixed_pixels) / (static_cast<double>(mask.rows()) * mask.cols());
}

std::string results_csv_header() {
  return "frame,method,qp,block_size,blocks,mixed_blocks,bits_est,masked_sse,psnr_occupied";
}

std::string to_csv_row(const FrameResult& r) {
  std::ostringstream os;
  os << r.frame << ',' << to_string(r.method) << ',' << r.qp << ',' << r.block_size << ','
     << r.blocks << ',' << r.mixed_blocks << ',' << std::setprecision(10) << r.bits_est << ','
     << r.masked_sse << ',' << r.psnr_occupied;
  return os.str();
}

void write_results_csv(std::ostream& out, const std::vector<FrameResult>& results) {
  out << results_csv_header() << '\n';
  for (const auto& r : results) out << to_csv_row(r) << '\n';
}

}  // namespace rose::harness
