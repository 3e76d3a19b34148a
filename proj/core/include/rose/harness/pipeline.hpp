#pragma once

#include "rose/baselines.hpp"
#include "rose/harness/frame.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rose::harness {

struct FrameJob {
  std::string name = "frame";
  Frame frame;
  Mask mask;
  int block_size = 16;
  std::vector<int> qps = {32};
  std::vector<MethodKind> methods = {std::begin(kAllMethods), std::end(kAllMethods)};
  std::uint64_t seed = 0;
  RateModelParams bits_model = RateModelParams::stat_defaults();
  RateModelParams log_model = RateModelParams::log_defaults();
  RateModelParams stat_model = RateModelParams::stat_defaults();
  bool rose_applies_rm = true;
};

struct BlockStat {
  int x = 0;
  int y = 0;
  bool mixed = false;
  int occupied = 0;
  double bits = 0.0;
  double masked_sse = 0.0;  // occupied pixels, after reconstruction
  LevelBlock levels;
};

struct FrameResult {
  std::string frame;
  MethodKind method = MethodKind::kRef;
  int qp = 0;
  int block_size = 0;
  int blocks = 0;
  int mixed_blocks = 0;
  double bits_est = 0.0;
  double masked_sse = 0.0;
  double psnr_occupied = 0.0;
  std::vector<BlockStat> block_stats;
  Frame reconstruction;
};

/// PSNR reported when the occupied region is reconstructed without error.
inline constexpr double kLosslessPsnr = 100.0;

/// Codes the frame once with one method at one QP. Blocks are visited in
/// raster order with DC prediction from reconstructed neighbours.
FrameResult run_frame(const FrameJob& job, MethodKind method, int qp);

/// Every (qp, method) pair of the job, ordered qp-major. Pairs are
/// independent and run on worker threads.
std::vector<FrameResult> run_frame(const FrameJob& job);

/// Share of frame pixels lying in blocks with both occupied and unoccupied pixels.
double mixed_block_share(const Mask& mask, int block_size);

std::string results_csv_header();
std::string to_csv_row(const FrameResult& r);
void write_results_csv(std::ostream& out, const std::vector<FrameResult>& results);

}  // namespace rose::harness
