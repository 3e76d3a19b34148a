#pragma once

#include "rose/harness/pipeline.hpp"
#include "rose/rate_models.hpp"

#include <string>
#include <vector>

namespace rose::harness {

/// Order-0 Exp-Golomb code length of n >= 0.
int exp_golomb_length(int n);

/// Stand-in for an entropy coder: levels in 4x4 zig-zag scan order
/// (subblocks raster), each nonzero level coded as ue(zero run) +
/// ue(|level| - 1) + sign bit, preceded by ue(count).
double proxy_bits(const LevelBlock& levels);

/// Codes the job's frame conventionally at every QP of the job and returns
/// one (levels, proxy bits) sample per block with nonzero levels.
std::vector<RateSample> extract_rate_samples(const FrameJob& job);

void write_samples_csv(const std::string& path, const std::vector<RateSample>& samples);
std::vector<RateSample> read_samples_csv(const std::string& path);

}  // namespace rose::harness
