#pragma once

#include "rose/types.hpp"

#include <cstdint>
#include <string>

namespace rose::harness {

/// Single-channel frame. samples(x, y), x horizontal, matching block layout.
struct Frame {
  Eigen::MatrixXd samples;
  int bit_depth = 8;

  int width() const { return static_cast<int>(samples.rows()); }
  int height() const { return static_cast<int>(samples.cols()); }
  double max_value() const { return static_cast<double>((1 << bit_depth) - 1); }
};

/// Reads a binary (P5) 8-bit PGM.
Frame read_pgm(const std::string& path);
void write_pgm(const Frame& frame, const std::string& path);

/// Any nonzero pixel of the PGM is occupied.
Mask read_mask_pgm(const std::string& path);
void write_mask_pgm(const Mask& mask, const std::string& path);

/// Extends frame (edge replication) and mask (zeros) to multiples of block_size.
void pad_to_block_multiple(Frame& frame, Mask& mask, int block_size);

struct SyntheticScene {
  Frame frame;
  Mask mask;
};

/// Smooth gradient with noise, overlaid by randomly placed elliptical blobs
/// with their own offset and shading. The mask marks blob pixels and is
/// rasterised on a 4x4 grid.
SyntheticScene generate_synthetic(int width, int height, std::uint64_t seed, int blob_count);

}  // namespace rose::harness
