#include "rose/harness/frame.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace rose::harness {
namespace {

std::filesystem::path temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "rose_frame_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(Pgm, RoundTrip) {
  Frame f;
  f.samples.resize(5, 3);
  for (Eigen::Index i = 0; i < f.samples.size(); ++i) f.samples.data()[i] = static_cast<double>((i * 37) % 256);
  const auto path = temp_path("rt.pgm").string();
  write_pgm(f, path);
  const Frame g = read_pgm(path);
  EXPECT_EQ(g.width(), 5);
  EXPECT_EQ(g.height(), 3);
  EXPECT_EQ(g.samples, f.samples);
}

TEST(Pgm, RasterOrderAndComments) {
  const auto path = temp_path("comment.pgm").string();
  {
    std::ofstream out(path, std::ios::binary);
    out << "P5\n# made by hand\n3 2\n255\n";
    const unsigned char px[] = {1, 2, 3, 4, 5, 6};
    out.write(reinterpret_cast<const char*>(px), sizeof(px));
  }
  const Frame f = read_pgm(path);
  ASSERT_EQ(f.width(), 3);
  ASSERT_EQ(f.height(), 2);
  EXPECT_EQ(f.samples(2, 0), 3.0);  // first line, third pixel
  EXPECT_EQ(f.samples(0, 1), 4.0);
}

TEST(Pgm, Errors) {
  EXPECT_THROW(read_pgm(temp_path("missing.pgm").string()), std::runtime_error);
  const auto ascii = temp_path("ascii.pgm").string();
  std::ofstream(ascii) << "P2\n1 1\n255\n7\n";
  EXPECT_THROW(read_pgm(ascii), std::runtime_error);
  const auto truncated = temp_path("trunc.pgm").string();
  std::ofstream(truncated, std::ios::binary) << "P5\n4 4\n255\nab";
  EXPECT_THROW(read_pgm(truncated), std::runtime_error);
}

TEST(MaskPgm, NonzeroIsOccupied) {
  const auto path = temp_path("mask.pgm").string();
  {
    std::ofstream out(path, std::ios::binary);
    out << "P5 2 2 255\n";
    const unsigned char px[] = {0, 1, 255, 0};
    out.write(reinterpret_cast<const char*>(px), sizeof(px));
  }
  const Mask m = read_mask_pgm(path);
  EXPECT_EQ(m.occupied_count(), 2);
  EXPECT_EQ(m.weights()(1, 0), 1.0);
  EXPECT_EQ(m.weights()(0, 1), 1.0);
  const auto out = temp_path("mask_out.pgm").string();
  write_mask_pgm(m, out);
  EXPECT_EQ(read_mask_pgm(out).weights(), m.weights());
}

TEST(Padding, ReplicatesFrameAndZeroesMask) {
  Frame f;
  f.samples = Eigen::MatrixXd::Constant(5, 3, 10.0);
  f.samples(4, 2) = 99.0;
  Mask m = Mask::full(5, 3);
  pad_to_block_multiple(f, m, 4);
  EXPECT_EQ(f.width(), 8);
  EXPECT_EQ(f.height(), 4);
  EXPECT_EQ(f.samples(7, 3), 99.0);
  EXPECT_EQ(f.samples(7, 0), 10.0);
  EXPECT_EQ(m.occupied_count(), 15);
  EXPECT_EQ(m.weights()(5, 0), 0.0);

  Mask wrong = Mask::full(2, 2);
  EXPECT_THROW(pad_to_block_multiple(f, wrong, 4), std::invalid_argument);
}

TEST(Synthetic, DeterministicAndOnFourByFourGrid) {
  const auto a = generate_synthetic(64, 48, 7, 3);
  const auto b = generate_synthetic(64, 48, 7, 3);
  EXPECT_EQ(a.frame.samples, b.frame.samples);
  EXPECT_EQ(a.mask.weights(), b.mask.weights());
  EXPECT_NE(generate_synthetic(64, 48, 8, 3).frame.samples, a.frame.samples);
  EXPECT_GE(a.frame.samples.minCoeff(), 0.0);
  EXPECT_LE(a.frame.samples.maxCoeff(), 255.0);
  EXPECT_EQ(a.frame.samples, a.frame.samples.array().round().matrix());
  for (int y = 0; y < 48; y += 4)
    for (int x = 0; x < 64; x += 4) {
      const Mask tile = a.mask.tile(x, y, 4);
      EXPECT_FALSE(tile.is_mixed());
    }
  EXPECT_GT(a.mask.occupied_count(), 0);
  EXPECT_EQ(generate_synthetic(32, 32, 1, 0).mask.occupied_count(), 0);
}

}  // namespace
}  // namespace rose::harness
