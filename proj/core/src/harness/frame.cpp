#include "rose/harness/frame.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>
#include <vector>

namespace rose::harness {

namespace {

struct PgmImage {
  int width = 0;
  int height = 0;
  std::vector<unsigned char> pixels;  // row-major
};

int read_header_int(std::istream& in) {
  int value = 0;
  while (true) {
    in >> std::ws;
    if (in.peek() == '#') {
      std::string comment;
      std::getline(in, comment);
      continue;
    }
    if (!(in >> value)) throw std::runtime_error("malformed PGM header");
    return value;
  }
}

PgmImage read_raw_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string magic;
  in >> magic;
  if (magic != "P5") throw std::runtime_error(path + ": only binary PGM (P5) is supported");
  PgmImage img;
  img.width = read_header_int(in);
  img.height = read_header_int(in);
  const int maxval = read_header_int(in);
  if (img.width <= 0 || img.height <= 0) throw std::runtime_error(path + ": bad dimensions");
  if (maxval <= 0 || maxval > 255) throw std::runtime_error(path + ": only 8-bit PGM is supported");
  in.get();  // single whitespace after maxval
  img.pixels.resize(static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height));
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.pixels.size())) {
    throw std::runtime_error(path + ": truncated pixel data");
  }
  return img;
}

void write_raw_pgm(const std::string& path, int width, int height,
                   const std::vector<unsigned char>& pixels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

}  // namespace

Frame read_pgm(const std::string& path) {
  const auto img = read_raw_pgm(path);
  Frame f;
  f.samples.resize(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) f.samples(x, y) = img.pixels[static_cast<std::size_t>(y * img.width + x)];
  }
  return f;
}

void write_pgm(const Frame& frame, const std::string& path) {
  std::vector<unsigned char> pixels(static_cast<std::size_t>(frame.width() * frame.height()));
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      const double v = std::clamp(std::round(frame.samples(x, y)), 0.0, 255.0);
      pixels[static_cast<std::size_t>(y * frame.width() + x)] = static_cast<unsigned char>(v);
    }
  }
  write_raw_pgm(path, frame.width(), frame.height(), pixels);
}

Mask read_mask_pgm(const std::string& path) {
  const auto img = read_raw_pgm(path);
  Eigen::MatrixXd w(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) w(x, y) = img.pixels[static_cast<std::size_t>(y * img.width + x)] != 0 ? 1.0 : 0.0;
  }
  return Mask(std::move(w));
}

void write_mask_pgm(const Mask& mask, const std::string& path) {
  std::vector<unsigned char> pixels(static_cast<std::size_t>(mask.rows() * mask.cols()));
  for (int y = 0; y < mask.cols(); ++y) {
    for (int x = 0; x < mask.rows(); ++x) {
      pixels[static_cast<std::size_t>(y * mask.rows() + x)] = mask(x, y) != 0.0 ? 255 : 0;
    }
  }
  write_raw_pgm(path, mask.rows(), mask.cols(), pixels);
}

void pad_to_block_multiple(Frame& frame, Mask& mask, int block_size) {
  require(block_size > 0, "block size must be positive");
  require(mask.rows() == frame.width() && mask.cols() == frame.height(),
          "frame and mask dimensions differ");
  const int w = frame.width();
  const int h = frame.height();
  const int pw = (w + block_size - 1) / block_size * block_size;
  const int ph = (h + block_size - 1) / block_size * block_size;
  if (pw == w && ph == h) return;

  Eigen::MatrixXd samples(pw, ph);
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(pw, ph);
  for (int y = 0; y < ph; ++y) {
    for (int x = 0; x < pw; ++x) samples(x, y) = frame.samples(std::min(x, w - 1), std::min(y, h - 1));
  }
  weights.topLeftCorner(w, h) = mask.weights();
  frame.samples = std::move(samples);
  mask = Mask(std::move(weights));
}

SyntheticScene generate_synthetic(int width, int height, std::uint64_t seed, int blob_count) {
  require(width > 0 && height > 0, "frame dimensions must be positive");
  require(blob_count >= 0, "blob count must be non-negative");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 2.0);

  struct Blob {
    double cx, cy, rx, ry, offset, shading;
  };
  const double extent = std::min(width, height);
  std::vector<Blob> blobs;
  for (int b = 0; b < blob_count; ++b) {
    Blob blob{};
    blob.cx = unit(rng) * width;
    blob.cy = unit(rng) * height;
    blob.rx = (0.06 + 0.10 * unit(rng)) * extent;
    blob.ry = (0.06 + 0.10 * unit(rng)) * extent;
    blob.offset = -50.0 + 100.0 * unit(rng);
    blob.shading = 10.0 + 20.0 * unit(rng);
    blobs.push_back(blob);
  }
  auto blob_at = [&](double x, double y) -> int {
    for (std::size_t b = 0; b < blobs.size(); ++b) {
      const double dx = (x - blobs[b].cx) / blobs[b].rx;
      const double dy = (y - blobs[b].cy) / blobs[b].ry;
      if (dx * dx + dy * dy <= 1.0) return static_cast<int>(b);
    }
    return -1;
  };

  SyntheticScene scene;
  scene.frame.samples.resize(width, height);
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(width, height);
  std::vector<int> owner(static_cast<std::size_t>(width * height), -1);

  // Occupancy is defined per 4x4 cell, decided at the cell centre.
  for (int cy = 0; cy < height; cy += 4) {
    for (int cx = 0; cx < width; cx += 4) {
      const int b = blob_at(cx + 2.0, cy + 2.0);
      if (b < 0) continue;
      for (int y = cy; y < std::min(cy + 4, height); ++y) {
        for (int x = cx; x < std::min(cx + 4, width); ++x) {
          weights(x, y) = 1.0;
          owner[static_cast<std::size_t>(y * width + x)] = b;
        }
      }
    }
  }

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double v = 90.0 + 60.0 * x / width + 30.0 * y / height;
      const int b = owner[static_cast<std::size_t>(y * width + x)];
      if (b >= 0) {
        const auto& blob = blobs[static_cast<std::size_t>(b)];
        const double dx = (x - blob.cx) / blob.rx;
        const double dy = (y - blob.cy) / blob.ry;
        v += blob.offset + blob.shading * std::max(0.0, 1.0 - dx * dx - dy * dy);
      }
      v += noise(rng);
      scene.frame.samples(x, y) = std::clamp(std::round(v), 0.0, 255.0);
    }
  }
  scene.mask = Mask(std::move(weights));
  return scene;
}

}  // namespace rose::harness
