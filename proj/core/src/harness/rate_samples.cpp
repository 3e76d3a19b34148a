#include "rose/harness/rate_samples.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace rose::harness {

int exp_golomb_length(int n) {
  require(n >= 0, "exp-golomb codes non-negative integers");
  int prefix = 0;
  while ((n + 1) >> (prefix + 1)) ++prefix;
  return 2 * prefix + 1;
}

double proxy_bits(const LevelBlock& levels) {
  require(levels.rows() == levels.cols() && levels.rows() % 4 == 0, "bad level block shape");
  const int subblocks = static_cast<int>(levels.rows()) / 4;
  const auto scan = zigzag_4x4();
  int count = 0;
  int run = 0;
  double bits = 0.0;
  for (int sb2 = 0; sb2 < subblocks; ++sb2) {
    for (int sb1 = 0; sb1 < subblocks; ++sb1) {
      for (const auto& pos : scan) {
        const int level = levels(4 * sb1 + pos.mu1, 4 * sb2 + pos.mu2);
        if (level == 0) {
          ++run;
          continue;
        }
        bits += exp_golomb_length(run) + exp_golomb_length(std::abs(level) - 1) + 1;
        run = 0;
        ++count;
      }
    }
  }
  return bits + exp_golomb_length(count);
}

std::vector<RateSample> extract_rate_samples(const FrameJob& job) {
  std::vector<RateSample> samples;
  for (int qp : job.qps) {
    const auto result = run_frame(job, MethodKind::kRef, qp);
    for (const auto& block : result.block_stats) {
      if (density(block.levels) == 0) continue;
      samples.push_back({block.levels, proxy_bits(block.levels)});
    }
  }
  return samples;
}

void write_samples_csv(const std::string& path, const std::vector<RateSample>& samples) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "block_size,count,log_sum,last_scan_sum,entropy_sum,levels,bits\n";
  out << std::setprecision(10);
  for (const auto& s : samples) {
    const auto stats = compute_stats(s.levels);
    out << s.levels.rows() << ',' << stats.count << ',' << stats.log_sum << ','
        << stats.last_scan_sum << ',' << stats.entropy_sum << ',';
    for (Eigen::Index i = 0; i < s.levels.size(); ++i) {
      if (i > 0) out << ';';
      out << s.levels.data()[i];
    }
    out << ',' << s.bits << '\n';
  }
}

std::vector<RateSample> read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty sample file");

  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) header.push_back(cell);
  }
  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::runtime_error(path + ": missing column " + name);
  };
  const auto size_col = column("block_size");
  const auto levels_col = column("levels");
  const auto bits_col = column("bits");

  std::vector<RateSample> samples;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != header.size()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": wrong column count");
    }
    const int b = std::stoi(cells[size_col]);
    RateSample s{LevelBlock::Zero(b, b), std::stod(cells[bits_col])};
    std::stringstream ls(cells[levels_col]);
    Eigen::Index i = 0;
    for (std::string v; std::getline(ls, v, ';'); ++i) {
      if (i >= s.levels.size()) throw std::runtime_error(path + ": too many levels");
      s.levels.data()[i] = std::stoi(v);
    }
    if (i != s.levels.size()) throw std::runtime_error(path + ": too few levels");
    samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace rose::harness
