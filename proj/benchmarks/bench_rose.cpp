#include "rose/baselines.hpp"
#include "rose/harness/frame.hpp"
#include "rose/harness/pipeline.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace rose;

struct Instance {
  Block s;
  Mask mask;
};

Instance random_instance(int b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> value(0.0, 12.0);
  std::bernoulli_distribution occupied(0.5);
  Block s(b, b);
  Eigen::MatrixXd w(b, b);
  for (int i = 0; i < b * b; ++i) {
    s(i) = value(rng);
    w(i) = occupied(rng) ? 1.0 : 0.0;
  }
  w(0) = 1.0;
  return {s, Mask(w)};
}

RoseConfig config(int b, int qp) {
  CodingConfig cfg;
  cfg.transform = dct_for_width(b);
  cfg.quant = QuantParams::from_qp(qp);
  return cfg.rose_config(MethodKind::kRoseS);
}

void BM_Forward2d(benchmark::State& state) {
  const int b = static_cast<int>(state.range(0));
  const auto& t = transform_matrix(dct_for_width(b));
  const auto inst = random_instance(b, 1);
  for (auto _ : state) benchmark::DoNotOptimize(forward_2d(inst.s, t));
}
BENCHMARK(BM_Forward2d)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_RoseGeneral(benchmark::State& state) {
  const int b = static_cast<int>(state.range(0));
  const auto inst = random_instance(b, 2);
  const auto rc = config(b, 27);
  for (auto _ : state) benchmark::DoNotOptimize(rose::rose(inst.s, inst.mask, rc));
}
BENCHMARK(BM_RoseGeneral)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_RoseFast(benchmark::State& state) {
  const int b = static_cast<int>(state.range(0));
  const auto inst = random_instance(b, 2);
  const auto rc = config(b, 27);
  for (auto _ : state) benchmark::DoNotOptimize(rose_fast(inst.s, inst.mask, rc));
}
BENCHMARK(BM_RoseFast)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_Oracle4x4(benchmark::State& state) {
  const auto inst = random_instance(4, 3);
  CodingConfig cfg;
  cfg.transform = TransformType::kDct4;
  cfg.quant = QuantParams::from_qp(27);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_exhaustive(inst.s, inst.mask, cfg, n, MethodKind::kRoseS));
  }
}
BENCHMARK(BM_Oracle4x4)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_Frame(benchmark::State& state) {
  harness::FrameJob job;
  auto scene = harness::generate_synthetic(128, 128, 7, 8);
  job.frame = std::move(scene.frame);
  job.mask = std::move(scene.mask);
  const auto method = static_cast<MethodKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(harness::run_frame(job, method, 32));
  state.SetLabel(to_string(method));
}
BENCHMARK(BM_Frame)
    ->Arg(static_cast<int>(MethodKind::kRef))
    ->Arg(static_cast<int>(MethodKind::kRoseS))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
