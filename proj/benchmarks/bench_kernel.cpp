// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "slgate/kernelops.hpp"
#include "slgate/potentials.hpp"

namespace {

slgate::PairProblem box_pair() {
  auto q = slgate::materialize(slgate::PotentialSpec::constant(0.0), 0.0, 1.0, 2001);
  return slgate::make_pair(q, 1.0, q, 0.0, 0.0, 0.5);
}

void BM_BuildKernel(benchmark::State& state) {
  const auto pp = box_pair();
  slgate::KernelOptions opt;
  opt.ny = opt.nx = static_cast<int>(state.range(0));
  opt.z_max = 200.0;
  opt.dz = 0.2;
  for (auto _ : state) {
    auto K = slgate::build_s(pp, opt);
    benchmark::DoNotOptimize(K.max_abs);
  }
}
BENCHMARK(BM_BuildKernel)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);

void BM_ApplyTs(benchmark::State& state) {
  const auto pp = box_pair();
  slgate::KernelOptions opt;
  opt.ny = opt.nx = 201;
  opt.z_max = 200.0;
  opt.dz = 0.2;
  const auto K = slgate::build_s(pp, opt);
  const auto u = slgate::materialize(slgate::PotentialSpec::constant(1.0), -1.0, 1.0, 201);
  for (auto _ : state) {
    auto v = slgate::apply_Ts(K, u);
    benchmark::DoNotOptimize(v.samples.back());
  }
}
BENCHMARK(BM_ApplyTs)->Unit(benchmark::kMicrosecond);

}  // namespace
