// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "slgate/potentials.hpp"
#include "slgate/sturm.hpp"

namespace {

slgate::OperatorSpec generic_op() {
  slgate::OperatorSpec op;
  op.q = slgate::materialize(slgate::PotentialSpec::sine(2.0, 3.0, 0.0), 0.0,
                             1.0, 2001);
  op.bc = {1.0, 2.0};
  return op;
}

void BM_SolvePsi(benchmark::State& state) {
  const auto op = generic_op();
  const double z = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto tr = slgate::solve_psi(op.q, op.bc.h, z * z);
    benchmark::DoNotOptimize(tr.psi.back());
  }
}
BENCHMARK(BM_SolvePsi)->Arg(10)->Arg(40)->Arg(160);

void BM_Characteristic(benchmark::State& state) {
  const auto op = generic_op();
  for (auto _ : state) {
    benchmark::DoNotOptimize(slgate::characteristic(op, 987.6));
  }
}
BENCHMARK(BM_Characteristic);

void BM_Spectrum(benchmark::State& state) {
  const auto op = generic_op();
  const int j_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto sp = slgate::compute_spectrum(op, j_max);
    benchmark::DoNotOptimize(sp.eigenvalues.back());
  }
}
BENCHMARK(BM_Spectrum)->Arg(10)->Arg(30);

}  // namespace
