// Copyright 2026 The mcsterm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <string>

#include "mcsterm/closure.hpp"
#include "mcsterm/closure_decider.hpp"
#include "mcsterm/dsl.hpp"
#include "mcsterm/elaboration.hpp"
#include "mcsterm/ranking.hpp"

namespace {

// One point with a cyclic shift and a transposition of x1..xn.
mcsterm::ConstraintSystem shift_swap(int n) {
  std::string text = "vars";
  for (int i = 1; i <= n; ++i) text += " x" + std::to_string(i);
  text += "\npoint f\nmc shift f -> f { x1 > x" + std::to_string(n) + "'";
  for (int i = 2; i <= n; ++i) {
    text += ", x" + std::to_string(i) + " >= x" + std::to_string(i - 1) + "'";
  }
  text += " }\nmc swap f -> f { x1 >= x" + std::to_string(n > 1 ? 2 : 1) + "'";
  if (n > 1) text += ", x2 >= x1'";
  for (int i = 3; i <= n; ++i) {
    text += ", x" + std::to_string(i) + " >= x" + std::to_string(i) + "'";
  }
  return mcsterm::parse_system(text + " }\n");
}

void BM_ClosureSet(benchmark::State& state) {
  const mcsterm::ConstraintSystem cs = shift_swap(static_cast<int>(state.range(0)));
  std::size_t size = 0;
  for (auto _ : state) {
    size = mcsterm::closure_set(cs, {}).members.size();
    benchmark::DoNotOptimize(size);
  }
  state.counters["closure_set"] = static_cast<double>(size);
}
BENCHMARK(BM_ClosureSet)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_FullElaboration(benchmark::State& state) {
  const mcsterm::ConstraintSystem cs = shift_swap(static_cast<int>(state.range(0)));
  std::size_t points = 0;
  std::size_t mcs = 0;
  for (auto _ : state) {
    const mcsterm::ElaboratedSystem e = mcsterm::fully_elaborate(cs);
    points = e.system.points.size();
    mcs = e.system.mcs.size();
    benchmark::DoNotOptimize(points);
  }
  state.counters["points"] = static_cast<double>(points);
  state.counters["mcs"] = static_cast<double>(mcs);
}
BENCHMARK(BM_FullElaboration)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_DecideClosure(benchmark::State& state) {
  const mcsterm::ConstraintSystem cs = shift_swap(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mcsterm::decide_closure(cs, {}).result);
}
BENCHMARK(BM_DecideClosure)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_DecideElaborate(benchmark::State& state) {
  const mcsterm::ConstraintSystem cs = shift_swap(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mcsterm::decide_elaborate(cs).result);
}
BENCHMARK(BM_DecideElaborate)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
