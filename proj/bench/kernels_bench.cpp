// Copyright 2026 The qmonty Authors
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

#include <random>
#include <vector>

#include "qmonty/game.hpp"
#include "qmonty/kernels.hpp"
#include "qmonty/random.hpp"

namespace {

using qmonty::Complex;
using qmonty::LocalOperator;

// Random amplitudes restricted to the operator's domain.
std::vector<Complex> in_domain(const LocalOperator& op, int num_qudits, std::mt19937_64& rng) {
  const int d = op.dim();
  const qmonty::StateVector shape =
      qmonty::make_basis_state(d, qmonty::Labels(static_cast<std::size_t>(num_qudits), 0));
  std::normal_distribution<double> g;
  std::vector<Complex> amps(shape.size());
  qmonty::Labels local(op.slots().size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    for (std::size_t t = 0; t < local.size(); ++t) local[t] = shape.label_at(i, op.slots()[t]);
    if (op.in_domain(local)) amps[i] = Complex(g(rng), g(rng));
  }
  return amps;
}

// Args: d, qudit count.
template <bool Parallel>
void BM_ApplySingle(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int q = static_cast<int>(state.range(1));
  std::mt19937_64 rng(1);
  const qmonty::StateVector s = qmonty::random_state(d, q, rng);
  const std::vector<Complex> in(s.amplitudes().begin(), s.amplitudes().end());
  const qmonty::Strategy u = qmonty::random_unitary(d, rng);
  std::vector<Complex> out(in.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      qmonty::kernels::apply_single(u.entries(), d, q, q / 2, in, out);
    } else {
      qmonty::kernels::apply_single_serial(u.entries(), d, q, q / 2, in, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(in.size()));
}

// Args: d, opened doors. The mixed switch on the two-party register.
template <bool Parallel>
void BM_ApplyLocal(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const qmonty::game::GameConfig cfg{d, m, 2, 0.7};
  const LocalOperator op = qmonty::game::mixed_switch_operator(cfg);
  std::mt19937_64 rng(2);
  const std::vector<Complex> in = in_domain(op, m + 2, rng);
  std::vector<Complex> out(in.size());
  for (auto _ : state) {
    std::fill(out.begin(), out.end(), Complex{});
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(qmonty::kernels::apply_local(op, m + 2, in, out));
    } else {
      benchmark::DoNotOptimize(qmonty::kernels::apply_local_serial(op, m + 2, in, out));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(in.size()));
}

void SingleArgs(benchmark::internal::Benchmark* b) {
  for (auto [d, q] : {std::pair{2, 16}, {2, 20}, {4, 8}, {4, 10}, {8, 6}}) b->Args({d, q});
}

void LocalArgs(benchmark::internal::Benchmark* b) {
  for (auto [d, m] : {std::pair{5, 2}, {6, 3}, {8, 4}, {8, 5}}) b->Args({d, m});
}

BENCHMARK(BM_ApplySingle<false>)->Name("apply_single/serial")->Apply(SingleArgs);
BENCHMARK(BM_ApplySingle<true>)->Name("apply_single/openmp")->Apply(SingleArgs);
BENCHMARK(BM_ApplyLocal<false>)->Name("apply_local/serial")->Apply(LocalArgs);
BENCHMARK(BM_ApplyLocal<true>)->Name("apply_local/openmp")->Apply(LocalArgs);

}  // namespace

BENCHMARK_MAIN();
