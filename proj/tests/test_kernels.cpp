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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "qmonty/game.hpp"
#include "qmonty/kernels.hpp"
#include "qmonty/random.hpp"
#include "test_util.hpp"

namespace qmonty {
namespace {

using testing::kTol;

std::vector<Complex> to_vector(const StateVector& s) {
  return {s.amplitudes().begin(), s.amplitudes().end()};
}

void expect_close(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-13) << i;
}

TEST(Kernels, SingleSlotParallelMatchesSerial) {
  std::mt19937_64 rng(42);
  for (int d = 2; d <= 5; ++d) {
    for (int q = 1; q <= 4; ++q) {
      const std::vector<Complex> in = to_vector(random_state(d, q, rng));
      const Strategy u = random_unitary(d, rng);
      for (int slot = 0; slot < q; ++slot) {
        std::vector<Complex> fast(in.size());
        std::vector<Complex> slow(in.size());
        kernels::apply_single(u.entries(), d, q, slot, in, fast);
        kernels::apply_single_serial(u.entries(), d, q, slot, in, slow);
        expect_close(fast, slow);
      }
    }
  }
}

// Random amplitudes only on the opening operator's domain.
std::vector<Complex> in_domain_state(const LocalOperator& op, int num_qudits,
                                     std::mt19937_64& rng) {
  const int d = op.dim();
  const StateVector shape = make_basis_state(d, Labels(static_cast<std::size_t>(num_qudits), 0));
  std::normal_distribution<double> g;
  std::vector<Complex> amps(shape.size());
  Labels local(op.slots().size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    for (std::size_t t = 0; t < local.size(); ++t) local[t] = shape.label_at(i, op.slots()[t]);
    if (op.in_domain(local)) amps[i] = Complex(g(rng), g(rng));
  }
  return amps;
}

TEST(Kernels, LocalOperatorParallelMatchesSerial) {
  std::mt19937_64 rng(7);
  for (int d = 3; d <= 5; ++d) {
    for (int m = 1; m <= d - 2; ++m) {
      const game::GameConfig cfg{d, m, 2, 0.4};
      const int q = m + 2;
      for (int j = 1; j <= m; ++j) {
        const LocalOperator op = game::door_opening_operator(j, cfg);
        const std::vector<Complex> in = in_domain_state(op, q, rng);
        std::vector<Complex> fast(in.size());
        std::vector<Complex> slow(in.size());
        const kernels::Violation vf = kernels::apply_local(op, q, in, fast);
        const kernels::Violation vs = kernels::apply_local_serial(op, q, in, slow);
        EXPECT_FALSE(vf.found);
        EXPECT_FALSE(vs.found);
        expect_close(fast, slow);
      }
      const LocalOperator mix = game::mixed_switch_operator(cfg);
      const std::vector<Complex> in = in_domain_state(mix, q, rng);
      std::vector<Complex> fast(in.size());
      std::vector<Complex> slow(in.size());
      kernels::apply_local(mix, q, in, fast);
      kernels::apply_local_serial(mix, q, in, slow);
      expect_close(fast, slow);
    }
  }
}

TEST(Kernels, BothReportTheSameViolation) {
  const game::GameConfig cfg{4, 2, 2, 0.0};
  const LocalOperator op = game::door_opening_operator(1, cfg);
  const StateVector bad = make_basis_state(4, {0, 3, 1, 2});  // o_1 = 3
  std::vector<Complex> fast(bad.size());
  std::vector<Complex> slow(bad.size());
  const kernels::Violation vf = kernels::apply_local(op, 4, bad.amplitudes(), fast);
  const kernels::Violation vs = kernels::apply_local_serial(op, 4, bad.amplitudes(), slow);
  ASSERT_TRUE(vf.found);
  ASSERT_TRUE(vs.found);
  EXPECT_EQ(vf.index, vs.index);
  EXPECT_EQ(vf.index, bad.index_of(Labels{0, 3, 1, 2}));
}

TEST(Kernels, StateLevelWrappersAgree) {
  std::mt19937_64 rng(19);
  const game::GameConfig cfg{5, 2, 2, 0.3};
  const game::Game g(5, 2);
  const StateVector prepared =
      g.prepare(random_unitary(5, rng), random_unitary(5, rng), game::separable_initial_state(5, 2));
  const LocalOperator mix = game::mixed_switch_operator(cfg);
  EXPECT_TRUE(testing::StatesNear(apply_local_operator(prepared, mix),
                                  apply_local_operator_serial(prepared, mix), kTol));
}

}  // namespace
}  // namespace qmonty
