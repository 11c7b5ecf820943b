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

#include <cmath>
#include <random>

#include "qmonty/qudit.hpp"
#include "qmonty/random.hpp"
#include "test_util.hpp"

namespace qmonty {
namespace {

using testing::kPi;
using testing::kTol;
using testing::state_of;
using testing::StatesNear;

TEST(BasisState, AllZeroLabelSitsAtIndexZero) {
  const StateVector s = make_basis_state(3, {0, 0, 0});
  EXPECT_EQ(s.size(), 27u);
  EXPECT_EQ(s[0], Complex(1.0));
  EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
}

TEST(BasisState, RightmostLabelVariesFastest) {
  EXPECT_EQ(make_basis_state(3, {2, 1, 0})[21], Complex(1.0));  // 0 + 3*1 + 9*2
  EXPECT_EQ(make_basis_state(2, {1, 1})[3], Complex(1.0));
}

TEST(BasisState, LabelOutOfRangeIsARangeError) {
  EXPECT_THROW(make_basis_state(3, {0, 3}), std::out_of_range);
  EXPECT_THROW(make_basis_state(3, {-1}), std::out_of_range);
}

TEST(BasisState, IndexRoundTrip) {
  for (int d = 2; d <= 6; ++d) {
    for (int q = 1; q <= 6; ++q) {
      const StateVector s = make_basis_state(d, Labels(static_cast<std::size_t>(q), 0));
      for (std::size_t i = 0; i < s.size(); ++i) {
        const Labels labels = s.labels_of(i);
        ASSERT_EQ(s.index_of(labels), i) << "d=" << d << " q=" << q;
        for (int slot = 0; slot < q; ++slot) {
          ASSERT_EQ(s.label_at(i, slot), labels[static_cast<std::size_t>(q - 1 - slot)]);
        }
      }
    }
  }
}

TEST(StateVector, FromAmplitudesRejectsBadNormAndLength) {
  EXPECT_THROW(StateVector::from_amplitudes(2, 1, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(StateVector::from_amplitudes(2, 2, {1.0, 0.0}), std::invalid_argument);
  EXPECT_NO_THROW(StateVector::from_amplitudes(1, 3, {1.0}));
}

TEST(Ghz, TwoQubitBellState) {
  const StateVector s = ghz_state(2, 2);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_TRUE(StatesNear(s, state_of(2, 2, {{{0, 0}, h}, {{1, 1}, h}})));
}

TEST(Ghz, QutritPairAmplitudes) {
  const StateVector s = ghz_state(3, 2);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double expected = (i == 0 || i == 4 || i == 8) ? 1.0 / std::sqrt(3.0) : 0.0;
    EXPECT_NEAR(std::abs(s[i]), expected, kTol) << i;
  }
}

TEST(Ghz, AlwaysNormalized) {
  for (int d = 2; d <= 5; ++d) {
    for (int p = 2; p <= 4; ++p) EXPECT_NEAR(ghz_state(d, p).norm_squared(), 1.0, kTol);
  }
  EXPECT_THROW(ghz_state(1, 2), std::out_of_range);
}

TEST(Qft, DimensionOneIsTheUnitEntry) {
  const Strategy f = qft(1);
  EXPECT_EQ(f(0, 0), Complex(1.0));
}

TEST(Qft, DimensionTwoIsHadamard) {
  const Strategy f = qft(2);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(f(0, 0) - h), 0.0, kTol);
  EXPECT_NEAR(std::abs(f(0, 1) - h), 0.0, kTol);
  EXPECT_NEAR(std::abs(f(1, 0) - h), 0.0, kTol);
  EXPECT_NEAR(std::abs(f(1, 1) + h), 0.0, kTol);
}

TEST(Qft, UnitaryUpToEight) {
  for (int d = 1; d <= 8; ++d) EXPECT_TRUE(is_unitary(qft(d).entries(), d, kTol)) << d;
}

TEST(SumGate, ZeroShiftIsIdentity) {
  const Strategy s = sum_d(3, 0);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) EXPECT_EQ(s(r, c), Complex(r == c ? 1.0 : 0.0));
  }
}

TEST(SumGate, ShiftWrapsModD) {
  const StateVector out = apply_strategy(make_basis_state(3, {2}), sum_d(3, 1), 0);
  EXPECT_TRUE(StatesNear(out, make_basis_state(3, {0})));
  EXPECT_EQ(sum_d(5, 2)(4, 2), Complex(1.0));
  EXPECT_THROW(sum_d(3, 3), std::out_of_range);
  EXPECT_THROW(sum_d(3, -1), std::out_of_range);
}

TEST(HomogeneousSuperposition, SendsZeroToUniformPrefix) {
  for (int d = 2; d <= 5; ++d) {
    for (int doors = 1; doors <= d; ++doors) {
      const Strategy s = homogeneous_superposition(d, doors);
      for (int r = 0; r < d; ++r) {
        const double expected = r < doors ? 1.0 / std::sqrt(doors) : 0.0;
        EXPECT_NEAR(std::abs(s(r, 0) - expected), 0.0, kTol) << d << " " << doors << " " << r;
      }
      EXPECT_TRUE(is_unitary(s.entries(), d, kTol));
    }
  }
}

TEST(ApplyStrategy, IdentityLeavesStateAlone) {
  std::mt19937_64 rng(1);
  const StateVector s = random_state(3, 3, rng);
  EXPECT_TRUE(StatesNear(apply_strategy(s, identity_strategy(3), 1), s));
}

TEST(ApplyStrategy, SumOnHostSlot) {
  // |o, b, a> with a in slot 0.
  const StateVector out = apply_strategy(make_basis_state(3, {0, 0, 0}), sum_d(3, 1), 0);
  EXPECT_TRUE(StatesNear(out, make_basis_state(3, {0, 0, 1})));
}

TEST(ApplyStrategy, QftColumnZeroOnHostSlot) {
  const StateVector out = apply_strategy(make_basis_state(3, {0, 0, 0}), qft(3), 0);
  const double a = 1.0 / std::sqrt(3.0);
  EXPECT_TRUE(StatesNear(out, state_of(3, 3, {{{0, 0, 0}, a}, {{0, 0, 1}, a}, {{0, 0, 2}, a}})));
}

TEST(ApplyStrategy, RejectsBadSlotAndDimension) {
  const StateVector s = make_basis_state(3, {0, 0});
  EXPECT_THROW(apply_strategy(s, qft(3), 2), std::out_of_range);
  EXPECT_THROW(apply_strategy(s, qft(2), 0), std::invalid_argument);
}

TEST(ApplyStrategy, PreservesInnerProducts) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 4;
    const StateVector x = random_state(d, 3, rng);
    const StateVector y = random_state(d, 3, rng);
    const Strategy u = random_unitary(d, rng);
    const int slot = trial % 3;
    const Complex before = inner_product(x, y);
    const Complex after = inner_product(apply_strategy(x, u, slot), apply_strategy(y, u, slot));
    EXPECT_NEAR(std::abs(before - after), 0.0, kTol);
  }
}

TEST(IsSpecialUnitary, Examples) {
  EXPECT_TRUE(is_special_unitary(identity_strategy(4).entries(), 4, kTol));
  // det of [[1,1],[1,-1]]/sqrt(2) is -1.
  EXPECT_FALSE(is_special_unitary(qft(2).entries(), 2, kTol));
  EXPECT_TRUE(is_unitary(qft(2).entries(), 2, kTol));
  const std::vector<Complex> zero(9, 0.0);
  EXPECT_FALSE(is_special_unitary(zero, 3, kTol));
  EXPECT_NEAR(std::abs(qft(2).determinant() + 1.0), 0.0, kTol);
}

TEST(Strategy, RejectsNonUnitaryAndFlagsDeterminant) {
  EXPECT_THROW(Strategy(2, {1.0, 1.0, 0.0, 1.0}), std::invalid_argument);
  EXPECT_FALSE(qft(3).is_special());
  EXPECT_TRUE(identity_strategy(3).is_special());
  std::mt19937_64 rng(5);
  EXPECT_TRUE(random_special_unitary(4, rng).is_special());
}

TEST(LocalOperator, IdentityMappingLeavesStateAlone) {
  std::mt19937_64 rng(3);
  const StateVector s = random_state(3, 4, rng);
  EXPECT_TRUE(StatesNear(apply_local_operator(s, identity_operator(3, {3, 1})), s));
}

TEST(LocalOperator, SupportOutsideDomainRaisesDomainError) {
  // Defined only where the slot holds 0.
  const LocalOperator op("only-zero", 3, {0},
                         [](std::span<const int> t) { return t[0] == 0; },
                         [](std::span<const int> t) {
                           return LocalOperator::Image{{Labels{t[0]}, 1.0}};
                         });
  EXPECT_NO_THROW(apply_local_operator(make_basis_state(3, {2, 0}), op));
  try {
    apply_local_operator(make_basis_state(3, {2, 1}), op);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_EQ(e.labels(), (Labels{2, 1}));
  }
}

TEST(LocalOperator, TinyAmplitudesOutsideDomainAreIgnored) {
  const LocalOperator op("only-zero", 2, {0},
                         [](std::span<const int> t) { return t[0] == 0; },
                         [](std::span<const int> t) {
                           return LocalOperator::Image{{Labels{t[0]}, 1.0}};
                         });
  const double eps = 1e-13;
  const StateVector s =
      StateVector::from_amplitudes(2, 1, {std::sqrt(1.0 - eps * eps), eps});
  EXPECT_NO_THROW(apply_local_operator(s, op));
}

TEST(LocalOperator, RejectsNonIsometricImages) {
  auto domain = [](std::span<const int>) { return true; };
  auto half = [](std::span<const int> t) { return LocalOperator::Image{{Labels{t[0]}, 0.5}}; };
  EXPECT_THROW(LocalOperator("bad", 2, {0}, domain, half), std::logic_error);
}

TEST(LocalOperator, MeasuresOrthogonalityWithoutRequiringIt) {
  // |0> -> |0>, |1> -> (|0> + |1>)/sqrt2: isometric per input, images overlap.
  const double h = 1.0 / std::sqrt(2.0);
  const LocalOperator op("overlap", 2, {0}, [](std::span<const int>) { return true; },
                         [h](std::span<const int> t) {
                           if (t[0] == 0) return LocalOperator::Image{{Labels{0}, 1.0}};
                           return LocalOperator::Image{{Labels{0}, h}, {Labels{1}, h}};
                         });
  EXPECT_FALSE(op.unitary_on_domain());
  EXPECT_NEAR(op.orthogonality_defect(), h, kTol);
  EXPECT_TRUE(identity_operator(2, {0}).unitary_on_domain());
}

TEST(Measure, BasisStateIsDeterministic) {
  std::mt19937_64 rng(9);
  const StateVector s = make_basis_state(3, {2, 1, 0});
  const int slots[] = {2, 1, 0};
  const Measurement m = measure_slots(s, slots, rng);
  EXPECT_EQ(m.outcome, (Labels{2, 1, 0}));
  EXPECT_NEAR(m.probability, 1.0, kTol);
}

TEST(Measure, GhzSlotCollapsesBothQubits) {
  const StateVector s = ghz_state(2, 2);
  const int slot[] = {0};
  const auto dist = outcome_probabilities(s, slot);
  ASSERT_EQ(dist.size(), 2u);
  EXPECT_NEAR(dist.at({0}), 0.5, kTol);
  EXPECT_NEAR(dist.at({1}), 0.5, kTol);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const Measurement m = measure_slots(s, slot, rng);
    const int v = m.outcome[0];
    EXPECT_TRUE(StatesNear(m.collapsed, make_basis_state(2, {v, v})));
  }
}

TEST(Measure, EmptySlotListIsAnArgumentError) {
  std::mt19937_64 rng(0);
  EXPECT_THROW(measure_slots(ghz_state(2, 2), {}, rng), std::invalid_argument);
}

TEST(Measure, SameSeedSameSequence) {
  std::mt19937_64 state_rng(4);
  const StateVector s = random_state(3, 3, state_rng);
  const int slots[] = {0, 2};
  std::mt19937_64 a(77);
  std::mt19937_64 b(77);
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(measure_slots(s, slots, a).outcome, measure_slots(s, slots, b).outcome);
  }
}

TEST(Measure, FrequenciesMatchMarginalsWithinFiveSigma) {
  std::mt19937_64 state_rng(8);
  const StateVector s = random_state(3, 3, state_rng);
  const int slots[] = {1};
  const auto dist = outcome_probabilities(s, slots);
  std::map<Labels, int> counts;
  std::mt19937_64 rng(12345);
  const int samples = 20000;
  for (int i = 0; i < samples; ++i) ++counts[measure_slots(s, slots, rng).outcome];
  for (const auto& [outcome, p] : dist) {
    const double sigma = std::sqrt(p * (1.0 - p) / samples);
    EXPECT_NEAR(static_cast<double>(counts[outcome]) / samples, p, 5.0 * sigma);
  }
}

TEST(Marginals, ProductBasisStateIsPure) {
  const std::vector<double> ev = marginal_eigenvalues(make_basis_state(3, {1, 2, 0}), 1);
  ASSERT_EQ(ev.size(), 3u);
  EXPECT_NEAR(ev[0], 1.0, kTol);
  EXPECT_NEAR(ev[1], 0.0, kTol);
  EXPECT_NEAR(ev[2], 0.0, kTol);
}

TEST(Marginals, GhzSlotsAreMaximallyMixed) {
  for (int d = 2; d <= 4; ++d) {
    for (int p = 2; p <= 3; ++p) {
      const StateVector s = ghz_state(d, p);
      for (int slot = 0; slot < p; ++slot) {
        for (double v : marginal_eigenvalues(s, slot)) EXPECT_NEAR(v, 1.0 / d, kTol);
      }
    }
  }
}

TEST(Marginals, SeparableSuperpositionLeavesFirstLabelPure) {
  // (|00> + |01>)/sqrt2; the first (leftmost) label is slot 1.
  const double h = 1.0 / std::sqrt(2.0);
  const StateVector s = state_of(2, 2, {{{0, 0}, h}, {{0, 1}, h}});
  const std::vector<double> ev = marginal_eigenvalues(s, 1);
  EXPECT_NEAR(ev[0], 1.0, kTol);
  EXPECT_NEAR(ev[1], 0.0, kTol);
}

TEST(Marginals, EigenvaluesSumToOne) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector s = random_state(3, 4, rng);
    double total = 0.0;
    for (double v : marginal_eigenvalues(s, trial % 4)) total += v;
    EXPECT_NEAR(total, 1.0, kTol);
    const int pair[] = {0, 2};
    total = 0.0;
    for (double v : subsystem_eigenvalues(s, pair)) total += v;
    EXPECT_NEAR(total, 1.0, kTol);
  }
}

TEST(GhzCounterStrategy, ConjugateOnHostUndoesPlayer) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 4;
    const Strategy u = random_special_unitary(d, rng);
    const StateVector ghz = ghz_state(d, 2);
    const StateVector out = apply_strategy(apply_strategy(ghz, u.conj(), 0), u, 1);
    EXPECT_GE(fidelity(out, ghz), 1.0 - kTol) << "d=" << d;
  }
}

TEST(Tensor, LowFactorOccupiesLowSlots) {
  const StateVector s = tensor(make_basis_state(3, {2}), make_basis_state(3, {1, 0}));
  EXPECT_TRUE(StatesNear(s, make_basis_state(3, {2, 1, 0})));
}

TEST(Tensor, RejectsDimensionMismatch) {
  EXPECT_THROW(tensor(make_basis_state(2, {0}), make_basis_state(3, {0})),
               std::invalid_argument);
}

TEST(RandomUnitary, IsUnitaryAndSpecialVariantHasUnitDeterminant) {
  std::mt19937_64 rng(13);
  for (int d = 1; d <= 6; ++d) {
    const Strategy u = random_unitary(d, rng);
    EXPECT_TRUE(is_unitary(u.entries(), d, kTol));
    const Strategy su = random_special_unitary(d, rng);
    EXPECT_TRUE(is_special_unitary(su.entries(), d, kTol));
  }
}

TEST(Phase, GlobalPhaseScalesDeterminant) {
  const Strategy u = qft(3).with_phase(kPi / 3);
  EXPECT_NEAR(std::abs(u.determinant() - qft(3).determinant() * std::polar(1.0, kPi)), 0.0,
              kTol);
}

}  // namespace
}  // namespace qmonty
