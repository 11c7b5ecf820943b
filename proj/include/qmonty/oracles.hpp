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

/**
 * @file
 * Closed-form payoffs of the two-party game. These never touch a state
 * vector; they read strategy matrix elements and count door tuples, so the
 * test suite can hold them against full-state evolution.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmonty/game.hpp"
#include "qmonty/qudit.hpp"

namespace qmonty::oracles {

inline constexpr int kDefaultCurvePoints = 101;

/// n! exactly for 0 <= n <= 20. Throws std::invalid_argument otherwise.
std::uint64_t factorial(int n);

/// Probability of winning without switching, 1/d.
double classical_p_ns(int d);
/// Probability of winning by switching after m doors are opened. Throws
/// std::invalid_argument unless d - 2 >= m >= 0.
double classical_p_s(int d, int m);
/// P_ns cos^2(gamma) + P_s sin^2(gamma).
double classical_mixed_payoff(int d, int m, double gamma);

/// Smallest k in [1, d-1] with (j - k) mod d not in `opened`. Throws
/// DomainError when none exists.
int lambda_term(int j, std::span<const int> opened, int d);

/// Player payoff for a separable |0...0> start, from the first columns of
/// A and B, summed over every opened-door tuple in [0, d)^m.
double payoff_separable(const Strategy& alice, const Strategy& bob,
                        const game::GameConfig& config);
/// |sqrt(P_ns) cos(gamma) + sqrt(P_s) sin(gamma)|^2, the QFT player's
/// payoff for any host strategy.
double payoff_qft_separable(const game::GameConfig& config);
/// Player payoff for a two-qudit GHZ start. The sums over i pair a_{j,i}
/// with b_{j,i} directly, without conjugation.
double payoff_entangled(const Strategy& alice, const Strategy& bob,
                        const game::GameConfig& config);
/// GHZ start with the player's label displaced from the host's by k:
/// P_ns,k cos^2 + P_s,k sin^2. Throws std::invalid_argument unless
/// 0 <= k < d.
double payoff_displacement(int k, const game::GameConfig& config);
/// P_s,k alone (the gamma = pi/2 value).
double displacement_switch_probability(int d, int m, int k);

/// arctan sqrt(P_s / P_ns).
double gamma_max(int d, int m);
/// P_ns + P_s, the peak of payoff_qft_separable.
double payoff_max(int d, int m);

struct PayoffCurve {
  std::vector<double> gammas;
  std::vector<double> payoffs;
  int d = 0;
  int m = 0;
  std::string scenario;
  std::optional<int> k;

  /// Throws std::logic_error on unequal lengths, a non-ascending grid,
  /// gammas outside [0, pi/2] or payoffs outside [0, 1].
  void validate() const;
};

/// `points` evenly spaced angles on [0, pi/2], endpoints included.
std::vector<double> gamma_grid(int points = kDefaultCurvePoints);

}  // namespace qmonty::oracles
