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
 * The two-party generalized quantum Monty Hall game: host (Alice) hides
 * the prize, the player (Bob) picks a door, the host opens m empty doors
 * and the player mixes keeping and switching with an angle gamma.
 *
 * Register layout: |o_m, ..., o_1, b, a>, so a is slot 0, b is slot 1 and
 * o_i is slot i + 1.
 */

#pragma once

#include <map>
#include <span>
#include <vector>

#include "qmonty/qudit.hpp"

namespace qmonty::game {

inline constexpr int kAliceSlot = 0;
inline constexpr int kBobSlot = 1;
inline constexpr int opened_slot(int i) { return i + 1; }

/// d doors, m doors opened by the host, n parties including the host, and
/// the switch-mix angle gamma in [0, pi/2].
struct GameConfig {
  int d = 3;
  int m = 1;
  int n = 2;
  double gamma = 0.0;

  /// Throws std::invalid_argument unless n >= 2, d - n >= m >= 0 and
  /// gamma lies in [0, pi/2].
  void validate() const;
};

/// 0 if any two labels coincide, else 1.
int epsilon(std::span<const int> labels);
/// Number of distinct labels. Throws std::invalid_argument when empty.
int unique_count(std::span<const int> labels);
/// Smallest k in [1, d-1] with (b + k) mod d not in `opened`. Throws
/// DomainError if every candidate is opened.
int ell(int b, std::span<const int> opened, int d);

/// Opening step j (1-based) on slots (o_j, ..., o_1, b, a). Defined where
/// o_j = 0 and the earlier opened doors are distinct and differ from a and
/// b; sends o_j to a uniform superposition of the doors still closed.
LocalOperator door_opening_operator(int j, const GameConfig& config);
/// b -> b + ell(b, o) on slots (o_m, ..., o_1, b), defined where b and
/// the opened doors are pairwise distinct.
LocalOperator door_switching_operator(const GameConfig& config);
/// cos(gamma) I + sin(gamma) S on the switching operator's slots.
LocalOperator mixed_switch_operator(const GameConfig& config);

/**
 * Caches the opening and switching operators for one (d, m) so a sweep
 * over strategies or angles builds them once.
 */
class Game {
 public:
  Game(int d, int m);

  int doors() const noexcept { return d_; }
  int opened() const noexcept { return m_; }
  const LocalOperator& opening(int j) const { return opening_.at(j - 1); }
  const LocalOperator& switching() const { return switching_; }

  /// Strategies then every opening step; the state just before the
  /// player's switch decision.
  StateVector prepare(const Strategy& alice, const Strategy& bob,
                      const StateVector& initial) const;
  /// Applies cos(gamma) I + sin(gamma) S to a prepared state.
  StateVector finish(const StateVector& prepared, double gamma) const;
  StateVector play(const Strategy& alice, const Strategy& bob,
                   const StateVector& initial, double gamma) const;

 private:
  int d_;
  int m_;
  std::vector<LocalOperator> opening_;
  LocalOperator switching_;
};

/**
 * Full pipeline for a two-party config. The result is the final vector
 * exactly as the operators produce it. Its norm is 1 unless the player's
 * register carries coherence between doors that the switch maps onto each
 * other and 0 < gamma < pi/2, because the mixed switch is not unitary.
 */
StateVector play_game(const GameConfig& config, const Strategy& alice,
                      const Strategy& bob, const StateVector& initial);

/// Sum of |<o, i, i | final>|^2 over o and i, taken on the final vector as
/// produced (no renormalization).
double expected_payoff(const StateVector& final_state);

struct GameOutcomeDistribution {
  /// expected_payoff of the final vector.
  double payoff = 0.0;
  double norm_squared = 0.0;
  /// payoff / norm_squared.
  double win_probability = 0.0;
  /// Normalized probability of each |o_m..o_1, b, a> outcome.
  std::map<Labels, double> outcomes;
};

GameOutcomeDistribution outcome_distribution(const StateVector& final_state);

/// |0...0> over the m opened-door slots followed by |b, a>.
StateVector separable_initial_state(int d, int m);
/// |0...0> over the opened-door slots followed by the normalized two-qudit
/// GHZ state on (b, a).
StateVector entangled_initial_state(int d, int m);

}  // namespace qmonty::game
