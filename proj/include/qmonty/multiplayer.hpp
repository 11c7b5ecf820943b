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
 * The n-party game. Register layout |o_m, ..., o_1, p_n, ..., p_1>: the
 * host p_1 sits in slot 0, player p_k in slot k - 1 and opened door o_i in
 * slot n + i - 1. With n = 2 this is exactly the two-party layout.
 */

#pragma once

#include <variant>
#include <vector>

#include "qmonty/game.hpp"
#include "qmonty/qudit.hpp"

namespace qmonty::multi {

inline constexpr int player_slot(int k) { return k - 1; }
inline constexpr int opened_slot(int i, int n) { return n + i - 1; }

struct MultiGameState {
  StateVector state;
  game::GameConfig config;

  /// Throws std::invalid_argument unless the state holds m + n qudits of
  /// dimension d.
  void validate() const;
};

/// Opening step j on (o_j, ..., o_1, p_n, ..., p_1). Opens, in
/// superposition, every door not chosen by any party and not yet opened.
LocalOperator multi_door_opening_operator(int j, const game::GameConfig& config);
/// Player k's own switch on (o_m, ..., o_1, p_k); ignores the other
/// players' doors.
LocalOperator player_switch_operator(int k, const game::GameConfig& config);
/// Same operator from raw sizes. Only needs 2 <= k <= n and m <= d - 2,
/// so it also serves registers where d - n >= m fails.
LocalOperator player_switch_operator(int k, int d, int n, int m);

/// false / true: keep or switch. A double: mix with that angle.
using SwitchDecision = std::variant<bool, double>;

/// Strategies on every p slot, opening steps 1..m, then each player's
/// decision in ascending k. `decisions[k - 2]` belongs to player k.
MultiGameState multi_play(const game::GameConfig& config,
                          const std::vector<Strategy>& strategies,
                          const std::vector<SwitchDecision>& decisions,
                          const MultiGameState& initial);

/// Sum of squared amplitudes with p_k = p_1, on the state as produced.
double per_player_payoff(const MultiGameState& final_state, int k);

/// |0...0> over all m + n slots.
MultiGameState separable_multi_state(const game::GameConfig& config);
/// |0...0> on the opened-door slots, n-party GHZ on the players.
MultiGameState ghz_multi_state(const game::GameConfig& config);

}  // namespace qmonty::multi
