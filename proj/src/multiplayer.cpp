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

#include "qmonty/multiplayer.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace qmonty::multi {

void MultiGameState::validate() const {
  config.validate();
  if (state.dim() != config.d || state.num_qudits() != config.m + config.n) {
    throw std::invalid_argument("multi-player state must hold m + n qudits of dimension d");
  }
}

LocalOperator multi_door_opening_operator(int j, const game::GameConfig& config) {
  config.validate();
  if (j < 1 || j > config.m) {
    throw std::out_of_range("multi_door_opening_operator: step " + std::to_string(j) +
                            " outside [1, " + std::to_string(config.m) + "]");
  }
  const int d = config.d;
  const int n = config.n;
  std::vector<int> slots;
  for (int i = j; i >= 1; --i) slots.push_back(opened_slot(i, n));
  for (int k = n; k >= 1; --k) slots.push_back(player_slot(k));

  // t[0] = o_j, t[1..j-1] = earlier doors, t[j..j+n-1] = p_n..p_1.
  auto domain = [j, n](std::span<const int> t) {
    if (t[0] != 0) return false;
    const std::set<int> players(t.begin() + j, t.begin() + j + n);
    std::set<int> earlier;
    for (int i = 1; i < j; ++i) {
      if (players.count(t[i]) != 0 || !earlier.insert(t[i]).second) return false;
    }
    return true;
  };
  auto action = [j, n, d](std::span<const int> t) {
    const std::set<int> players(t.begin() + j, t.begin() + j + n);
    const int u = static_cast<int>(players.size());
    const double amp = 1.0 / std::sqrt(static_cast<double>(d + 1 - j - u));
    LocalOperator::Image out;
    for (int door = 0; door < d; ++door) {
      if (players.count(door) != 0) continue;
      if (std::find(t.begin() + 1, t.begin() + j, door) != t.begin() + j) continue;
      Labels next(t.begin(), t.end());
      next[0] = door;
      out.emplace_back(std::move(next), amp);
    }
    return out;
  };
  return LocalOperator("O_" + std::to_string(j), d, std::move(slots), domain,
                       action);
}

LocalOperator player_switch_operator(int k, const game::GameConfig& config) {
  config.validate();
  return player_switch_operator(k, config.d, config.n, config.m);
}

LocalOperator player_switch_operator(int k, int d, int n, int m) {
  if (k < 2 || k > n) {
    throw std::out_of_range("player_switch_operator: player " + std::to_string(k) +
                            " outside [2, " + std::to_string(n) + "]");
  }
  if (m < 0 || m > d - 2) throw std::invalid_argument("switching needs 0 <= m <= d - 2");
  std::vector<int> slots;
  for (int i = m; i >= 1; --i) slots.push_back(opened_slot(i, n));
  slots.push_back(player_slot(k));

  auto domain = [](std::span<const int> t) { return game::epsilon(t) == 1; };
  auto action = [m, d](std::span<const int> t) {
    Labels next(t.begin(), t.end());
    next[m] = (t[m] + game::ell(t[m], t.first(m), d)) % d;
    return LocalOperator::Image{{std::move(next), 1.0}};
  };
  return LocalOperator("S_" + std::to_string(k), d, std::move(slots), domain,
                       action);
}

MultiGameState multi_play(const game::GameConfig& config,
                          const std::vector<Strategy>& strategies,
                          const std::vector<SwitchDecision>& decisions,
                          const MultiGameState& initial) {
  config.validate();
  MultiGameState start{initial.state, config};
  start.validate();
  const int n = config.n;
  if (static_cast<int>(strategies.size()) != n) {
    throw std::invalid_argument("need one strategy per party");
  }
  if (static_cast<int>(decisions.size()) != n - 1) {
    throw std::invalid_argument("need one switch decision per player");
  }
  for (std::size_t i = 0; i < start.state.size(); ++i) {
    if (std::abs(start.state[i]) <= kSupportTol) continue;
    for (int o = 1; o <= config.m; ++o) {
      if (start.state.label_at(i, opened_slot(o, n)) != 0) {
        throw std::invalid_argument("opened-door slots of the initial state must be |0>");
      }
    }
  }

  StateVector state = start.state;
  for (int k = 1; k <= n; ++k) {
    state = apply_strategy(state, strategies[static_cast<std::size_t>(k - 1)],
                           player_slot(k));
  }
  for (int j = 1; j <= config.m; ++j) {
    state = apply_local_operator(state, multi_door_opening_operator(j, config));
  }
  for (int k = 2; k <= n; ++k) {
    const SwitchDecision& choice = decisions[static_cast<std::size_t>(k - 2)];
    if (const bool* flag = std::get_if<bool>(&choice)) {
      if (*flag) state = apply_local_operator(state, player_switch_operator(k, config));
    } else {
      const double gamma = std::get<double>(choice);
      game::GameConfig check = config;
      check.gamma = gamma;
      check.validate();
      state = apply_local_operator(
          state, blend_with_identity(player_switch_operator(k, config), gamma,
                                     "mix_" + std::to_string(k)));
    }
  }
  return {std::move(state), config};
}

double per_player_payoff(const MultiGameState& final_state, int k) {
  final_state.validate();
  if (k < 2 || k > final_state.config.n) {
    throw std::out_of_range("per_player_payoff: player " + std::to_string(k) +
                            " outside [2, " + std::to_string(final_state.config.n) + "]");
  }
  const StateVector& s = final_state.state;
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.label_at(i, player_slot(k)) == s.label_at(i, player_slot(1))) {
      total += std::norm(s[i]);
    }
  }
  return total;
}

MultiGameState separable_multi_state(const game::GameConfig& config) {
  config.validate();
  return {make_basis_state(config.d, Labels(static_cast<std::size_t>(config.m + config.n), 0)),
          config};
}

MultiGameState ghz_multi_state(const game::GameConfig& config) {
  config.validate();
  StateVector players = ghz_state(config.d, config.n);
  if (config.m == 0) return {std::move(players), config};
  return {tensor(make_basis_state(config.d, Labels(static_cast<std::size_t>(config.m), 0)),
                 players),
          config};
}

}  // namespace qmonty::multi
