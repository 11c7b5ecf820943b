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

#include "qmonty/game.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace qmonty::game {

void GameConfig::validate() const {
  if (n < 2) throw std::invalid_argument("need n >= 2 parties");
  if (m < 0) throw std::invalid_argument("need m >= 0 opened doors");
  if (d - n < m) {
    throw std::invalid_argument("need d - n >= m (d=" + std::to_string(d) +
                                ", n=" + std::to_string(n) +
                                ", m=" + std::to_string(m) + ")");
  }
  if (!(gamma >= -1e-12 && gamma <= std::numbers::pi / 2 + 1e-12)) {
    throw std::invalid_argument("gamma must lie in [0, pi/2]");
  }
}

int epsilon(std::span<const int> labels) {
  std::set<int> seen(labels.begin(), labels.end());
  return seen.size() == labels.size() ? 1 : 0;
}

int unique_count(std::span<const int> labels) {
  if (labels.empty()) throw std::invalid_argument("unique_count of empty tuple");
  return static_cast<int>(std::set<int>(labels.begin(), labels.end()).size());
}

int ell(int b, std::span<const int> opened, int d) {
  for (int k = 1; k < d; ++k) {
    const int target = (b + k) % d;
    if (std::find(opened.begin(), opened.end(), target) == opened.end()) return k;
  }
  throw DomainError("ell: every door after " + std::to_string(b) + " is opened",
                    Labels(opened.begin(), opened.end()));
}

LocalOperator door_opening_operator(int j, const GameConfig& config) {
  config.validate();
  if (j < 1 || j > config.m) {
    throw std::out_of_range("door_opening_operator: step " + std::to_string(j) +
                            " outside [1, " + std::to_string(config.m) + "]");
  }
  const int d = config.d;
  // (o_j, ..., o_1, b, a)
  std::vector<int> slots;
  for (int i = j; i >= 1; --i) slots.push_back(opened_slot(i));
  slots.push_back(kBobSlot);
  slots.push_back(kAliceSlot);

  // t[0] = o_j, t[1..j-1] = earlier doors, t[j] = b, t[j+1] = a.
  auto domain = [j](std::span<const int> t) {
    if (t[0] != 0) return false;
    const int b = t[j];
    const int a = t[j + 1];
    std::set<int> earlier;
    for (int i = 1; i < j; ++i) {
      if (t[i] == a || t[i] == b || !earlier.insert(t[i]).second) return false;
    }
    return true;
  };
  auto action = [j, d](std::span<const int> t) {
    const int b = t[j];
    const int a = t[j + 1];
    const int u = a == b ? 1 : 2;
    const double amp = 1.0 / std::sqrt(static_cast<double>(d + 1 - j - u));
    LocalOperator::Image out;
    for (int door = 0; door < d; ++door) {
      if (door == a || door == b) continue;
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

LocalOperator door_switching_operator(const GameConfig& config) {
  config.validate();
  const int d = config.d;
  const int m = config.m;
  // (o_m, ..., o_1, b)
  std::vector<int> slots;
  for (int i = m; i >= 1; --i) slots.push_back(opened_slot(i));
  slots.push_back(kBobSlot);

  auto domain = [](std::span<const int> t) { return epsilon(t) == 1; };
  auto action = [m, d](std::span<const int> t) {
    const int b = t[m];
    Labels next(t.begin(), t.end());
    next[m] = (b + ell(b, t.first(m), d)) % d;
    return LocalOperator::Image{{std::move(next), 1.0}};
  };
  return LocalOperator("S", d, std::move(slots), domain, action);
}

LocalOperator mixed_switch_operator(const GameConfig& config) {
  return blend_with_identity(door_switching_operator(config), config.gamma,
                             "cos(g)I+sin(g)S");
}

// ---------------------------------------------------------------------------

namespace {

GameConfig two_party(int d, int m) {
  GameConfig config{d, m, 2, 0.0};
  config.validate();
  return config;
}

std::vector<LocalOperator> opening_steps(const GameConfig& config) {
  std::vector<LocalOperator> ops;
  for (int j = 1; j <= config.m; ++j) ops.push_back(door_opening_operator(j, config));
  return ops;
}

}  // namespace

Game::Game(int d, int m)
    : d_(d),
      m_(m),
      opening_(opening_steps(two_party(d, m))),
      switching_(door_switching_operator(two_party(d, m))) {}

StateVector Game::prepare(const Strategy& alice, const Strategy& bob,
                          const StateVector& initial) const {
  if (initial.dim() != d_ || initial.num_qudits() != m_ + 2) {
    throw std::invalid_argument("initial state must hold m + 2 qudits of dimension d");
  }
  if (alice.dim() != d_ || bob.dim() != d_) {
    throw std::invalid_argument("strategy dimension does not match d");
  }
  for (std::size_t i = 0; i < initial.size(); ++i) {
    if (std::abs(initial[i]) <= kSupportTol) continue;
    for (int k = 1; k <= m_; ++k) {
      if (initial.label_at(i, opened_slot(k)) != 0) {
        throw std::invalid_argument("opened-door slots of the initial state must be |0>");
      }
    }
  }
  StateVector state = apply_strategy(initial, alice, kAliceSlot);
  state = apply_strategy(state, bob, kBobSlot);
  for (const LocalOperator& op : opening_) state = apply_local_operator(state, op);
  return state;
}

StateVector Game::finish(const StateVector& prepared, double gamma) const {
  GameConfig config{d_, m_, 2, gamma};
  config.validate();
  const LocalOperator mixed =
      blend_with_identity(switching_, gamma, "cos(g)I+sin(g)S");
  return apply_local_operator(prepared, mixed);
}

StateVector Game::play(const Strategy& alice, const Strategy& bob,
                       const StateVector& initial, double gamma) const {
  return finish(prepare(alice, bob, initial), gamma);
}

StateVector play_game(const GameConfig& config, const Strategy& alice,
                      const Strategy& bob, const StateVector& initial) {
  config.validate();
  if (config.n != 2) throw std::invalid_argument("play_game needs n = 2");
  return Game(config.d, config.m).play(alice, bob, initial, config.gamma);
}

double expected_payoff(const StateVector& final_state) {
  if (final_state.num_qudits() < 2) {
    throw std::invalid_argument("final state needs b and a slots");
  }
  const int d = final_state.dim();
  double total = 0.0;
  for (std::size_t i = 0; i < final_state.size(); ++i) {
    // a is the lowest digit and b the next one.
    if (static_cast<int>(i % d) == static_cast<int>((i / d) % d)) {
      total += std::norm(final_state[i]);
    }
  }
  return total;
}

GameOutcomeDistribution outcome_distribution(const StateVector& final_state) {
  GameOutcomeDistribution dist;
  dist.payoff = expected_payoff(final_state);
  dist.norm_squared = final_state.norm_squared();
  dist.win_probability = dist.payoff / dist.norm_squared;
  for (std::size_t i = 0; i < final_state.size(); ++i) {
    const double p = std::norm(final_state[i]);
    if (p == 0.0) continue;
    dist.outcomes[final_state.labels_of(i)] = p / dist.norm_squared;
  }
  return dist;
}

StateVector separable_initial_state(int d, int m) {
  return make_basis_state(d, Labels(static_cast<std::size_t>(m + 2), 0));
}

StateVector entangled_initial_state(int d, int m) {
  const StateVector pair = ghz_state(d, 2);
  if (m == 0) return pair;
  return tensor(make_basis_state(d, Labels(static_cast<std::size_t>(m), 0)), pair);
}

}  // namespace qmonty::game
