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

#include "qmonty/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

namespace qmonty::oracles {

namespace {

void require_two_party(int d, int m) {
  if (m < 0 || d - 2 < m) {
    throw std::invalid_argument("need d - 2 >= m >= 0 (d=" + std::to_string(d) +
                                ", m=" + std::to_string(m) + ")");
  }
}

bool all_distinct(const std::vector<int>& labels) {
  return std::set<int>(labels.begin(), labels.end()).size() == labels.size();
}

int sub_mod(int j, int k, int d) { return ((j - k) % d + d) % d; }

// Calls f(o) for every o in [0, d)^m.
template <class F>
void for_each_tuple(int d, int m, F&& f) {
  std::vector<int> o(static_cast<std::size_t>(m), 0);
  while (true) {
    f(o);
    int pos = 0;
    while (pos < m && ++o[pos] == d) o[pos++] = 0;
    if (pos == m) return;
  }
}

double ratio_prefactor(int d, int m, int denominator_arg) {
  return static_cast<double>(factorial(d - m - 1)) /
         static_cast<double>(factorial(denominator_arg));
}

void check_dims(const Strategy& alice, const Strategy& bob,
                const game::GameConfig& config) {
  config.validate();
  if (config.n != 2) throw std::invalid_argument("closed forms need n = 2");
  if (alice.dim() != config.d || bob.dim() != config.d) {
    throw std::invalid_argument("strategy dimension does not match d");
  }
}

}  // namespace

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) {
    throw std::invalid_argument("factorial argument " + std::to_string(n) +
                                " outside [0, 20]");
  }
  std::uint64_t out = 1;
  for (int i = 2; i <= n; ++i) out *= static_cast<std::uint64_t>(i);
  return out;
}

double classical_p_ns(int d) {
  if (d < 2) throw std::invalid_argument("need d >= 2");
  return 1.0 / d;
}

double classical_p_s(int d, int m) {
  require_two_party(d, m);
  return (static_cast<double>(d - 1) / (d - m - 1)) / d;
}

double classical_mixed_payoff(int d, int m, double gamma) {
  const double c = std::cos(gamma);
  const double s = std::sin(gamma);
  return classical_p_ns(d) * c * c + classical_p_s(d, m) * s * s;
}

int lambda_term(int j, std::span<const int> opened, int d) {
  for (int k = 1; k < d; ++k) {
    if (std::find(opened.begin(), opened.end(), sub_mod(j, k, d)) == opened.end()) {
      return k;
    }
  }
  throw DomainError("lambda: every door below " + std::to_string(j) + " is opened",
                    Labels(opened.begin(), opened.end()));
}

double payoff_separable(const Strategy& alice, const Strategy& bob,
                        const game::GameConfig& config) {
  check_dims(alice, bob, config);
  const int d = config.d;
  const int m = config.m;
  const double c = std::cos(config.gamma);
  const double s = std::sqrt(static_cast<double>(d - 1) / (d - m - 1)) *
                   std::sin(config.gamma);
  double total = 0.0;
  for (int j = 0; j < d; ++j) {
    const double weight = std::norm(alice(j, 0));
    if (weight == 0.0) continue;
    for_each_tuple(d, m, [&](const std::vector<int>& o) {
      const int below = sub_mod(j, lambda_term(j, o, d), d);
      std::vector<int> keep(o);
      keep.push_back(j);
      std::vector<int> sw(keep);
      sw.push_back(below);
      const Complex amp = c * bob(j, 0) * (all_distinct(keep) ? 1.0 : 0.0) +
                          s * bob(below, 0) * (all_distinct(sw) ? 1.0 : 0.0);
      total += weight * std::norm(amp);
    });
  }
  return ratio_prefactor(d, m, d - 1) * total;
}

double payoff_qft_separable(const game::GameConfig& config) {
  config.validate();
  const double v = std::sqrt(classical_p_ns(config.d)) * std::cos(config.gamma) +
                   std::sqrt(classical_p_s(config.d, config.m)) *
                       std::sin(config.gamma);
  return v * v;
}

double payoff_entangled(const Strategy& alice, const Strategy& bob,
                        const game::GameConfig& config) {
  check_dims(alice, bob, config);
  const int d = config.d;
  const int m = config.m;
  const double c = std::cos(config.gamma);
  const double s = std::sqrt(static_cast<double>(d - 1) / (d - m - 1)) *
                   std::sin(config.gamma);
  // pair(r, j) = sum_i b_{r,i} a_{j,i}
  std::vector<Complex> pair(static_cast<std::size_t>(d * d));
  for (int r = 0; r < d; ++r) {
    for (int j = 0; j < d; ++j) {
      Complex acc = 0.0;
      for (int i = 0; i < d; ++i) acc += bob(r, i) * alice(j, i);
      pair[static_cast<std::size_t>(r * d + j)] = acc;
    }
  }
  double total = 0.0;
  for (int j = 0; j < d; ++j) {
    for_each_tuple(d, m, [&](const std::vector<int>& o) {
      const int below = sub_mod(j, lambda_term(j, o, d), d);
      std::vector<int> keep(o);
      keep.push_back(j);
      std::vector<int> sw(keep);
      sw.push_back(below);
      const Complex amp =
          c * (all_distinct(keep) ? 1.0 : 0.0) * pair[static_cast<std::size_t>(j * d + j)] +
          s * (all_distinct(sw) ? 1.0 : 0.0) * pair[static_cast<std::size_t>(below * d + j)];
      total += std::norm(amp);
    });
  }
  return ratio_prefactor(d, m, d) * total;
}

double displacement_switch_probability(int d, int m, int k) {
  require_two_party(d, m);
  if (k < 0 || k >= d) throw std::invalid_argument("displacement k outside [0, d)");
  if (k == 0 || k < d - m - 1) return 0.0;
  const double num = static_cast<double>(factorial(m)) *
                     static_cast<double>(factorial(k - 1));
  const double den = static_cast<double>(factorial(m + k + 1 - d)) *
                     static_cast<double>(factorial(d - 2));
  return num / den;
}

double payoff_displacement(int k, const game::GameConfig& config) {
  config.validate();
  const double p_s = displacement_switch_probability(config.d, config.m, k);
  const double p_ns = k == 0 ? 1.0 : 0.0;
  const double c = std::cos(config.gamma);
  const double s = std::sin(config.gamma);
  return p_ns * c * c + p_s * s * s;
}

double gamma_max(int d, int m) {
  return std::atan(std::sqrt(classical_p_s(d, m) / classical_p_ns(d)));
}

double payoff_max(int d, int m) { return classical_p_ns(d) + classical_p_s(d, m); }

void PayoffCurve::validate() const {
  if (gammas.size() != payoffs.size()) {
    throw std::logic_error("curve has unequal gamma and payoff counts");
  }
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (i > 0 && !(gammas[i] > gammas[i - 1])) {
      throw std::logic_error("curve gammas are not strictly ascending");
    }
    if (gammas[i] < 0.0 || gammas[i] > std::numbers::pi / 2 + 1e-12) {
      throw std::logic_error("curve gamma outside [0, pi/2]");
    }
    if (payoffs[i] < -1e-12 || payoffs[i] > 1.0 + 1e-12) {
      throw std::logic_error("curve payoff outside [0, 1]");
    }
  }
}

std::vector<double> gamma_grid(int points) {
  if (points < 2) throw std::invalid_argument("gamma grid needs at least 2 points");
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] =
        (std::numbers::pi / 2) * i / (points - 1);
  }
  out.back() = std::numbers::pi / 2;
  return out;
}

}  // namespace qmonty::oracles
