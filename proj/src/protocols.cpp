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

#include "qmonty/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>

#include "qmonty/game.hpp"

namespace qmonty::protocol {

using multi::opened_slot;
using multi::player_slot;

std::string to_string(ProtocolKind kind) {
  return kind == ProtocolKind::kDirect ? "A" : "B";
}

ProtocolKind parse_kind(const std::string& text) {
  if (text == "A" || text == "a" || text == "direct") return ProtocolKind::kDirect;
  if (text == "B" || text == "b" || text == "ghz") return ProtocolKind::kGhz;
  throw std::invalid_argument("unknown protocol '" + text + "' (expected A or B)");
}

void ProtocolConfig::validate() const {
  const std::string where = "protocol " + to_string(kind) + ": ";
  if (d < 2) throw std::invalid_argument(where + "need d >= 2");
  if (n < 2) throw std::invalid_argument(where + "need n >= 2 parties");
  if (m != d - 2) throw std::invalid_argument(where + "need d = m + 2");
  if (kind == ProtocolKind::kDirect) {
    if (d - n < m) {
      throw std::invalid_argument(where + "need d - n >= m, so n = 2 when d = m + 2");
    }
  } else if (n != d - 1) {
    throw std::invalid_argument(where + "need d = n + 1");
  }
  if (static_cast<int>(approvals.size()) != m) {
    throw std::invalid_argument(where + "need one approval per validator (m = " +
                                std::to_string(m) + ")");
  }
  if (rounds < 1) throw std::invalid_argument(where + "need rounds >= 1");
}

ProtocolConfig ProtocolConfig::for_dimension(ProtocolKind kind, int d) {
  ProtocolConfig config;
  config.kind = kind;
  config.d = d;
  config.m = d - 2;
  config.n = kind == ProtocolKind::kDirect ? 2 : d - 1;
  config.approvals.assign(static_cast<std::size_t>(std::max(config.m, 0)), true);
  return config;
}

namespace {

void check_ghz_index(int j, int d, const char* what) {
  if (d < 3) throw std::invalid_argument(std::string(what) + ": need d >= 3");
  if (j < 2 || j > d - 1) {
    throw std::out_of_range(std::string(what) + ": j = " + std::to_string(j) +
                            " outside [2, " + std::to_string(d - 1) + "]");
  }
}

// (o_{j-1}, p_j, p_1) in the GHZ layout, n = d - 1.
std::vector<int> host_triple(int j, int d) {
  return {opened_slot(j - 1, d - 1), player_slot(j), player_slot(1)};
}

}  // namespace

LocalOperator omega_operator(int j, int d) {
  check_ghz_index(j, d, "omega_operator");
  auto domain = [](std::span<const int> t) { return t[0] == 0; };
  auto action = [j, d](std::span<const int> t) {
    return LocalOperator::Image{{Labels{(t[1] + j) % d, t[1]}, 1.0}};
  };
  return LocalOperator("Omega_" + std::to_string(j), d,
                       {opened_slot(j - 1, d - 1), player_slot(j)}, domain, action);
}

LocalOperator victory_encoding_operator(int j, int d) {
  check_ghz_index(j, d, "victory_encoding_operator");
  auto domain = [j, d](std::span<const int> t) {
    const int diff = ((t[2] - t[1]) % d + d) % d;
    return t[0] == (t[1] + j) % d && (diff == 0 || diff == 1 || diff == d - 1);
  };
  auto action = [d](std::span<const int> t) {
    const int diff = ((t[2] - t[1]) % d + d) % d;
    return LocalOperator::Image{{Labels{diff == 0 ? 0 : 1, t[1], t[2]}, 1.0}};
  };
  return LocalOperator("V_" + std::to_string(j), d, host_triple(j, d), domain,
                       action);
}

LocalOperator realignment_operator(int j, int d, int host_bit) {
  check_ghz_index(j, d, "realignment_operator");
  auto domain = [](std::span<const int>) { return true; };
  auto action = [d, host_bit](std::span<const int> t) {
    const int o = (((t[0] + t[1] - t[2] + host_bit) % d) + d) % d;
    return LocalOperator::Image{{Labels{o, t[1], t[2]}, 1.0}};
  };
  return LocalOperator("R_" + std::to_string(j), d, host_triple(j, d), domain,
                       action);
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t round, int stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(round), static_cast<std::uint32_t>(round >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

RoundChoices draw_choices(const ProtocolConfig& config, std::uint64_t round) {
  RoundChoices choices;
  for (int k = 1; k <= config.n; ++k) {
    std::mt19937_64 rng = stream_rng(config.seed, round, k);
    choices.bits.push_back(static_cast<int>(rng() >> 63));
    if (k >= 2) choices.switches.push_back((rng() >> 63) != 0);
  }
  return choices;
}

namespace {

// Operators for one config, built once and shared read-only by every round.
class Engine {
 public:
  explicit Engine(const ProtocolConfig& config) : config_(config) {
    config_.validate();
    const int d = config_.d;
    const int n = config_.n;
    const int m = config_.m;
    for (int k = 2; k <= n; ++k) switches_.push_back(multi::player_switch_operator(k, d, n, m));
    if (config_.kind == ProtocolKind::kDirect) {
      const game::GameConfig game{d, m, n, 0.0};
      for (int j = 1; j <= m; ++j) openings_.push_back(multi::multi_door_opening_operator(j, game));
    } else {
      for (int j = 2; j <= n; ++j) {
        openings_.push_back(omega_operator(j, d));
        victory_.push_back(victory_encoding_operator(j, d));
        realign_[0].push_back(realignment_operator(j, d, 0));
        realign_[1].push_back(realignment_operator(j, d, 1));
      }
    }
  }

  const ProtocolConfig& config() const { return config_; }

  // `stage` tracks the operator being applied so a DomainError can be
  // attributed to a step.
  StateVector evolve(const RoundChoices& choices, std::string& stage) const {
    check_choices(choices);
    const int d = config_.d;
    const int n = config_.n;
    const int m = config_.m;
    auto step = [&stage](const StateVector& s, const LocalOperator& op) {
      stage = op.name();
      return apply_local_operator(s, op);
    };
    auto strategies = [&](StateVector s) {
      for (int k = 1; k <= n; ++k) {
        s = apply_strategy(s, sum_d(d, choices.bits[static_cast<std::size_t>(k - 1)]),
                           player_slot(k));
      }
      return s;
    };
    auto switches = [&](StateVector s) {
      for (int k = 2; k <= n; ++k) {
        if (choices.switches[static_cast<std::size_t>(k - 2)]) {
          s = step(s, switches_[static_cast<std::size_t>(k - 2)]);
        }
      }
      return s;
    };

    if (config_.kind == ProtocolKind::kDirect) {
      StateVector s = strategies(make_basis_state(d, Labels(static_cast<std::size_t>(m + n), 0)));
      for (int j = 1; j <= m; ++j) {
        if (config_.approvals[static_cast<std::size_t>(j - 1)]) {
          s = step(s, openings_[static_cast<std::size_t>(j - 1)]);
        }
      }
      return switches(std::move(s));
    }

    StateVector s = tensor(make_basis_state(d, Labels(static_cast<std::size_t>(m), 0)),
                           ghz_state(d, n));
    for (int j = 2; j <= n; ++j) {
      if (config_.approvals[static_cast<std::size_t>(j - 2)]) {
        s = step(s, openings_[static_cast<std::size_t>(j - 2)]);
      }
    }
    s = switches(strategies(std::move(s)));
    const int host_bit = choices.bits[0];
    for (int j = 2; j <= n; ++j) {
      s = step(s, realign_[host_bit][static_cast<std::size_t>(j - 2)]);
      s = step(s, victory_[static_cast<std::size_t>(j - 2)]);
    }
    return s;
  }

  ProtocolTranscript run(std::uint64_t round, const RoundChoices& choices,
                         std::mt19937_64& measurement_rng) const {
    check_choices(choices);
    const int d = config_.d;
    const int n = config_.n;
    const int m = config_.m;
    const bool direct = config_.kind == ProtocolKind::kDirect;

    ProtocolTranscript t;
    t.seed = config_.seed;
    t.round = round;
    t.kind = config_.kind;
    t.d = d;
    t.n = n;
    t.m = m;
    t.bits = choices.bits;
    t.switches = choices.switches;
    t.approvals = config_.approvals;
    t.all_same = std::all_of(t.bits.begin(), t.bits.end(),
                             [&](int b) { return b == t.bits[0]; });
    t.final_keys = t.bits;

    std::string stage;
    std::optional<StateVector> evolved;
    try {
      evolved = evolve(choices, stage);
    } catch (const DomainError&) {
      t.aborted = true;
      t.abort_step = stage;
    }

    if (evolved) {
      std::vector<int> measured;
      std::vector<int> residual;
      for (int k = 1; k <= n; ++k) (direct ? measured : residual).push_back(player_slot(k));
      for (int i = 1; i <= m; ++i) (direct ? residual : measured).push_back(opened_slot(i, n));

      Measurement result = measure_slots(*evolved, measured, measurement_rng);
      t.outcomes = result.outcome;
      for (int k = 2; k <= n; ++k) {
        const bool won = direct ? t.outcomes[static_cast<std::size_t>(k - 1)] == t.outcomes[0]
                                : t.outcomes[static_cast<std::size_t>(k - 2)] == 0;
        t.announcements.push_back(won ? 'w' : 'l');
        const bool switched = t.switches[static_cast<std::size_t>(k - 2)];
        if (switched == won) t.final_keys[static_cast<std::size_t>(k - 1)] ^= 1;
      }
      if (!residual.empty()) t.diagnostics = diagnose(result.collapsed, residual, direct);
    }
    t.agreement = std::all_of(t.final_keys.begin(), t.final_keys.end(),
                              [&](int b) { return b == t.final_keys[0]; });
    return t;
  }

 private:
  void check_choices(const RoundChoices& choices) const {
    if (static_cast<int>(choices.bits.size()) != config_.n ||
        static_cast<int>(choices.switches.size()) != config_.n - 1) {
      throw std::invalid_argument("round choices need n bits and n - 1 switch flags");
    }
    for (int b : choices.bits) {
      if (b != 0 && b != 1) throw std::invalid_argument("strategy bits must be 0 or 1");
    }
  }

  Diagnostics diagnose(const StateVector& residual_state,
                       const std::vector<int>& slots, bool direct) const {
    Diagnostics diag;
    diag.register_name = direct ? "o" : "p";
    diag.uniform = true;
    const double flat = 1.0 / config_.d;
    for (int slot : slots) {
      std::vector<double> ev = marginal_eigenvalues(residual_state, slot);
      if (ev.size() > 1 && ev[1] > 1e-6) diag.entangled = true;
      for (double v : ev) {
        if (std::abs(v - flat) > kAlgebraicTol) diag.uniform = false;
      }
      diag.marginals.push_back(std::move(ev));
    }
    diag.largest_eigenvalue = subsystem_eigenvalues(residual_state, slots).front();
    diag.pure = std::abs(diag.largest_eigenvalue - 1.0) <= kAlgebraicTol;
    return diag;
  }

  ProtocolConfig config_;
  std::vector<LocalOperator> openings_;
  std::vector<LocalOperator> switches_;
  std::vector<LocalOperator> victory_;
  std::vector<LocalOperator> realign_[2];
};

}  // namespace

StateVector evolve_round(const ProtocolConfig& config, const RoundChoices& choices) {
  std::string stage;
  return Engine(config).evolve(choices, stage);
}

ProtocolTranscript run_round(const ProtocolConfig& config, std::uint64_t round,
                             const RoundChoices& choices,
                             std::mt19937_64& measurement_rng) {
  return Engine(config).run(round, choices, measurement_rng);
}

ProtocolTranscript run_round(const ProtocolConfig& config, std::uint64_t round) {
  std::mt19937_64 rng = stream_rng(config.seed, round, 0);
  return run_round(config, round, draw_choices(config, round), rng);
}

ProtocolTranscript run_protocol_a(const ProtocolConfig& config, std::uint64_t round) {
  if (config.kind != ProtocolKind::kDirect) throw std::invalid_argument("config is not protocol A");
  return run_round(config, round);
}

ProtocolTranscript run_protocol_b(const ProtocolConfig& config, std::uint64_t round) {
  if (config.kind != ProtocolKind::kGhz) throw std::invalid_argument("config is not protocol B");
  return run_round(config, round);
}

BatchReport run_batch(const ProtocolConfig& config) {
  const Engine engine(config);
  BatchReport report;
  report.config = config;
  report.rounds = config.rounds;
  report.transcripts.resize(static_cast<std::size_t>(config.rounds));

  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 32)
  for (int r = 0; r < config.rounds; ++r) {
    try {
      const auto round = static_cast<std::uint64_t>(r);
      std::mt19937_64 rng = stream_rng(config.seed, round, 0);
      report.transcripts[static_cast<std::size_t>(r)] =
          engine.run(round, draw_choices(config, round), rng);
    } catch (...) {
#pragma omp critical(qmonty_batch_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  const bool all_approve = std::all_of(config.approvals.begin(), config.approvals.end(),
                                       [](bool a) { return a; });
  report.diagnostics_applicable =
      config.kind == ProtocolKind::kGhz || config.m >= 2;
  for (const ProtocolTranscript& t : report.transcripts) {
    if (t.aborted) ++report.aborted;
    if (t.all_same) {
      ++report.flagged;
      continue;
    }
    ++report.counted;
    if (t.agreement) ++report.agreed;
    if (all_approve && !t.aborted && t.diagnostics) {
      ++report.diagnostic_rounds;
      const Diagnostics& diag = *t.diagnostics;
      const bool ok = config.kind == ProtocolKind::kDirect ? diag.entangled
                                                           : diag.pure && diag.uniform;
      if (!ok) ++report.diagnostic_failures;
    }
  }
  report.agreement_rate =
      report.counted == 0 ? 0.0 : static_cast<double>(report.agreed) / report.counted;
  report.all_same_frequency = static_cast<double>(report.flagged) / report.rounds;
  report.expected_all_same = std::ldexp(1.0, -(config.n - 1));
  report.sigma = std::sqrt(report.expected_all_same * (1.0 - report.expected_all_same) /
                           report.rounds);
  report.all_same_within_5sigma =
      std::abs(report.all_same_frequency - report.expected_all_same) <= 5.0 * report.sigma;
  report.diagnostics_pass = report.diagnostics_applicable && report.diagnostic_rounds > 0 &&
                            report.diagnostic_failures == 0;
  return report;
}

}  // namespace qmonty::protocol
