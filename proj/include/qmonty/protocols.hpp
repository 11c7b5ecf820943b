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
 * Seeded simulations of the two validated key-distribution protocols
 * built on the multi-player game.
 *
 * Protocol A (direct): all-zero start, SUM_d(b_k) strategies, validators
 * run the opening steps, players switch or not, the host measures every
 * p slot and announces wins.
 *
 * Protocol B (GHZ): players share an n-party GHZ state. Validator j - 1
 * writes p_j + j into o_{j-1} with Omega_j. The host then encodes each
 * player's win into o_{j-1} with V_j and measures only the o slots, so
 * the p register stays entangled.
 *
 * Step order in Protocol B differs from a literal reading in two places
 * (see README, "Protocol B step order"): validators act on the GHZ
 * register before the SUM strategies, and before each V_j the host applies
 * a realignment permutation R_j that depends only on its own bit b_1.
 * Without both, the opened doors miss the gap between host and player and
 * V_j sees states outside its domain.
 *
 * A round that leaves an operator's domain (a declining validator does
 * this) is recorded as aborted, with the step that failed.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qmonty/multiplayer.hpp"
#include "qmonty/qudit.hpp"

namespace qmonty::protocol {

enum class ProtocolKind { kDirect, kGhz };

/// "A" or "B".
std::string to_string(ProtocolKind kind);
/// Accepts "A"/"a"/"direct" and "B"/"b"/"ghz". Throws std::invalid_argument.
ProtocolKind parse_kind(const std::string& text);

struct ProtocolConfig {
  ProtocolKind kind = ProtocolKind::kDirect;
  int d = 4;
  int n = 2;
  int m = 2;
  /// One entry per validator, in validator order.
  std::vector<bool> approvals{true, true};
  std::uint64_t seed = 0;
  int rounds = 1;

  /// Direct: d = m + 2 and d - n >= m, hence n = 2. GHZ: d = m + 2 = n + 1.
  /// Also checks approvals.size() == m and rounds >= 1. Throws
  /// std::invalid_argument with the violated condition.
  void validate() const;

  /// The unique (n, m) for `kind` at dimension d, every validator approving.
  static ProtocolConfig for_dimension(ProtocolKind kind, int d);
};

/// Validator j - 1's operator on (o_{j-1}, p_j): |0, i> -> |i + j, i>.
/// GHZ layout, so n = d - 1 and 2 <= j <= n.
LocalOperator omega_operator(int j, int d);
/// Host's operator on (o_{j-1}, p_j, p_1): |i + j, i, k> -> ||k - i|, i, k>,
/// defined where k - i is -1, 0 or 1 mod d.
LocalOperator victory_encoding_operator(int j, int d);
/// Host permutation on (o_{j-1}, p_j, p_1):
/// |o, i, k> -> |o + i - k + b1, i, k>.
LocalOperator realignment_operator(int j, int d, int host_bit);

/// Per-round random draws: bits[k-1] for party k, switches[k-2] for
/// player k.
struct RoundChoices {
  std::vector<int> bits;
  std::vector<bool> switches;
};

/// Generator for one (seed, round, stream). Stream 0 is the host's
/// measurement, stream k is party k's private choices.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t round, int stream);
RoundChoices draw_choices(const ProtocolConfig& config, std::uint64_t round);

struct Diagnostics {
  /// "o" for the direct protocol (opened-door register), "p" for GHZ.
  std::string register_name;
  /// Single-slot marginal eigenvalues of the residual state, descending,
  /// one list per slot of that register in index order.
  std::vector<std::vector<double>> marginals;
  /// Largest eigenvalue of the residual register's reduced state.
  double largest_eigenvalue = 0.0;
  /// Some marginal has a second eigenvalue above 1e-6.
  bool entangled = false;
  /// Every marginal equals 1/d within 1e-9.
  bool uniform = false;
  /// largest_eigenvalue is 1 within 1e-9.
  bool pure = false;
};

struct ProtocolTranscript {
  std::uint64_t seed = 0;
  std::uint64_t round = 0;
  ProtocolKind kind = ProtocolKind::kDirect;
  int d = 0;
  int n = 0;
  int m = 0;
  std::vector<int> bits;
  std::vector<bool> switches;
  std::vector<bool> approvals;
  /// Measured labels: p_1..p_n for A, o_1..o_m for B. Empty when aborted.
  Labels outcomes;
  /// 'w' or 'l' per player, p_2..p_n. Empty when aborted.
  std::string announcements;
  /// Key bit per party after the negation rule.
  std::vector<int> final_keys;
  bool all_same = false;
  bool agreement = false;
  bool aborted = false;
  /// Operator that rejected the state, e.g. "O_2", "S_2" or "V_3".
  std::string abort_step;
  std::optional<Diagnostics> diagnostics;
};

/// The register just before the host's measurement for fixed choices.
/// Throws DomainError when a step leaves an operator's domain.
StateVector evolve_round(const ProtocolConfig& config, const RoundChoices& choices);

/// One round with explicit choices; `measurement_rng` picks the outcome.
ProtocolTranscript run_round(const ProtocolConfig& config, std::uint64_t round,
                             const RoundChoices& choices,
                             std::mt19937_64& measurement_rng);
/// One seeded round of the configured protocol.
ProtocolTranscript run_round(const ProtocolConfig& config, std::uint64_t round);

/// Checked wrappers: throw std::invalid_argument if `config.kind` differs.
ProtocolTranscript run_protocol_a(const ProtocolConfig& config, std::uint64_t round);
ProtocolTranscript run_protocol_b(const ProtocolConfig& config, std::uint64_t round);

struct BatchReport {
  ProtocolConfig config;
  int rounds = 0;
  int flagged = 0;
  int aborted = 0;
  /// Rounds not flagged as all-same.
  int counted = 0;
  int agreed = 0;
  /// agreed / counted; 0 when counted is 0.
  double agreement_rate = 0.0;
  double all_same_frequency = 0.0;
  double expected_all_same = 0.0;
  /// Binomial standard deviation of the frequency at the expected value.
  double sigma = 0.0;
  bool all_same_within_5sigma = false;
  /// False for the direct protocol at m = 1, whose residual o register
  /// is a single basis state.
  bool diagnostics_applicable = false;
  /// Non-flagged, completed rounds with every validator approving.
  int diagnostic_rounds = 0;
  int diagnostic_failures = 0;
  bool diagnostics_pass = false;
  std::vector<ProtocolTranscript> transcripts;
};

/// Runs rounds 0..rounds-1 in parallel. Transcripts are in round order.
BatchReport run_batch(const ProtocolConfig& config);

}  // namespace qmonty::protocol
