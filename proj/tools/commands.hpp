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
 * The four CLI commands as plain functions over option structs, so tests
 * can call them in-process. Each returns a process exit code:
 * 0 success, 1 verification failure, 2 usage or constraint error.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qmonty::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

inline const std::vector<std::string> kScenarios = {
    "classical-mixed", "qft-player", "separable-custom", "entangled-qft",
    "displacement"};

struct SweepOptions {
  std::string scenario;
  int d = 3;
  int m = 1;
  /// Displacement only; unset means every k in [0, d).
  std::optional<int> k;
  int grid = 101;
  /// Unset means the scenario's default.
  std::optional<std::string> alice;
  std::optional<std::string> bob;
  /// separable-custom only: one curve per superposition width 1..d.
  bool family = false;
  /// Adds a `simulated` column from full-state evolution.
  bool simulate = false;
  std::string out;
  std::string format = "csv";
};

struct VerifyOptions {
  int d_min = 3;
  int d_max = 6;
  int pairs = 50;
  std::uint64_t seed = 0;
  /// Unset means gamma in {0, pi/6, pi/4, pi/2}.
  std::optional<int> grid;
  double tolerance = 1e-9;
  /// Test hook: shifts every closed-form value by 1e-6.
  bool corrupt_oracle = false;
  std::string out;
  /// Unset means a plain-text report.
  std::optional<std::string> format;
};

struct ProtocolOptions {
  std::string protocol = "A";
  int d = 4;
  int rounds = 1000;
  std::uint64_t seed = 0;
  std::string approve = "all";
  /// Transcript path (JSON Lines). Empty means no transcript file.
  std::string out;
  /// Summary format; unset means plain text.
  std::optional<std::string> format;
};

struct InfoOptions {
  std::optional<int> d;
  std::optional<int> m;
  std::optional<std::string> format;
};

int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);
int cmd_protocol(const ProtocolOptions& options, std::ostream& out, std::ostream& err);
int cmd_info(const InfoOptions& options, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. Never throws; every failure maps to an
/// exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qmonty::cli
