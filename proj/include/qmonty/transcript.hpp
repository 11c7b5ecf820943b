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
 * Text output: protocol transcripts as JSON Lines and the 12-digit
 * number format shared by every CSV and JSON writer.
 *
 * Transcript record, one per line, keys in this order:
 *
 *   seed          unsigned integer
 *   round         unsigned integer
 *   protocol      "A" | "B"
 *   config        {"d", "n", "m"}
 *   bits          [0|1] per party, p_1 first
 *   switches      ["s"|"ns"] per player, p_2 first
 *   approvals     [bool] per validator
 *   outcomes      measured labels (p_1..p_n for A, o_1..o_m for B); [] if aborted
 *   announcements ["w"|"l"] per player; [] if aborted
 *   final_keys    [0|1] per party after negation
 *   flags         {"all_same", "agreement", "aborted", "abort_step"}
 *                 abort_step is null unless aborted
 *   diagnostics   null, or {"register", "marginals", "largest_eigenvalue",
 *                 "entangled", "uniform", "pure"}
 *
 * Floating-point values are rounded to 12 significant digits; magnitudes
 * below 1e-12 are written as 0.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qmonty/protocols.hpp"

namespace qmonty::io {

/// printf "%.12g" with '.' as the decimal separator regardless of locale.
std::string format_number(double value);
/// `value` rounded to 12 significant digits, with |value| < 1e-12 -> 0.
double round12(double value);

/// One transcript as a single-line JSON object, no trailing newline.
std::string to_json_line(const protocol::ProtocolTranscript& transcript);
/// Inverse of to_json_line. Throws std::invalid_argument on malformed input.
protocol::ProtocolTranscript from_json_line(const std::string& line);

/// Every transcript, each followed by '\n'.
void write_jsonl(std::ostream& out,
                 const std::vector<protocol::ProtocolTranscript>& transcripts);

}  // namespace qmonty::io
