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

#pragma once

#include <string>
#include <vector>

#include "qmonty/qudit.hpp"

namespace qmonty::cli {

/// Strategy from a selector string:
///   qft | identity | sum:<i> | superpos:<doors> | random:<seed> | random-su:<seed>
/// Throws std::invalid_argument on an unknown or out-of-range selector.
Strategy parse_strategy(const std::string& selector, int d);

/// Help text listing the selector forms.
std::string strategy_selector_help();

/// "all", or one character per validator from {1, 0, y, n}. Throws
/// std::invalid_argument on a bad character or length.
std::vector<bool> parse_approval_mask(const std::string& mask, int validators);

}  // namespace qmonty::cli
