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

#include "selectors.hpp"

#include <charconv>
#include <random>
#include <stdexcept>

#include "qmonty/random.hpp"

namespace qmonty::cli {

namespace {

template <class T>
T parse_number(const std::string& text, const std::string& selector) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::invalid_argument("bad number in strategy selector '" + selector + "'");
  }
  return value;
}

}  // namespace

Strategy parse_strategy(const std::string& selector, int d) {
  const auto colon = selector.find(':');
  const std::string head = selector.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : selector.substr(colon + 1);
  const bool has_arg = colon != std::string::npos;

  if (head == "qft" && !has_arg) return qft(d);
  if (head == "identity" && !has_arg) return identity_strategy(d);
  if (head == "sum" && has_arg) {
    const int shift = parse_number<int>(arg, selector);
    if (shift < 0 || shift >= d) {
      throw std::invalid_argument("sum:<i> needs 0 <= i < d in '" + selector + "'");
    }
    return sum_d(d, shift);
  }
  if (head == "superpos" && has_arg) {
    const int doors = parse_number<int>(arg, selector);
    if (doors < 1 || doors > d) {
      throw std::invalid_argument("superpos:<doors> needs 1 <= doors <= d in '" +
                                  selector + "'");
    }
    return homogeneous_superposition(d, doors);
  }
  if ((head == "random" || head == "random-su") && has_arg) {
    std::mt19937_64 rng(parse_number<std::uint64_t>(arg, selector));
    return head == "random" ? random_unitary(d, rng) : random_special_unitary(d, rng);
  }
  throw std::invalid_argument("unknown strategy selector '" + selector + "'\n" +
                              strategy_selector_help());
}

std::string strategy_selector_help() {
  return "strategy selectors: qft, identity, sum:<i>, superpos:<doors>, "
         "random:<seed>, random-su:<seed>";
}

std::vector<bool> parse_approval_mask(const std::string& mask, int validators) {
  if (mask == "all") return std::vector<bool>(static_cast<std::size_t>(validators), true);
  if (static_cast<int>(mask.size()) != validators) {
    throw std::invalid_argument("--approve mask '" + mask + "' has " +
                                std::to_string(mask.size()) + " entries, need " +
                                std::to_string(validators) + " (one per validator)");
  }
  std::vector<bool> out;
  for (char c : mask) {
    if (c == '1' || c == 'y') {
      out.push_back(true);
    } else if (c == '0' || c == 'n') {
      out.push_back(false);
    } else {
      throw std::invalid_argument(std::string("--approve mask character '") + c +
                                  "' is not one of 1, 0, y, n");
    }
  }
  return out;
}

}  // namespace qmonty::cli
