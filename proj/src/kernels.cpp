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

#include "qmonty/kernels.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace qmonty::kernels {

namespace {

std::size_t power(int d, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(d);
  return r;
}

// Strides of every slot not in `slots`, lowest slot first.
std::vector<std::size_t> complement_strides(int d, int num_qudits,
                                            const std::vector<int>& slots) {
  std::vector<char> used(static_cast<std::size_t>(num_qudits), 0);
  for (int s : slots) used[s] = 1;
  std::vector<std::size_t> strides;
  for (int s = 0; s < num_qudits; ++s) {
    if (!used[s]) strides.push_back(power(d, s));
  }
  return strides;
}

inline std::size_t block_base(std::size_t block, int d,
                              const std::vector<std::size_t>& strides) {
  std::size_t base = 0;
  for (std::size_t st : strides) {
    base += (block % d) * st;
    block /= d;
  }
  return base;
}

}  // namespace

Violation apply_local(const LocalOperator& op, int num_qudits,
                      std::span<const Complex> in, std::span<Complex> out) {
  const int d = op.dim();
  const auto& slots = op.slots();
  const std::size_t local_size = op.local_size();

  // Global offset of every local tuple.
  std::vector<std::size_t> offset(local_size, 0);
  for (std::size_t l = 0; l < local_size; ++l) {
    const Labels labels = op.local_labels(l);
    for (std::size_t t = 0; t < slots.size(); ++t) {
      offset[l] += static_cast<std::size_t>(labels[t]) * power(d, slots[t]);
    }
  }
  const auto strides = complement_strides(d, num_qudits, slots);
  const auto blocks = static_cast<std::int64_t>(in.size() / local_size);
  std::size_t bad = std::numeric_limits<std::size_t>::max();

#pragma omp parallel for schedule(static) reduction(min : bad)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::size_t base = block_base(static_cast<std::size_t>(b), d, strides);
    for (std::size_t l = 0; l < local_size; ++l) {
      const Complex a = in[base + offset[l]];
      if (a == Complex{}) continue;
      if (!op.in_domain(l)) {
        if (std::abs(a) > kSupportTol && base + offset[l] < bad) bad = base + offset[l];
        continue;
      }
      for (const auto& term : op.terms(l)) {
        out[base + offset[term.output]] += a * term.amplitude;
      }
    }
  }

  if (bad != std::numeric_limits<std::size_t>::max()) return {true, bad};
  return {};
}

Violation apply_local_serial(const LocalOperator& op, int num_qudits,
                             std::span<const Complex> in,
                             std::span<Complex> out) {
  const int d = op.dim();
  const auto& slots = op.slots();
  const int k = static_cast<int>(slots.size());
  (void)num_qudits;

  for (std::size_t idx = 0; idx < in.size(); ++idx) {
    const Complex a = in[idx];
    if (a == Complex{}) continue;
    std::size_t local = 0;
    std::size_t base = idx;
    for (int t = 0; t < k; ++t) {
      const std::size_t stride = power(d, slots[t]);
      const std::size_t label = (idx / stride) % d;
      local += label * power(d, k - 1 - t);
      base -= label * stride;
    }
    if (!op.in_domain(local)) {
      if (std::abs(a) > kSupportTol) return {true, idx};
      continue;
    }
    for (const auto& term : op.terms(local)) {
      std::size_t target = base;
      std::size_t rem = term.output;
      for (int t = k - 1; t >= 0; --t) {
        target += (rem % d) * power(d, slots[t]);
        rem /= d;
      }
      out[target] += a * term.amplitude;
    }
  }
  return {};
}

void apply_single(std::span<const Complex> matrix, int d, int num_qudits,
                  int slot, std::span<const Complex> in,
                  std::span<Complex> out) {
  const std::size_t stride = power(d, slot);
  const auto strides = complement_strides(d, num_qudits, {slot});
  const auto blocks = static_cast<std::int64_t>(in.size() / d);

#pragma omp parallel
  {
    std::vector<Complex> column(static_cast<std::size_t>(d));
#pragma omp for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
      const std::size_t base = block_base(static_cast<std::size_t>(b), d, strides);
      bool any = false;
      for (int c = 0; c < d; ++c) {
        column[c] = in[base + c * stride];
        any = any || column[c] != Complex{};
      }
      for (int r = 0; r < d; ++r) {
        Complex acc{};
        if (any) {
          for (int c = 0; c < d; ++c) {
            acc += matrix[static_cast<std::size_t>(r) * d + c] * column[c];
          }
        }
        out[base + r * stride] = acc;
      }
    }
  }
}

void apply_single_serial(std::span<const Complex> matrix, int d,
                         int num_qudits, int slot, std::span<const Complex> in,
                         std::span<Complex> out) {
  (void)num_qudits;
  const std::size_t stride = power(d, slot);
  std::fill(out.begin(), out.end(), Complex{});
  for (std::size_t idx = 0; idx < in.size(); ++idx) {
    if (in[idx] == Complex{}) continue;
    const int c = static_cast<int>((idx / stride) % d);
    const std::size_t base = idx - c * stride;
    for (int r = 0; r < d; ++r) {
      out[base + r * stride] += matrix[static_cast<std::size_t>(r) * d + c] * in[idx];
    }
  }
}

}  // namespace qmonty::kernels
