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
 * Raw amplitude kernels. Each operation has an OpenMP version, which
 * splits the register into independent blocks (one per assignment of the
 * untouched slots), and a serial reference that scatters one input index
 * at a time. The two share no indexing code so they can check each other.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include "qmonty/qudit.hpp"

namespace qmonty::kernels {

/// First input index found with support outside the operator's domain.
struct Violation {
  bool found = false;
  std::size_t index = 0;
};

/// `out` must be zero-filled and the same length as `in`.
Violation apply_local(const LocalOperator& op, int num_qudits,
                      std::span<const Complex> in, std::span<Complex> out);
Violation apply_local_serial(const LocalOperator& op, int num_qudits,
                             std::span<const Complex> in,
                             std::span<Complex> out);

/// Dense d x d row-major `matrix` on one slot. `out` is overwritten.
void apply_single(std::span<const Complex> matrix, int d, int num_qudits,
                  int slot, std::span<const Complex> in,
                  std::span<Complex> out);
void apply_single_serial(std::span<const Complex> matrix, int d,
                         int num_qudits, int slot, std::span<const Complex> in,
                         std::span<Complex> out);

}  // namespace qmonty::kernels
