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

#include <random>

#include "qmonty/qudit.hpp"

namespace qmonty {

/// QR decomposition of a complex Gaussian matrix with the
/// column phases fixed, giving a Haar-distributed unitary.
Strategy random_unitary(int d, std::mt19937_64& rng);
/// random_unitary rescaled by det^(-1/d) so the determinant is 1.
Strategy random_special_unitary(int d, std::mt19937_64& rng);
/// Normalized complex Gaussian amplitudes.
StateVector random_state(int d, int num_qudits, std::mt19937_64& rng);

}  // namespace qmonty
