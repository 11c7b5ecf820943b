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

#include "qmonty/random.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace qmonty {

namespace {

using MatrixXcd = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

MatrixXcd gaussian_matrix(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXcd m(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) m(r, c) = Complex(normal(rng), normal(rng));
  }
  return m;
}

std::vector<Complex> row_major(const MatrixXcd& m) {
  const auto d = static_cast<std::size_t>(m.rows());
  std::vector<Complex> out(d * d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      out[r * d + c] = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

MatrixXcd haar(int d, std::mt19937_64& rng) {
  const MatrixXcd z = gaussian_matrix(d, rng);
  Eigen::HouseholderQR<MatrixXcd> qr(z);
  MatrixXcd q = qr.householderQ();
  const MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const Complex diag = r(i, i);
    const Complex phase = std::abs(diag) > 0 ? diag / std::abs(diag) : Complex(1.0);
    q.col(i) *= phase;
  }
  return q;
}

}  // namespace

Strategy random_unitary(int d, std::mt19937_64& rng) {
  return Strategy(d, row_major(haar(d, rng)));
}

Strategy random_special_unitary(int d, std::mt19937_64& rng) {
  MatrixXcd q = haar(d, rng);
  const Complex det = q.determinant();
  q *= std::polar(1.0, -std::arg(det) / d);
  return Strategy(d, row_major(q));
}

StateVector random_state(int d, int num_qudits, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> amps(checked_pow(d, num_qudits));
  double norm = 0.0;
  for (Complex& a : amps) {
    a = Complex(normal(rng), normal(rng));
    norm += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (Complex& a : amps) a *= scale;
  return StateVector::from_amplitudes(d, num_qudits, std::move(amps));
}

}  // namespace qmonty
