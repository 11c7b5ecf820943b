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
 * Dense state vectors over d-level qudits, single-qudit strategies and
 * sparse domain-restricted operators acting on a subset of qudit slots.
 *
 * Label convention: a basis ket is written left to right, e.g.
 * |o_m, ..., o_1, p_n, ..., p_1>. Slot 0 is the rightmost label and varies
 * fastest, so the flat index of a ket is sum_s label(slot s) * d^s.
 * Every `Labels` value in this library is in ket (left-to-right) order.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qmonty {

using Complex = std::complex<double>;
using Labels = std::vector<int>;

/// Tolerance for algebraic identities (norms, unitarity, payoffs).
inline constexpr double kAlgebraicTol = 1e-9;
/// Amplitudes at or below this magnitude count as outside the support.
inline constexpr double kSupportTol = 1e-12;

/// Raised when a state has support outside an operator's declared domain.
class DomainError : public std::domain_error {
 public:
  DomainError(const std::string& what, Labels labels);
  const Labels& labels() const noexcept { return labels_; }

 private:
  Labels labels_;
};

/// d^exp with overflow checking.
std::size_t checked_pow(int base, int exp);

std::string format_labels(std::span<const int> labels);

class Strategy;
class LocalOperator;
struct Measurement;

class StateVector {
 public:
  /// Throws std::invalid_argument on a length mismatch or a norm off by
  /// more than kAlgebraicTol.
  static StateVector from_amplitudes(int d, int num_qudits,
                                     std::vector<Complex> amplitudes);

  int dim() const noexcept { return d_; }
  int num_qudits() const noexcept { return num_qudits_; }
  std::size_t size() const noexcept { return amplitudes_.size(); }

  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](std::size_t index) const { return amplitudes_[index]; }
  Complex amplitude(std::span<const int> labels) const {
    return amplitudes_[index_of(labels)];
  }

  double norm_squared() const;
  bool is_normalized(double tol = kAlgebraicTol) const;

  std::size_t index_of(std::span<const int> labels) const;
  Labels labels_of(std::size_t index) const;
  int label_at(std::size_t index, int slot) const;
  std::size_t stride(int slot) const;

 private:
  StateVector(int d, int num_qudits, std::vector<Complex> amplitudes);

  friend StateVector make_basis_state(int d, const Labels& labels);
  friend StateVector ghz_state(int d, int parties);
  friend StateVector tensor(const StateVector& high, const StateVector& low);
  friend StateVector apply_strategy(const StateVector& state,
                                    const Strategy& strat, int slot);
  friend StateVector apply_local_operator(const StateVector& state,
                                          const LocalOperator& op);
  friend StateVector apply_local_operator_serial(const StateVector& state,
                                                 const LocalOperator& op);
  friend Measurement project_slots(const StateVector& state,
                                          std::span<const int> slots,
                                          const Labels& outcome);

  int d_ = 0;
  int num_qudits_ = 0;
  std::vector<Complex> amplitudes_;
};

/// A player's move: a d x d unitary, row index = output label.
class Strategy {
 public:
  /// `entries` is row-major. Throws std::invalid_argument unless unitary
  /// within kAlgebraicTol. A determinant other than 1 is allowed and only
  /// reported through is_special().
  Strategy(int d, std::vector<Complex> entries);

  int dim() const noexcept { return d_; }
  Complex operator()(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * d_ + col];
  }
  std::span<const Complex> entries() const noexcept { return entries_; }

  Complex determinant() const noexcept { return det_; }
  bool is_special() const noexcept { return special_; }

  /// Entrywise complex conjugate.
  Strategy conj() const;
  /// This strategy times exp(i*theta).
  Strategy with_phase(double theta) const;

 private:
  int d_;
  std::vector<Complex> entries_;
  Complex det_;
  bool special_;
};

Strategy identity_strategy(int d);
/// Entry (j,k) = exp(2*pi*i*j*k/d)/sqrt(d).
Strategy qft(int d);
/// |j> -> |j + shift mod d>.
Strategy sum_d(int d, int shift);
/// A Householder reflection sending |0> to the uniform superposition of
/// |0>, ..., |doors-1>; doors == 1 gives the identity.
Strategy homogeneous_superposition(int d, int doors);

bool is_unitary(std::span<const Complex> matrix, int d, double tol);
/// Unitary within tol and |det - 1| <= tol.
bool is_special_unitary(std::span<const Complex> matrix, int d, double tol);

/**
 * A sparse linear map on an ordered list of qudit slots, defined only on
 * the basis tuples accepted by its domain predicate.
 *
 * Tuples passed to the predicate and action use the same order as
 * `slots()`. Construction tabulates the action for every in-domain tuple
 * and rejects operators whose images are not unit vectors. Pairwise
 * orthogonality of images is measured (orthogonality_defect) but not
 * required: the quantum mixed switch is a per-input isometry whose images
 * overlap.
 */
class LocalOperator {
 public:
  struct Term {
    std::size_t output;  // local index
    Complex amplitude;
  };
  using Predicate = std::function<bool(std::span<const int>)>;
  using Image = std::vector<std::pair<Labels, Complex>>;
  using Action = std::function<Image(std::span<const int>)>;

  LocalOperator(std::string name, int d, std::vector<int> slots,
                Predicate domain, Action action);

  const std::string& name() const noexcept { return name_; }
  int dim() const noexcept { return d_; }
  const std::vector<int>& slots() const noexcept { return slots_; }
  std::size_t local_size() const noexcept { return in_domain_.size(); }

  bool in_domain(std::size_t local) const { return in_domain_[local] != 0; }
  bool in_domain(std::span<const int> labels) const;
  std::span<const Term> terms(std::size_t local) const;
  Image image(std::span<const int> labels) const;

  std::size_t local_index(std::span<const int> labels) const;
  Labels local_labels(std::size_t local) const;

  double isometry_defect() const noexcept { return isometry_defect_; }
  double orthogonality_defect() const noexcept { return orthogonality_defect_; }
  bool unitary_on_domain() const noexcept {
    return orthogonality_defect_ <= kAlgebraicTol;
  }

 private:
  std::string name_;
  int d_;
  std::vector<int> slots_;
  std::vector<char> in_domain_;
  std::vector<std::size_t> offsets_;  // CSR row starts, size local_size()+1
  std::vector<Term> terms_;
  double isometry_defect_ = 0.0;
  double orthogonality_defect_ = 0.0;
};

/// Same slots, same domain, and term-by-term equal images within tol.
bool same_action(const LocalOperator& a, const LocalOperator& b,
                 double tol = kAlgebraicTol);

/// cos(gamma) * I + sin(gamma) * op on op's domain.
LocalOperator blend_with_identity(const LocalOperator& op, double gamma,
                                  std::string name);

LocalOperator identity_operator(int d, std::vector<int> slots);

StateVector make_basis_state(int d, const Labels& labels);
/// (1/sqrt(d)) sum_j |j ... j> over `parties` qudits.
StateVector ghz_state(int d, int parties);
/// high (x) low; `low` occupies the low slots of the result.
StateVector tensor(const StateVector& high, const StateVector& low);

StateVector apply_strategy(const StateVector& state, const Strategy& strat,
                           int slot);

/// Applies `op` with the OpenMP kernel. Throws DomainError if any basis
/// state with amplitude above kSupportTol falls outside op's domain. The
/// result is checked for unit norm whenever op is unitary on its domain.
StateVector apply_local_operator(const StateVector& state,
                                 const LocalOperator& op);
/// Same contract, single-threaded reference path.
StateVector apply_local_operator_serial(const StateVector& state,
                                        const LocalOperator& op);

struct Measurement {
  Labels outcome;  // one label per measured slot, in the order requested
  double probability;
  StateVector collapsed;
};

/// Marginal distribution of `slots`, normalized by the state's norm.
std::map<Labels, double> outcome_probabilities(const StateVector& state,
                                               std::span<const int> slots);
Measurement project_slots(const StateVector& state, std::span<const int> slots,
                          const Labels& outcome);
Measurement measure_slots(const StateVector& state, std::span<const int> slots,
                          std::mt19937_64& rng);

Complex inner_product(const StateVector& bra, const StateVector& ket);
double fidelity(const StateVector& a, const StateVector& b);

/// Eigenvalues of the reduced density matrix on `slots`, descending.
std::vector<double> subsystem_eigenvalues(const StateVector& state,
                                          std::span<const int> slots);
std::vector<double> marginal_eigenvalues(const StateVector& state, int slot);

}  // namespace qmonty
