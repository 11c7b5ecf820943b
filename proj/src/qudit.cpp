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

#include "qmonty/qudit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "qmonty/kernels.hpp"

namespace qmonty {

namespace {

using MatrixXcd = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

MatrixXcd to_eigen(std::span<const Complex> matrix, int d) {
  MatrixXcd m(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      m(r, c) = matrix[static_cast<std::size_t>(r) * d + c];
    }
  }
  return m;
}

double unitarity_defect(std::span<const Complex> matrix, int d) {
  const MatrixXcd m = to_eigen(matrix, d);
  const MatrixXcd gram = m.adjoint() * m;
  return (gram - MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
}

Complex matrix_determinant(std::span<const Complex> matrix, int d) {
  return to_eigen(matrix, d).determinant();
}

void require_slot(int slot, int num_qudits) {
  if (slot < 0 || slot >= num_qudits) {
    throw std::out_of_range("slot " + std::to_string(slot) +
                            " outside register of " +
                            std::to_string(num_qudits) + " qudits");
  }
}

void require_distinct_slots(std::span<const int> slots, int num_qudits) {
  std::vector<char> seen(static_cast<std::size_t>(num_qudits), 0);
  for (int s : slots) {
    require_slot(s, num_qudits);
    if (seen[s]) {
      throw std::invalid_argument("slot " + std::to_string(s) +
                                  " listed twice");
    }
    seen[s] = 1;
  }
}

}  // namespace

DomainError::DomainError(const std::string& what, Labels labels)
    : std::domain_error(what), labels_(std::move(labels)) {}

std::size_t checked_pow(int base, int exp) {
  if (base < 1 || exp < 0) {
    throw std::invalid_argument("checked_pow: bad arguments");
  }
  std::size_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (result > std::numeric_limits<std::size_t>::max() /
                     static_cast<std::size_t>(base)) {
      throw std::overflow_error("register size overflows size_t");
    }
    result *= static_cast<std::size_t>(base);
  }
  return result;
}

std::string format_labels(std::span<const int> labels) {
  std::ostringstream os;
  os << '|';
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) os << ',';
    os << labels[i];
  }
  os << '>';
  return os.str();
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int d, int num_qudits, std::vector<Complex> amplitudes)
    : d_(d), num_qudits_(num_qudits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::from_amplitudes(int d, int num_qudits,
                                         std::vector<Complex> amplitudes) {
  if (d < 1 || num_qudits < 1) {
    throw std::invalid_argument("need d >= 1 and at least one qudit");
  }
  if (amplitudes.size() != checked_pow(d, num_qudits)) {
    throw std::invalid_argument("amplitude count is not d^num_qudits");
  }
  StateVector s(d, num_qudits, std::move(amplitudes));
  if (!s.is_normalized()) {
    throw std::invalid_argument("amplitudes are not normalized");
  }
  return s;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const Complex& a : amplitudes_) total += std::norm(a);
  return total;
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(norm_squared() - 1.0) <= tol;
}

std::size_t StateVector::index_of(std::span<const int> labels) const {
  if (labels.size() != static_cast<std::size_t>(num_qudits_)) {
    throw std::invalid_argument("label tuple length does not match register");
  }
  std::size_t index = 0;
  for (int label : labels) {
    if (label < 0 || label >= d_) {
      throw std::out_of_range("label " + std::to_string(label) +
                              " outside [0, " + std::to_string(d_) + ")");
    }
    index = index * static_cast<std::size_t>(d_) + static_cast<std::size_t>(label);
  }
  return index;
}

Labels StateVector::labels_of(std::size_t index) const {
  Labels labels(static_cast<std::size_t>(num_qudits_));
  for (int t = num_qudits_ - 1; t >= 0; --t) {
    labels[t] = static_cast<int>(index % d_);
    index /= d_;
  }
  return labels;
}

int StateVector::label_at(std::size_t index, int slot) const {
  return static_cast<int>((index / stride(slot)) % d_);
}

std::size_t StateVector::stride(int slot) const {
  require_slot(slot, num_qudits_);
  return checked_pow(d_, slot);
}

// ---------------------------------------------------------------------------
// Strategy

Strategy::Strategy(int d, std::vector<Complex> entries)
    : d_(d), entries_(std::move(entries)) {
  if (d < 1) throw std::invalid_argument("strategy dimension must be >= 1");
  if (entries_.size() != static_cast<std::size_t>(d) * d) {
    throw std::invalid_argument("strategy needs d*d entries");
  }
  if (unitarity_defect(entries_, d) > kAlgebraicTol) {
    throw std::invalid_argument("strategy matrix is not unitary");
  }
  det_ = matrix_determinant(entries_, d);
  special_ = std::abs(det_ - Complex{1.0, 0.0}) <= kAlgebraicTol;
}

Strategy Strategy::conj() const {
  std::vector<Complex> out(entries_.size());
  std::transform(entries_.begin(), entries_.end(), out.begin(),
                 [](Complex z) { return std::conj(z); });
  return Strategy(d_, std::move(out));
}

Strategy Strategy::with_phase(double theta) const {
  const Complex phase = std::polar(1.0, theta);
  std::vector<Complex> out(entries_.size());
  std::transform(entries_.begin(), entries_.end(), out.begin(),
                 [phase](Complex z) { return phase * z; });
  return Strategy(d_, std::move(out));
}

Strategy identity_strategy(int d) {
  std::vector<Complex> m(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i) * d + i] = 1.0;
  return Strategy(d, std::move(m));
}

Strategy qft(int d) {
  if (d < 1) throw std::invalid_argument("qft: d must be >= 1");
  std::vector<Complex> m(static_cast<std::size_t>(d) * d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      // Reduce j*k mod d first so large products keep their phase accuracy.
      const double angle = 2.0 * std::numbers::pi * ((j * k) % d) / d;
      m[static_cast<std::size_t>(j) * d + k] = std::polar(scale, angle);
    }
  }
  return Strategy(d, std::move(m));
}

Strategy sum_d(int d, int shift) {
  if (shift < 0 || shift >= d) {
    throw std::out_of_range("sum_d: shift " + std::to_string(shift) +
                            " outside [0, " + std::to_string(d) + ")");
  }
  std::vector<Complex> m(static_cast<std::size_t>(d) * d);
  for (int j = 0; j < d; ++j) {
    m[static_cast<std::size_t>((j + shift) % d) * d + j] = 1.0;
  }
  return Strategy(d, std::move(m));
}

Strategy homogeneous_superposition(int d, int doors) {
  if (doors < 1 || doors > d) {
    throw std::out_of_range("homogeneous_superposition: doors outside [1, d]");
  }
  if (doors == 1) return identity_strategy(d);
  // H = I - 2 w w^T / (w^T w) with w = e0 - v maps e0 to v.
  std::vector<double> w(static_cast<std::size_t>(d), 0.0);
  const double amp = 1.0 / std::sqrt(static_cast<double>(doors));
  for (int j = 0; j < doors; ++j) w[j] = -amp;
  w[0] += 1.0;
  double ww = 0.0;
  for (double x : w) ww += x * x;
  std::vector<Complex> m(static_cast<std::size_t>(d) * d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      m[static_cast<std::size_t>(r) * d + c] =
          (r == c ? 1.0 : 0.0) - 2.0 * w[r] * w[c] / ww;
    }
  }
  return Strategy(d, std::move(m));
}

bool is_unitary(std::span<const Complex> matrix, int d, double tol) {
  if (d < 1 || matrix.size() != static_cast<std::size_t>(d) * d) return false;
  return unitarity_defect(matrix, d) <= tol;
}

bool is_special_unitary(std::span<const Complex> matrix, int d, double tol) {
  if (!is_unitary(matrix, d, tol)) return false;
  return std::abs(matrix_determinant(matrix, d) - Complex{1.0, 0.0}) <= tol;
}

// ---------------------------------------------------------------------------
// LocalOperator

LocalOperator::LocalOperator(std::string name, int d, std::vector<int> slots,
                             Predicate domain, Action action)
    : name_(std::move(name)), d_(d), slots_(std::move(slots)) {
  if (d < 1) throw std::invalid_argument(name_ + ": dimension must be >= 1");
  if (slots_.empty()) throw std::invalid_argument(name_ + ": no slots");
  {
    std::vector<int> sorted = slots_;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 0 ||
        std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument(name_ + ": slots must be distinct and >= 0");
    }
  }
  const int k = static_cast<int>(slots_.size());
  const std::size_t size = checked_pow(d, k);
  in_domain_.assign(size, 0);
  offsets_.assign(size + 1, 0);

  Labels tuple(static_cast<std::size_t>(k), 0);
  for (std::size_t local = 0; local < size; ++local) {
    offsets_[local] = terms_.size();
    tuple = local_labels(local);
    if (!domain(tuple)) continue;
    in_domain_[local] = 1;
    // Merge repeated outputs so the table holds one term per output.
    std::map<std::size_t, Complex> merged;
    for (const auto& [out, amp] : action(tuple)) {
      if (out.size() != tuple.size()) {
        throw std::logic_error(name_ + ": output tuple has wrong length");
      }
      merged[local_index(out)] += amp;
    }
    double norm = 0.0;
    for (const auto& [out, amp] : merged) {
      if (amp == Complex{}) continue;
      terms_.push_back({out, amp});
      norm += std::norm(amp);
    }
    isometry_defect_ = std::max(isometry_defect_, std::abs(norm - 1.0));
  }
  offsets_[size] = terms_.size();

  if (isometry_defect_ > kAlgebraicTol) {
    throw std::logic_error(name_ + ": not an isometry on its declared domain");
  }

  // <M x | M y> for distinct inputs x, y, accumulated through shared outputs.
  std::unordered_map<std::size_t, std::vector<std::pair<std::size_t, Complex>>>
      by_output;
  for (std::size_t local = 0; local < size; ++local) {
    for (const Term& t : terms(local)) by_output[t.output].push_back({local, t.amplitude});
  }
  std::map<std::pair<std::size_t, std::size_t>, Complex> overlaps;
  for (const auto& [out, sources] : by_output) {
    for (std::size_t a = 0; a < sources.size(); ++a) {
      for (std::size_t b = a + 1; b < sources.size(); ++b) {
        overlaps[{sources[a].first, sources[b].first}] +=
            std::conj(sources[a].second) * sources[b].second;
      }
    }
  }
  for (const auto& [pair, value] : overlaps) {
    orthogonality_defect_ = std::max(orthogonality_defect_, std::abs(value));
  }
}

bool LocalOperator::in_domain(std::span<const int> labels) const {
  return in_domain(local_index(labels));
}

std::span<const LocalOperator::Term> LocalOperator::terms(std::size_t local) const {
  return std::span<const Term>(terms_).subspan(
      offsets_[local], offsets_[local + 1] - offsets_[local]);
}

LocalOperator::Image LocalOperator::image(std::span<const int> labels) const {
  Image out;
  for (const Term& t : terms(local_index(labels))) {
    out.emplace_back(local_labels(t.output), t.amplitude);
  }
  return out;
}

std::size_t LocalOperator::local_index(std::span<const int> labels) const {
  if (labels.size() != slots_.size()) {
    throw std::invalid_argument(name_ + ": tuple length does not match slots");
  }
  std::size_t index = 0;
  for (int label : labels) {
    if (label < 0 || label >= d_) {
      throw std::out_of_range(name_ + ": label outside [0, d)");
    }
    index = index * static_cast<std::size_t>(d_) + static_cast<std::size_t>(label);
  }
  return index;
}

Labels LocalOperator::local_labels(std::size_t local) const {
  Labels labels(slots_.size());
  for (std::size_t t = labels.size(); t-- > 0;) {
    labels[t] = static_cast<int>(local % d_);
    local /= d_;
  }
  return labels;
}

bool same_action(const LocalOperator& a, const LocalOperator& b, double tol) {
  if (a.dim() != b.dim() || a.slots() != b.slots() ||
      a.local_size() != b.local_size()) {
    return false;
  }
  for (std::size_t local = 0; local < a.local_size(); ++local) {
    if (a.in_domain(local) != b.in_domain(local)) return false;
    const auto ta = a.terms(local);
    const auto tb = b.terms(local);
    if (ta.size() != tb.size()) return false;
    for (std::size_t i = 0; i < ta.size(); ++i) {
      if (ta[i].output != tb[i].output ||
          std::abs(ta[i].amplitude - tb[i].amplitude) > tol) {
        return false;
      }
    }
  }
  return true;
}

LocalOperator blend_with_identity(const LocalOperator& op, double gamma,
                                  std::string name) {
  double c = std::cos(gamma);
  double s = std::sin(gamma);
  // Snap the endpoints so gamma = pi/2 tabulates exactly like `op`.
  if (std::abs(c) < 1e-15) c = 0.0;
  if (std::abs(s) < 1e-15) s = 0.0;
  auto action = [&op, c, s](std::span<const int> in) {
    LocalOperator::Image out;
    if (c != 0.0) out.emplace_back(Labels(in.begin(), in.end()), c);
    if (s != 0.0) {
      for (auto& [labels, amp] : op.image(in)) out.emplace_back(labels, s * amp);
    }
    return out;
  };
  auto domain = [&op](std::span<const int> in) { return op.in_domain(in); };
  return LocalOperator(std::move(name), op.dim(), op.slots(), domain, action);
}

LocalOperator identity_operator(int d, std::vector<int> slots) {
  return LocalOperator(
      "identity", d, std::move(slots), [](std::span<const int>) { return true; },
      [](std::span<const int> in) {
        return LocalOperator::Image{{Labels(in.begin(), in.end()), 1.0}};
      });
}

// ---------------------------------------------------------------------------
// States and application

StateVector make_basis_state(int d, const Labels& labels) {
  if (d < 1 || labels.empty()) {
    throw std::invalid_argument("make_basis_state: need d >= 1 and labels");
  }
  StateVector s(d, static_cast<int>(labels.size()),
                std::vector<Complex>(checked_pow(d, static_cast<int>(labels.size()))));
  s.amplitudes_[s.index_of(labels)] = 1.0;
  return s;
}

StateVector ghz_state(int d, int parties) {
  if (d < 2 || parties < 2) {
    throw std::out_of_range("ghz_state: need d >= 2 and parties >= 2");
  }
  StateVector s(d, parties, std::vector<Complex>(checked_pow(d, parties)));
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  Labels labels(static_cast<std::size_t>(parties));
  for (int j = 0; j < d; ++j) {
    std::fill(labels.begin(), labels.end(), j);
    s.amplitudes_[s.index_of(labels)] = amp;
  }
  return s;
}

StateVector tensor(const StateVector& high, const StateVector& low) {
  if (high.dim() != low.dim()) {
    throw std::invalid_argument("tensor: dimension mismatch");
  }
  std::vector<Complex> amps(high.size() * low.size());
  for (std::size_t h = 0; h < high.size(); ++h) {
    if (high[h] == Complex{}) continue;
    for (std::size_t l = 0; l < low.size(); ++l) {
      amps[h * low.size() + l] = high[h] * low[l];
    }
  }
  return StateVector(high.dim(), high.num_qudits() + low.num_qudits(),
                     std::move(amps));
}

StateVector apply_strategy(const StateVector& state, const Strategy& strat,
                           int slot) {
  require_slot(slot, state.num_qudits());
  if (strat.dim() != state.dim()) {
    throw std::invalid_argument("apply_strategy: dimension mismatch");
  }
  std::vector<Complex> out(state.size());
  kernels::apply_single(strat.entries(), state.dim(), state.num_qudits(), slot,
                        state.amplitudes(), out);
  return StateVector(state.dim(), state.num_qudits(), std::move(out));
}

namespace {

template <typename Kernel>
std::vector<Complex> apply_with(const StateVector& state, const LocalOperator& op,
                       Kernel kernel) {
  if (op.dim() != state.dim()) {
    throw std::invalid_argument(op.name() + ": dimension mismatch with state");
  }
  require_distinct_slots(op.slots(), state.num_qudits());
  std::vector<Complex> out(state.size());
  const kernels::Violation v =
      kernel(op, state.num_qudits(), state.amplitudes(), std::span<Complex>(out));
  if (v.found) {
    Labels local;
    for (int s : op.slots()) local.push_back(state.label_at(v.index, s));
    throw DomainError(op.name() + ": basis state " +
                          format_labels(state.labels_of(v.index)) +
                          " is outside the domain (local labels " +
                          format_labels(local) + ")",
                      state.labels_of(v.index));
  }
  if (op.unitary_on_domain() &&
      std::abs(std::accumulate(out.begin(), out.end(), 0.0,
                               [](double acc, Complex z) { return acc + std::norm(z); }) -
               state.norm_squared()) > kAlgebraicTol) {
    throw std::logic_error(op.name() + ": norm not preserved");
  }
  return out;
}

}  // namespace

StateVector apply_local_operator(const StateVector& state,
                                 const LocalOperator& op) {
  return StateVector(state.dim(), state.num_qudits(),
                     apply_with(state, op, kernels::apply_local));
}

StateVector apply_local_operator_serial(const StateVector& state,
                                        const LocalOperator& op) {
  return StateVector(state.dim(), state.num_qudits(),
                     apply_with(state, op, kernels::apply_local_serial));
}

// ---------------------------------------------------------------------------
// Measurement and diagnostics

std::map<Labels, double> outcome_probabilities(const StateVector& state,
                                               std::span<const int> slots) {
  if (slots.empty()) throw std::invalid_argument("no slots to measure");
  require_distinct_slots(slots, state.num_qudits());
  const double norm = state.norm_squared();
  std::map<Labels, double> dist;
  Labels key(slots.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double p = std::norm(state[i]);
    if (p == 0.0) continue;
    for (std::size_t t = 0; t < slots.size(); ++t) key[t] = state.label_at(i, slots[t]);
    dist[key] += p / norm;
  }
  return dist;
}

Measurement project_slots(const StateVector& state, std::span<const int> slots,
                          const Labels& outcome) {
  if (slots.empty()) throw std::invalid_argument("no slots to measure");
  require_distinct_slots(slots, state.num_qudits());
  if (outcome.size() != slots.size()) {
    throw std::invalid_argument("outcome length does not match slots");
  }
  std::vector<Complex> amps(state.size());
  double kept = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    bool match = true;
    for (std::size_t t = 0; t < slots.size() && match; ++t) {
      match = state.label_at(i, slots[t]) == outcome[t];
    }
    if (match) {
      amps[i] = state[i];
      kept += std::norm(state[i]);
    }
  }
  if (kept == 0.0) {
    throw std::invalid_argument("outcome " + format_labels(outcome) +
                                " has zero probability");
  }
  const double scale = 1.0 / std::sqrt(kept);
  for (Complex& a : amps) a *= scale;
  return Measurement{outcome, kept / state.norm_squared(),
                     StateVector(state.dim(), state.num_qudits(), std::move(amps))};
}

Measurement measure_slots(const StateVector& state, std::span<const int> slots,
                          std::mt19937_64& rng) {
  const auto dist = outcome_probabilities(state, slots);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double cumulative = 0.0;
  const Labels* chosen = &dist.rbegin()->first;
  for (const auto& [outcome, p] : dist) {
    cumulative += p;
    if (u < cumulative) {
      chosen = &outcome;
      break;
    }
  }
  return project_slots(state, slots, *chosen);
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
  if (bra.dim() != ket.dim() || bra.num_qudits() != ket.num_qudits()) {
    throw std::invalid_argument("inner_product: register mismatch");
  }
  Complex total{};
  for (std::size_t i = 0; i < bra.size(); ++i) total += std::conj(bra[i]) * ket[i];
  return total;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner_product(a, b));
}

std::vector<double> subsystem_eigenvalues(const StateVector& state,
                                          std::span<const int> slots) {
  if (slots.empty()) throw std::invalid_argument("no slots selected");
  require_distinct_slots(slots, state.num_qudits());
  const int d = state.dim();
  std::vector<int> rest;
  for (int s = 0; s < state.num_qudits(); ++s) {
    if (std::find(slots.begin(), slots.end(), s) == slots.end()) rest.push_back(s);
  }
  const std::size_t rows = checked_pow(d, static_cast<int>(slots.size()));

  // psi as a rows x cols matrix; rho_slots = M M^dagger / <psi|psi>.
  // Zero rows and columns only add zero eigenvalues, so M keeps just the
  // labels that carry amplitude.
  std::map<std::size_t, Eigen::Index> row_ids;
  std::map<std::size_t, Eigen::Index> col_ids;
  std::vector<std::tuple<std::size_t, std::size_t, Complex>> entries;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state[i] == Complex{}) continue;
    std::size_t r = 0;
    for (int s : slots) r = r * d + state.label_at(i, s);
    std::size_t c = 0;
    for (int s : rest) c = c * d + state.label_at(i, s);
    row_ids.emplace(r, 0);
    col_ids.emplace(c, 0);
    entries.emplace_back(r, c, state[i]);
  }
  Eigen::Index next = 0;
  for (auto& [label, id] : row_ids) id = next++;
  next = 0;
  for (auto& [label, id] : col_ids) id = next++;
  MatrixXcd m = MatrixXcd::Zero(static_cast<Eigen::Index>(row_ids.size()),
                                static_cast<Eigen::Index>(col_ids.size()));
  for (const auto& [r, c, z] : entries) m(row_ids.at(r), col_ids.at(c)) = z;
  // M M^dagger and M^dagger M share their nonzero spectrum; use the smaller.
  const MatrixXcd gram = m.rows() <= m.cols() ? MatrixXcd(m * m.adjoint())
                                              : MatrixXcd(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  const double norm = state.norm_squared();
  std::vector<double> values(rows, 0.0);
  const auto& ev = solver.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    values[static_cast<std::size_t>(i)] = std::max(0.0, ev(i) / norm);
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

std::vector<double> marginal_eigenvalues(const StateVector& state, int slot) {
  const int slots[] = {slot};
  return subsystem_eigenvalues(state, slots);
}

}  // namespace qmonty
