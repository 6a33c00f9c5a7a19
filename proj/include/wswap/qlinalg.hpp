// Copyright 2026 The wswap Authors
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

// Dense complex linear algebra for registers of up to 10 qubits.
//
// Basis index convention (global, used by every module): qubit 0 is the MOST
// significant bit of a basis index. For a 3-qubit register, |100> on qubits
// (0,1,2) is basis index 4. Kets printed left-to-right therefore read qubit 0
// first, and a textbook label "qubit n" (1-based) maps to index n-1 here.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace wswap {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 10;
// Default tolerance for state invariants (norms, traces, hermiticity).
inline constexpr double kStateTol = 1e-10;
// Slack allowed on the smallest eigenvalue of a density matrix.
inline constexpr double kPsdSlack = 1e-9;
// Branches below this probability are treated as impossible, not tiny.
inline constexpr double kBranchFloor = 1e-12;

// Bit of `index` holding the state of `qubit` in a `total`-qubit register.
inline int qubit_bit(std::size_t index, int qubit, int total) {
  return static_cast<int>((index >> (total - 1 - qubit)) & 1u);
}

// Pure state of num_qubits qubits: 2^k amplitudes in the index convention
// above. Construction validates size and finiteness; normalization is the
// caller's contract (see normalized()).
struct StateVector {
  int num_qubits = 0;
  Vector amps;

  static StateVector zero(int num_qubits);  // |0...0>
  static StateVector basis(int num_qubits, std::size_t index);
  static StateVector from(int num_qubits, Vector amplitudes);

  std::size_t dim() const { return static_cast<std::size_t>(amps.size()); }
  double norm() const { return amps.norm(); }
  StateVector normalized() const;
  double probability(std::size_t basis_index) const {
    return std::norm(amps(static_cast<Eigen::Index>(basis_index)));
  }
};

// 2^k x 2^k density operator. from() checks shape and finiteness; the
// Hermiticity/trace/PSD invariants are validated where states are produced
// and in the test suites.
struct DensityMatrix {
  int num_qubits = 0;
  Matrix rho;

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix from(int num_qubits, Matrix matrix);

  std::size_t dim() const { return static_cast<std::size_t>(rho.rows()); }
  double trace_real() const { return rho.trace().real(); }
  double basis_probability(std::size_t i) const {
    return rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i))
        .real();
  }
};

// Outcome of a selective operation: normalized post-state plus the weight of
// the branch. A branch with probability below kBranchFloor carries no state
// at all; zero probability is a signal, never a NaN state.
struct Branch {
  std::optional<DensityMatrix> state;
  double probability = 0.0;

  bool empty() const { return !state.has_value(); }

  static Branch impossible() { return Branch{std::nullopt, 0.0}; }
  static Branch make(DensityMatrix state, double probability);
  // Renormalizes `unnormalized` by its trace; empty branch if the trace is
  // below kBranchFloor.
  static Branch from_unnormalized(const Matrix& unnormalized, int num_qubits);
};

// Kronecker product in the qubit-ordering convention above (left factor owns
// the most significant bits). Throws if the result would exceed 2^10 dims.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);
StateVector kron(const StateVector& a, const StateVector& b);

// 2^total-dim operator acting as `op` on `targets` (in the given order, which
// may be non-adjacent or permuted) and as identity elsewhere.
Matrix embed(const Matrix& op, const std::vector<int>& targets, int total);

// Relabels qubits: perm[old] = new. Trace and spectrum are unchanged and the
// inverse permutation restores the input exactly.
StateVector permute_qubits(const StateVector& s, const std::vector<int>& perm);
DensityMatrix permute_qubits(const DensityMatrix& d,
                             const std::vector<int>& perm);

// Reduced density matrix on `keep` (qubit order of the result follows the
// order of `keep`). Trace preserving.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep);

// <psi| rho |psi> for a pure target.
double pure_fidelity(const StateVector& target, const DensityMatrix& rho);

// (1/2)||a - b||_1; used by the equivalence checks.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

// Hot-path application of a small operator without materializing the
// embedded 2^n matrix: psi -> E psi, rho -> E rho E^dagger, where E acts on
// `targets` and identity elsewhere. Same target-order semantics as embed().
Vector apply_to_vector(const Vector& psi, const Matrix& op,
                       const std::vector<int>& targets, int total);
StateVector apply_operator(const StateVector& s, const Matrix& op,
                           const std::vector<int>& targets);
// rho -> E rho E^dagger (not trace preserving unless E is unitary).
Matrix conjugate_by(const Matrix& rho, const Matrix& op,
                    const std::vector<int>& targets, int total);
DensityMatrix apply_operator(const DensityMatrix& d, const Matrix& op,
                             const std::vector<int>& targets);

}  // namespace wswap
