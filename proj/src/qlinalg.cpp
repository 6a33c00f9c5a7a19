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

#include "wswap/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace wswap {

namespace {

void check_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

void check_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

void check_qubit_count(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count " + std::to_string(num_qubits) +
                                " outside [1, " + std::to_string(kMaxQubits) +
                                "]");
  }
}

// Validates targets (distinct, in range) and that op is square with
// 2^|targets| dims. Returns |targets|.
int check_targets(const Matrix& op, const std::vector<int>& targets,
                  int total) {
  check_qubit_count(total);
  if (targets.empty()) throw std::invalid_argument("no target qubits");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= total) {
      throw std::invalid_argument("target qubit " +
                                  std::to_string(targets[i]) +
                                  " out of range for " +
                                  std::to_string(total) + " qubits");
    }
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument("duplicate target qubit " +
                                    std::to_string(targets[i]));
      }
    }
  }
  const int m = static_cast<int>(targets.size());
  const auto want = Eigen::Index{1} << m;
  if (op.rows() != want || op.cols() != want) {
    throw std::invalid_argument("operator dims do not match target count");
  }
  return m;
}

// Extracts the target-qubit bits of `index`, ordered as in `targets`.
std::size_t gather_bits(std::size_t index, const std::vector<int>& targets,
                        int total) {
  std::size_t out = 0;
  for (int t : targets) {
    out = (out << 1) | static_cast<std::size_t>(qubit_bit(index, t, total));
  }
  return out;
}

// Replaces the target-qubit bits of `index` with `bits` (ordered as
// `targets`).
std::size_t scatter_bits(std::size_t index, std::size_t bits,
                         const std::vector<int>& targets, int total) {
  const int m = static_cast<int>(targets.size());
  std::size_t out = index;
  for (int k = 0; k < m; ++k) {
    const std::size_t mask = std::size_t{1} << (total - 1 - targets[k]);
    if ((bits >> (m - 1 - k)) & 1u) {
      out |= mask;
    } else {
      out &= ~mask;
    }
  }
  return out;
}

}  // namespace

StateVector StateVector::zero(int num_qubits) {
  return basis(num_qubits, 0);
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
  check_qubit_count(num_qubits);
  const auto dim = Eigen::Index{1} << num_qubits;
  if (index >= static_cast<std::size_t>(dim)) {
    throw std::invalid_argument("basis index out of range");
  }
  Vector v = Vector::Zero(dim);
  v(static_cast<Eigen::Index>(index)) = Complex{1.0, 0.0};
  return StateVector{num_qubits, std::move(v)};
}

StateVector StateVector::from(int num_qubits, Vector amplitudes) {
  check_qubit_count(num_qubits);
  if (amplitudes.size() != (Eigen::Index{1} << num_qubits)) {
    throw std::invalid_argument("amplitude count is not 2^num_qubits");
  }
  check_finite(amplitudes, "StateVector");
  return StateVector{num_qubits, std::move(amplitudes)};
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n < kBranchFloor) {
    throw std::invalid_argument("cannot normalize a zero state");
  }
  return StateVector{num_qubits, amps / n};
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix{psi.num_qubits, psi.amps * psi.amps.adjoint()};
}

DensityMatrix DensityMatrix::from(int num_qubits, Matrix matrix) {
  check_qubit_count(num_qubits);
  const auto dim = Eigen::Index{1} << num_qubits;
  if (matrix.rows() != dim || matrix.cols() != dim) {
    throw std::invalid_argument("density matrix dims are not 2^k x 2^k");
  }
  check_finite(matrix, "DensityMatrix");
  return DensityMatrix{num_qubits, std::move(matrix)};
}

Branch Branch::make(DensityMatrix state, double probability) {
  if (probability < kBranchFloor) return impossible();
  return Branch{std::move(state), probability};
}

Branch Branch::from_unnormalized(const Matrix& unnormalized, int num_qubits) {
  const double p = unnormalized.trace().real();
  if (p < kBranchFloor) return impossible();
  return Branch{DensityMatrix::from(num_qubits, unnormalized / p), p};
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  const auto limit = Eigen::Index{1} << kMaxQubits;
  if (rows > limit || cols > limit) {
    throw std::invalid_argument("kron result exceeds 2^10 dims");
  }
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  check_finite(out, "kron");
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  const Eigen::Index n = a.size() * b.size();
  if (n > (Eigen::Index{1} << kMaxQubits)) {
    throw std::invalid_argument("kron result exceeds 2^10 dims");
  }
  Vector out(n);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

StateVector kron(const StateVector& a, const StateVector& b) {
  return StateVector::from(a.num_qubits + b.num_qubits, kron(a.amps, b.amps));
}

Matrix embed(const Matrix& op, const std::vector<int>& targets, int total) {
  const int m = check_targets(op, targets, total);
  const std::size_t dim = std::size_t{1} << total;
  const std::size_t block = std::size_t{1} << m;
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim),
                            static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t ti = gather_bits(i, targets, total);
    for (std::size_t tj = 0; tj < block; ++tj) {
      const Complex v = op(static_cast<Eigen::Index>(ti),
                           static_cast<Eigen::Index>(tj));
      if (v == Complex{0.0, 0.0}) continue;
      const std::size_t j = scatter_bits(i, tj, targets, total);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return out;
}

namespace {

std::vector<int> check_permutation(const std::vector<int>& perm,
                                   int num_qubits) {
  if (static_cast<int>(perm.size()) != num_qubits) {
    throw std::invalid_argument("permutation size does not match qubit count");
  }
  std::vector<bool> seen(perm.size(), false);
  for (int p : perm) {
    if (p < 0 || p >= num_qubits || seen[p]) {
      throw std::invalid_argument("permutation is not a bijection");
    }
    seen[p] = true;
  }
  // Index map: new_index[i] for each old index i.
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::vector<int> map(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t j = 0;
    for (int q = 0; q < num_qubits; ++q) {
      if (qubit_bit(i, q, num_qubits)) {
        j |= std::size_t{1} << (num_qubits - 1 - perm[q]);
      }
    }
    map[i] = static_cast<int>(j);
  }
  return map;
}

}  // namespace

StateVector permute_qubits(const StateVector& s, const std::vector<int>& perm) {
  const auto map = check_permutation(perm, s.num_qubits);
  Vector out(s.amps.size());
  for (Eigen::Index i = 0; i < s.amps.size(); ++i) {
    out(map[static_cast<std::size_t>(i)]) = s.amps(i);
  }
  return StateVector{s.num_qubits, std::move(out)};
}

DensityMatrix permute_qubits(const DensityMatrix& d,
                             const std::vector<int>& perm) {
  const auto map = check_permutation(perm, d.num_qubits);
  Matrix out(d.rho.rows(), d.rho.cols());
  for (Eigen::Index i = 0; i < d.rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.rho.cols(); ++j) {
      out(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]) =
          d.rho(i, j);
    }
  }
  return DensityMatrix{d.num_qubits, std::move(out)};
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<int>& keep) {
  const int total = rho.num_qubits;
  if (keep.empty()) throw std::invalid_argument("keep set must be non-empty");
  std::vector<bool> kept(total, false);
  for (int q : keep) {
    if (q < 0 || q >= total) {
      throw std::invalid_argument("keep qubit out of range");
    }
    if (kept[q]) throw std::invalid_argument("duplicate keep qubit");
    kept[q] = true;
  }
  std::vector<int> traced;
  for (int q = 0; q < total; ++q) {
    if (!kept[q]) traced.push_back(q);
  }
  const int k = static_cast<int>(keep.size());
  const std::size_t dk = std::size_t{1} << k;
  const std::size_t dt = std::size_t{1} << traced.size();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk),
                            static_cast<Eigen::Index>(dk));
  for (std::size_t ik = 0; ik < dk; ++ik) {
    for (std::size_t jk = 0; jk < dk; ++jk) {
      Complex acc{0.0, 0.0};
      for (std::size_t t = 0; t < dt; ++t) {
        std::size_t i = scatter_bits(0, ik, keep, total);
        i = scatter_bits(i, t, traced, total);
        std::size_t j = scatter_bits(0, jk, keep, total);
        j = scatter_bits(j, t, traced, total);
        acc +=
            rho.rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
      out(static_cast<Eigen::Index>(ik), static_cast<Eigen::Index>(jk)) = acc;
    }
  }
  return DensityMatrix{k, std::move(out)};
}

double pure_fidelity(const StateVector& target, const DensityMatrix& rho) {
  if (target.num_qubits != rho.num_qubits) {
    throw std::invalid_argument("fidelity dimension mismatch");
  }
  const Complex v = (target.amps.adjoint() * rho.rho * target.amps)(0, 0);
  return v.real();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.num_qubits != b.num_qubits) {
    throw std::invalid_argument("trace distance dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.rho - b.rho,
                                           Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Vector apply_to_vector(const Vector& psi, const Matrix& op,
                       const std::vector<int>& targets, int total) {
  check_targets(op, targets, total);
  const std::size_t dim = static_cast<std::size_t>(psi.size());
  const std::size_t block = static_cast<std::size_t>(op.rows());
  Vector out = Vector::Zero(psi.size());
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t ti = gather_bits(i, targets, total);
    Complex acc{0.0, 0.0};
    for (std::size_t tj = 0; tj < block; ++tj) {
      const Complex v = op(static_cast<Eigen::Index>(ti),
                           static_cast<Eigen::Index>(tj));
      if (v == Complex{0.0, 0.0}) continue;
      acc += v * psi(static_cast<Eigen::Index>(
                 scatter_bits(i, tj, targets, total)));
    }
    out(static_cast<Eigen::Index>(i)) = acc;
  }
  return out;
}

StateVector apply_operator(const StateVector& s, const Matrix& op,
                           const std::vector<int>& targets) {
  return StateVector{s.num_qubits,
                     apply_to_vector(s.amps, op, targets, s.num_qubits)};
}

Matrix conjugate_by(const Matrix& rho, const Matrix& op,
                    const std::vector<int>& targets, int total) {
  check_targets(op, targets, total);
  const std::size_t dim = static_cast<std::size_t>(rho.rows());
  const std::size_t block = static_cast<std::size_t>(op.rows());
  // Row transform: tmp = E rho.
  Matrix tmp = Matrix::Zero(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t ti = gather_bits(i, targets, total);
    for (std::size_t tj = 0; tj < block; ++tj) {
      const Complex v = op(static_cast<Eigen::Index>(ti),
                           static_cast<Eigen::Index>(tj));
      if (v == Complex{0.0, 0.0}) continue;
      const std::size_t j = scatter_bits(i, tj, targets, total);
      tmp.row(static_cast<Eigen::Index>(i)) +=
          v * rho.row(static_cast<Eigen::Index>(j));
    }
  }
  // Column transform: out = tmp E^dagger.
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t ti = gather_bits(i, targets, total);
    for (std::size_t tj = 0; tj < block; ++tj) {
      const Complex v = std::conj(op(static_cast<Eigen::Index>(ti),
                                     static_cast<Eigen::Index>(tj)));
      if (v == Complex{0.0, 0.0}) continue;
      const std::size_t j = scatter_bits(i, tj, targets, total);
      out.col(static_cast<Eigen::Index>(i)) +=
          v * tmp.col(static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

DensityMatrix apply_operator(const DensityMatrix& d, const Matrix& op,
                             const std::vector<int>& targets) {
  return DensityMatrix{d.num_qubits,
                       conjugate_by(d.rho, op, targets, d.num_qubits)};
}

}  // namespace wswap
