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

#include "wswap/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace wswap {

namespace {

void check_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

}  // namespace

KrausChannel KrausChannel::make(std::vector<Matrix> operators) {
  if (operators.empty()) {
    throw std::invalid_argument("KrausChannel: no operators");
  }
  const Eigen::Index dim = operators.front().rows();
  int arity = 0;
  while ((Eigen::Index{1} << arity) < dim) ++arity;
  if ((Eigen::Index{1} << arity) != dim) {
    throw std::invalid_argument("KrausChannel: dims are not a power of two");
  }
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& k : operators) {
    if (k.rows() != dim || k.cols() != dim) {
      throw std::invalid_argument("KrausChannel: inconsistent operator dims");
    }
    sum += k.adjoint() * k;
  }
  if ((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("KrausChannel: completeness violated");
  }
  return KrausChannel{std::move(operators), arity};
}

KrausChannel amplitude_damping(const DampingParams& p) {
  check_unit_interval(p.r, "damping rate r");
  Matrix e0(2, 2), e1(2, 2);
  e0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - p.r);
  e1 << 0.0, std::sqrt(p.r), 0.0, 0.0;
  return KrausChannel::make({e0, e1});
}

double r_from_rate(double gamma_rate, double t) {
  if (gamma_rate < 0.0 || t < 0.0) {
    throw std::invalid_argument("r_from_rate: negative rate or time");
  }
  return 1.0 - std::exp(-gamma_rate * t);
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch,
                            const std::vector<int>& targets) {
  if (static_cast<int>(targets.size()) != ch.arity) {
    throw std::invalid_argument("apply_channel: arity mismatch");
  }
  Matrix out = Matrix::Zero(rho.rho.rows(), rho.rho.cols());
  for (const auto& k : ch.operators) {
    out += conjugate_by(rho.rho, k, targets, rho.num_qubits);
  }
  return DensityMatrix{rho.num_qubits, std::move(out)};
}

Matrix cnot_matrix() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return m;
}

DensityMatrix apply_cnot(const DensityMatrix& rho, int control, int target) {
  return apply_operator(rho, cnot_matrix(), {control, target});
}

DensityMatrix noisy_cnot_apply(const DensityMatrix& rho, int control,
                               int target, double y2) {
  if (control == target) {
    throw std::invalid_argument("noisy_cnot_apply: control equals target");
  }
  check_unit_interval(y2, "y2");
  DensityMatrix ideal = apply_cnot(rho, control, target);
  if (y2 == 1.0) return ideal;

  const int total = rho.num_qubits;
  std::vector<int> keep;
  for (int q = 0; q < total; ++q) {
    if (q != control && q != target) keep.push_back(q);
  }
  // Tr_{c,t}(rho) tensor I/4, with the mixed factor back on (control, target).
  Matrix mixed = Matrix::Zero(rho.rho.rows(), rho.rho.cols());
  if (keep.empty()) {
    mixed = Matrix::Identity(4, 4) * (rho.trace_real() / 4.0);
  } else {
    const DensityMatrix red = partial_trace(rho, keep);
    const std::size_t dim = rho.dim();
    for (std::size_t i = 0; i < dim; ++i) {
      const int ic = qubit_bit(i, control, total);
      const int it = qubit_bit(i, target, total);
      std::size_t ik = 0;
      for (int q : keep) {
        ik = (ik << 1) | static_cast<std::size_t>(qubit_bit(i, q, total));
      }
      for (std::size_t j = 0; j < dim; ++j) {
        if (qubit_bit(j, control, total) != ic ||
            qubit_bit(j, target, total) != it) {
          continue;
        }
        std::size_t jk = 0;
        for (int q : keep) {
          jk = (jk << 1) | static_cast<std::size_t>(qubit_bit(j, q, total));
        }
        mixed(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            red.rho(static_cast<Eigen::Index>(ik),
                    static_cast<Eigen::Index>(jk)) *
            0.25;
      }
    }
  }
  return DensityMatrix{total, y2 * ideal.rho + (1.0 - y2) * mixed};
}

std::array<Branch, 2> noisy_readout(const DensityMatrix& rho, int qubit,
                                    double eta_m) {
  check_unit_interval(eta_m, "eta_m");
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  Matrix p1 = Matrix::Zero(2, 2);
  p1(1, 1) = 1.0;
  const Matrix proj0 = conjugate_by(rho.rho, p0, {qubit}, rho.num_qubits);
  const Matrix proj1 = conjugate_by(rho.rho, p1, {qubit}, rho.num_qubits);
  // Reported 0 mixes the true-0 projection (weight eta) with the true-1
  // projection (weight 1-eta); the flip corrupts only the classical record.
  const Matrix rep0 = eta_m * proj0 + (1.0 - eta_m) * proj1;
  const Matrix rep1 = eta_m * proj1 + (1.0 - eta_m) * proj0;
  return {Branch::from_unnormalized(rep0, rho.num_qubits),
          Branch::from_unnormalized(rep1, rho.num_qubits)};
}

MeasurementSet weak_measurement_ops(const WeakMeasurementParams& p) {
  check_unit_interval(p.q, "weak measurement strength q");
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::sqrt(1.0 - p.q);
  m(1, 1) = 1.0;
  Matrix mbar = Matrix::Zero(2, 2);
  mbar(0, 0) = std::sqrt(p.q);
  return MeasurementSet{m, mbar};
}

Branch apply_selective(const DensityMatrix& rho, const Matrix& op,
                       const std::vector<int>& targets) {
  if (op.rows() != 2 || op.cols() != 2) {
    throw std::invalid_argument("apply_selective: operator must be 2x2");
  }
  Matrix post = rho.rho;
  for (int t : targets) {
    post = conjugate_by(post, op, {t}, rho.num_qubits);
  }
  return Branch::from_unnormalized(post, rho.num_qubits);
}

}  // namespace wswap
