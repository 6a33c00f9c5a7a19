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

// Noise and measurement operator sets: amplitude damping, depolarizing CNOT
// error, readout flips, and the weak-measurement pair {M, Mbar}.

#include <array>
#include <string>
#include <vector>

#include "wswap/qlinalg.hpp"

namespace wswap {

// A completely positive trace-preserving map on `arity` qubits, given by
// Kraus operators with sum K^dagger K = I (checked to 1e-12 at construction).
struct KrausChannel {
  std::vector<Matrix> operators;
  int arity = 1;

  static KrausChannel make(std::vector<Matrix> operators);
};

struct DampingParams {
  double r = 0.0;  // excited-state decay probability, in [0, 1]
};

struct WeakMeasurementParams {
  double q = 0.0;  // measurement strength, in [0, 1]
};

struct GateNoiseParams {
  double y2 = 1.0;     // CNOT success probability
  double eta_m = 1.0;  // readout accuracy per measured qubit
};

// The weak-measurement pair: keep = M = diag(sqrt(1-q), 1),
// discard = Mbar = diag(sqrt(q), 0); M^dagger M + Mbar^dagger Mbar = I.
struct MeasurementSet {
  Matrix keep;
  Matrix discard;
};

// Single-qubit amplitude damping: e0 = diag(1, sqrt(1-r)), e1 maps |1> to
// sqrt(r)|0>. |0> never excites.
KrausChannel amplitude_damping(const DampingParams& p);

// r = 1 - exp(-Gamma t) for relaxation rate Gamma >= 0 and time t >= 0.
double r_from_rate(double gamma_rate, double t);

// rho -> sum_i E_i rho E_i^dagger with the channel acting on `targets`.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch,
                            const std::vector<int>& targets);

// Depolarizing CNOT: with probability y2 the ideal CNOT is applied; with
// probability 1-y2 the (control, target) pair is replaced by the maximally
// mixed state in place.
DensityMatrix noisy_cnot_apply(const DensityMatrix& rho, int control,
                               int target, double y2);

// Projective z-measurement with readout accuracy eta_m: the physical
// projection is always onto the true basis state, but the reported classical
// bit flips with probability 1-eta_m. Index of the returned array = reported
// bit; each branch mixes both true projections accordingly.
std::array<Branch, 2> noisy_readout(const DensityMatrix& rho, int qubit,
                                    double eta_m);

MeasurementSet weak_measurement_ops(const WeakMeasurementParams& p);

// Applies the same single-qubit operator to every target and post-selects
// that outcome. Branch probability is the trace of the unnormalized
// post-state; probability below 1e-12 yields an explicit empty branch.
Branch apply_selective(const DensityMatrix& rho, const Matrix& op,
                       const std::vector<int>& targets);

// Exact CNOT unitary on (control, target) embedded in rho's register.
DensityMatrix apply_cnot(const DensityMatrix& rho, int control, int target);

// 4x4 CNOT with the control on the most significant qubit of the pair.
Matrix cnot_matrix();

}  // namespace wswap
