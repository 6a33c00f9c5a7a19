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

// Gate-level circuits and executors.
//
// Executors are exact: measurements enumerate every classical branch with
// its probability; sampling happens only in sample_shots, which draws from
// the exact distribution with a seeded mt19937_64. Noise (depolarizing CNOT,
// readout flips) is applied by the density-matrix executor when configured;
// amplitude damping is a circuit op and is rejected by the statevector
// executor.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wswap/channels.hpp"
#include "wswap/qlinalg.hpp"

namespace wswap {

enum class GateKind {
  kX,
  kZ,
  kH,
  kRX,
  kRY,
  kCNOT,
  kCU,
  kUnitary,
  kMeasure,
  kBarrier,
  kConditional,
  kChannel,
};

// One circuit operation. Use the factories; they validate qubit payloads and
// check unitarity (within 1e-12) of matrix-valued gates.
struct GateOp {
  GateKind kind = GateKind::kBarrier;
  std::vector<int> qubits;       // for kCNOT/kCU: {control, target}
  std::vector<double> params;    // angles, radians
  Matrix matrix;                 // kUnitary payload
  int cbit = -1;                 // kMeasure: destination; kConditional: source
  int condition_value = 1;       // kConditional fires when bit == value
  std::shared_ptr<const GateOp> inner;  // kConditional payload
  KrausChannel channel{{Matrix::Identity(2, 2)}, 1};  // kChannel payload
  std::string channel_name;      // serialization tag, e.g. "damp"
  std::vector<double> channel_params;

  static GateOp x(int q);
  static GateOp z(int q);
  static GateOp h(int q);
  static GateOp rx(int q, double theta);
  static GateOp ry(int q, double theta);
  static GateOp cnot(int control, int target);
  // Controlled rotation with the standard four-parameter signature. The
  // matrix is block-diagonal: identity on the control-0 subspace and
  //   [ e^{-i(phi+lambda)/2} cos(theta/2)   -e^{-i(phi-lambda)/2} sin(theta/2) ]
  //   [ e^{ i(phi-lambda)/2} sin(theta/2)    e^{ i(phi+lambda)/2} cos(theta/2) ]
  // on the control-1 subspace. `gamma` is accepted for signature
  // compatibility and does not enter the matrix.
  static GateOp cu(int control, int target, double theta, double phi,
                   double lambda, double gamma);
  static GateOp unitary(Matrix u, std::vector<int> targets);
  static GateOp measure(int q, int cbit);
  static GateOp barrier();
  static GateOp conditional(int cbit, int value, GateOp inner);
  static GateOp kraus(KrausChannel ch, std::vector<int> targets,
                      std::string name, std::vector<double> params);

  bool is_unitary_gate() const;
  // Dense matrix of a unitary gate (throws for non-unitary kinds).
  Matrix gate_matrix() const;
};

// 4x4 matrix of the controlled rotation above, control on the most
// significant qubit of the pair.
Matrix cu_matrix(double theta, double phi, double lambda, double gamma);

struct Circuit {
  int num_qubits = 0;
  int num_classical = 0;
  std::vector<GateOp> ops;

  Circuit() = default;
  Circuit(int qubits, int classical)
      : num_qubits(qubits), num_classical(classical) {}

  // Validates indices and that any conditional reads a previously written
  // classical bit.
  void append(GateOp op);
  void append(const Circuit& other);  // same register sizes required

  int cnot_count() const;

  // Line-oriented text form: one op per line, `gate q... [params...]`,
  // measurements as `measure q -> c`, conditionals as
  // `cond c == v : gate q... [params...]`. Floats use 17 significant digits.
  std::string serialize() const;

 private:
  std::vector<bool> written_;
};

// Result of sampling classical outcomes.
struct ShotResult {
  std::map<std::string, std::int64_t> counts;  // bitstring -> occurrences
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
  std::string rng_name = "mt19937_64";
};

// --- builders -------------------------------------------------------------

// Prepares |W> = (1/2)(|100>+|010>+sqrt(2)|001>) from |000> on 3 qubits:
// RY(pi/3) splits qubit 0, a control-0 CRY places the |010> weight, and the
// X/CNOT tail moves the residual |000> weight onto |001>.
Circuit w_prep_circuit();

// Single raw-unitary basis change whose rows are the n = 1 Charlie basis:
// eta+ -> |000>, eta- -> |001>, xi+ -> |010>, xi- -> |011>, completion ->
// |100>..|111>.
Circuit basis_change_circuit();

// CNOT/CU/H decomposition of the basis change for noise studies (2 literal
// CNOTs). Maps eta+ -> |010>, eta- -> |110>, xi+ -> |000>, xi- -> -|100>;
// completion states land in the qubit-2 = 1 subspace.
Circuit basis_change_circuit_elementary();

// Weak-measurement gadget on (data = 0, ancilla = 1): X, CU(theta(q)), X.
// Post-selected on ancilla 0 the data qubit experiences
// M = diag(sqrt(1-q), 1); on ancilla 1 it experiences Mbar = diag(sqrt(q), 0).
// theta = 2 atan(sqrt(q)/sqrt(1-q)); q = 1 is handled as the projective
// limit theta = pi.
Circuit weak_measurement_gadget(double q);
double weak_measurement_theta(double q);

struct SwapCircuitOptions {
  std::optional<GateNoiseParams> noise;  // forwarded to run_density
  std::optional<double> damping_r;       // ADC on the transmitted qubits
  std::optional<double> purify_q;        // append weak-measurement stage
  bool gate_based_prep = true;       // false: one unitary state-prep per site
  bool elementary_basis_change = false;
  bool measure_final = false;        // also measure qubits 0, 1, 5 at the end
};

// A built swap circuit plus the metadata needed to interpret its classical
// bits. Charlie's bits are cbits 0..2; ancilla bits (purified variant) and
// final-state bits follow.
struct SwapCircuit {
  Circuit circuit;
  std::optional<GateNoiseParams> noise;
  // Expected 3-bit pattern (cbit0 cbit1 cbit2 as binary, cbit0 most
  // significant) for each named outcome, in CharlieOutcome order.
  std::array<int, 4> outcome_pattern{};
  int cnot_count = 0;
  int ancilla_cbit0 = -1;  // -1 when absent
  int final_cbit0 = -1;
};

SwapCircuit swap_circuit(const SwapCircuitOptions& opts);
// Convenience form: gate noise selects the noise-study construction
// (unitary state prep + elementary basis change); otherwise the default
// gate-based construction is used.
SwapCircuit swap_circuit(std::optional<GateNoiseParams> noise,
                         std::optional<double> damping_r);
// Damped swap with the weak-measurement purification stage appended
// (9 qubits, 6 classical bits). Only the eta- correction (conditional Z) is
// applied; xi branches are discarded downstream.
SwapCircuit purified_swap_circuit(double r, double q);

// --- executors ------------------------------------------------------------

struct SvBranch {
  std::string bits;  // bits[i] = classical bit i, '0'/'1'
  double probability = 0.0;
  StateVector state;
};

struct SvResult {
  // State just before the first measurement (the final state when the
  // circuit has none).
  StateVector pre_measurement;
  std::vector<SvBranch> branches;
};

// Exact statevector execution with branch enumeration at measurements.
// Throws if the circuit contains channel ops.
SvResult run_statevector(const Circuit& c);

struct DmBranch {
  std::string bits;
  Branch branch;
};

// Exact density-matrix execution enumerating all classical outcomes. When
// `noise` is set, CNOTs run through the depolarizing model and measurements
// through the readout-flip model. Branches below the probability floor are
// dropped; results are ordered by bitstring.
std::vector<DmBranch> run_density(
    const Circuit& c, const std::optional<GateNoiseParams>& noise = {});

// Draws `shots` classical outcomes from the exact distribution of
// run_density(c, noise). Identical (circuit, shots, seed) give identical
// counts.
ShotResult sample_shots(const Circuit& c, std::int64_t shots,
                        std::uint64_t seed,
                        const std::optional<GateNoiseParams>& noise = {});

// Post-selected analysis of a built swap circuit (no final measurement):
// reduced states on qubits {0, 1, 5} per named outcome, with ancilla bits
// post-selected to 0 when the purification stage is present.
struct SwapAnalysis {
  std::array<Branch, 4> named;       // indexed by CharlieOutcome
  std::array<double, 4> fidelity{};  // to |W>, 0 for empty branches
  double other_probability = 0.0;    // mass outside the kept patterns
  // Probability-weighted fidelity over every branch, kept or not; the
  // figure of merit for the imperfect-operations study.
  double average_fidelity = 0.0;
};
SwapAnalysis analyze_swap(const SwapCircuit& sc);

}  // namespace wswap
