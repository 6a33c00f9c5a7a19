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

#include "wswap/circuit.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "wswap/protocol.hpp"
#include "wswap/states.hpp"

namespace wswap {
namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Total unitary of a measurement-free circuit.
Matrix circuit_unitary(const Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.num_qubits;
  Matrix u = Matrix::Identity(static_cast<Eigen::Index>(dim),
                              static_cast<Eigen::Index>(dim));
  for (const auto& op : c.ops) {
    if (op.kind == GateKind::kBarrier) continue;
    u = embed(op.gate_matrix(), op.qubits, c.num_qubits) * u;
  }
  return u;
}

TEST(WPrep, ProducesWState) {
  const Circuit c = w_prep_circuit();
  const SvResult res = run_statevector(c);
  const StateVector w = w_state();
  // Fix the global phase against the largest amplitude.
  Complex phase = res.pre_measurement.amps(1) / w.amps(1);
  phase /= std::abs(phase);
  EXPECT_LT((res.pre_measurement.amps / phase - w.amps).cwiseAbs().maxCoeff(),
            1e-10);
  EXPECT_NEAR(res.pre_measurement.norm(), 1.0, 1e-12);
}

TEST(WPrep, DensityExecutionAgrees) {
  const Circuit c = w_prep_circuit();
  const auto branches = run_density(c);
  ASSERT_EQ(branches.size(), 1u);
  EXPECT_LT(max_abs_diff(branches.front().branch.state->rho,
                         DensityMatrix::pure(w_state()).rho),
            1e-10);
}

TEST(BasisChange, RawUnitaryMapsOutcomes) {
  const Circuit c = basis_change_circuit();
  const Matrix u = circuit_unitary(c);
  EXPECT_LT(max_abs_diff(u.adjoint() * u, Matrix::Identity(8, 8)), 1e-12);
  const CharlieBasis b = charlie_basis(WFamilyParams{});
  for (int i = 0; i < 4; ++i) {
    const Vector out = u * b.outcomes[static_cast<std::size_t>(i)].amps;
    EXPECT_NEAR(std::abs(out(i)), 1.0, 1e-10) << "outcome " << i;
  }
  for (int i = 0; i < 4; ++i) {
    const Vector out = u * b.completion[static_cast<std::size_t>(i)].amps;
    EXPECT_NEAR(std::abs(out(i + 4)), 1.0, 1e-10) << "completion " << i;
  }
}

TEST(BasisChange, ElementaryDecompositionMapsOutcomes) {
  const Circuit c = basis_change_circuit_elementary();
  EXPECT_EQ(c.cnot_count(), 2);
  const Matrix u = circuit_unitary(c);
  const CharlieBasis b = charlie_basis(WFamilyParams{});
  const std::array<int, 4> expected = {0b010, 0b110, 0b000, 0b100};
  for (int i = 0; i < 4; ++i) {
    const Vector out = u * b.outcomes[static_cast<std::size_t>(i)].amps;
    EXPECT_NEAR(std::abs(out(expected[static_cast<std::size_t>(i)])), 1.0,
                1e-10)
        << "outcome " << i;
  }
  // Completion states land in the qubit-2 = 1 subspace.
  for (int i = 0; i < 4; ++i) {
    const Vector out = u * b.completion[static_cast<std::size_t>(i)].amps;
    for (int idx : {0b000, 0b010, 0b100, 0b110}) {
      EXPECT_LT(std::abs(out(idx)), 1e-10);
    }
  }
}

TEST(GateOp, CuMatrixMatchesReference) {
  // Reference 4x4 written with the control on the LEAST significant qubit;
  // our pair ordering puts the control first (most significant), so compare
  // through the qubit swap.
  const double theta = 1.1;
  const double phi = 0.4;
  const double lambda = -0.7;
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Matrix ref = Matrix::Zero(4, 4);
  ref(0, 0) = 1.0;
  ref(2, 2) = 1.0;
  ref(1, 1) = std::polar(c, -(phi + lambda) / 2.0);
  ref(1, 3) = -std::polar(s, -(phi - lambda) / 2.0);
  ref(3, 1) = std::polar(s, (phi - lambda) / 2.0);
  ref(3, 3) = std::polar(c, (phi + lambda) / 2.0);

  const Matrix mine = cu_matrix(theta, phi, lambda, 0.0);
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  EXPECT_LT(max_abs_diff(swap * mine * swap, ref), 1e-15);
}

TEST(GateOp, UnitaryKindsPassUnitarityCheck) {
  EXPECT_NO_THROW(GateOp::cu(0, 1, 2.2, 0.3, -0.9, 0.0));
  Matrix bad = Matrix::Identity(2, 2) * 0.5;
  EXPECT_THROW(GateOp::unitary(bad, {0}), std::invalid_argument);
}

TEST(Circuit, AppendValidation) {
  Circuit c(2, 1);
  EXPECT_THROW(c.append(GateOp::x(2)), std::invalid_argument);
  EXPECT_THROW(c.append(GateOp::conditional(0, 1, GateOp::x(0))),
               std::invalid_argument);  // bit not yet written
  c.append(GateOp::measure(0, 0));
  EXPECT_NO_THROW(c.append(GateOp::conditional(0, 1, GateOp::x(1))));
}

TEST(Gadget, EffectiveOperatorsMatchWeakMeasurement) {
  for (double q : {0.1, 0.36, 0.64, 0.9}) {
    const Circuit g = weak_measurement_gadget(q);
    const Matrix u = circuit_unitary(g);  // data (x) ancilla, ancilla |0>
    // Effective operator for ancilla outcome a: K_a[i, j] = <i a|U|j 0>.
    Matrix k0(2, 2), k1(2, 2);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        k0(i, j) = u(2 * i + 0, 2 * j + 0);
        k1(i, j) = u(2 * i + 1, 2 * j + 0);
      }
    }
    const MeasurementSet ms = weak_measurement_ops(WeakMeasurementParams{q});
    EXPECT_LT(max_abs_diff(k0, ms.keep), 1e-10) << "q = " << q;
    EXPECT_LT(max_abs_diff(k1, ms.discard), 1e-10) << "q = " << q;
    const Matrix sum = k0.adjoint() * k0 + k1.adjoint() * k1;
    EXPECT_LT(max_abs_diff(sum, Matrix::Identity(2, 2)), 1e-10);
  }
}

TEST(Gadget, AngleValue) {
  EXPECT_NEAR(weak_measurement_theta(0.64), 1.85459043600322443, 1e-12);
  EXPECT_EQ(weak_measurement_theta(1.0), std::numbers::pi);
  EXPECT_EQ(weak_measurement_theta(0.0), 0.0);
}

TEST(Gadget, IdentityAtZeroStrength) {
  const Circuit g = weak_measurement_gadget(0.0);
  const Matrix u = circuit_unitary(g);
  EXPECT_LT(max_abs_diff(u, Matrix::Identity(4, 4)), 1e-12);
}

// Tracing out the (unmeasured) ancilla reproduces the trace-preserving
// completion of {M, Mbar}.
TEST(Gadget, DilationTracesToChannel) {
  const double q = 0.37;
  // Gadget on (data = 1, ancilla = 2) of a 3-qubit register; qubit 0 is a
  // bystander in |+>.
  Circuit full(3, 0);
  full.append(GateOp::h(0));
  full.append(GateOp::h(1));
  for (GateOp op : weak_measurement_gadget(q).ops) {
    for (int& qb : op.qubits) qb += 1;
    full.append(std::move(op));
  }
  const auto branches = run_density(full);
  ASSERT_EQ(branches.size(), 1u);
  const DensityMatrix data =
      partial_trace(*branches.front().branch.state, {0, 1});
  // Channel applied by hand to |+><+| on the data qubit.
  const MeasurementSet ms = weak_measurement_ops(WeakMeasurementParams{q});
  Matrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  const Matrix expected_data = ms.keep * plus * ms.keep.adjoint() +
                               ms.discard * plus * ms.discard.adjoint();
  EXPECT_LT(max_abs_diff(data.rho, kron(plus, expected_data)), 1e-10);
}

TEST(RunStatevector, Basics) {
  Circuit empty(1, 0);
  const SvResult res = run_statevector(empty);
  EXPECT_NEAR(std::abs(res.pre_measurement.amps(0) - Complex{1.0, 0.0}), 0.0,
              1e-15);

  Circuit xx(1, 0);
  xx.append(GateOp::x(0));
  xx.append(GateOp::x(0));
  EXPECT_NEAR(std::abs(run_statevector(xx).pre_measurement.amps(0) -
                       Complex{1.0, 0.0}),
              0.0, 1e-15);
}

TEST(RunStatevector, RejectsChannels) {
  Circuit c(1, 0);
  c.append(GateOp::kraus(amplitude_damping(DampingParams{0.5}), {0}, "damp",
                         {0.5}));
  EXPECT_THROW(run_statevector(c), std::invalid_argument);
}

TEST(RunStatevector, BranchEnumerationNeverSamples) {
  Circuit c(1, 1);
  c.append(GateOp::h(0));
  c.append(GateOp::measure(0, 0));
  const SvResult res = run_statevector(c);
  ASSERT_EQ(res.branches.size(), 2u);
  EXPECT_NEAR(res.branches[0].probability, 0.5, 1e-12);
  EXPECT_NEAR(res.branches[1].probability, 0.5, 1e-12);
  // Pre-measurement state is |+>.
  EXPECT_NEAR(std::abs(res.pre_measurement.amps(0)), 1.0 / std::sqrt(2.0),
              1e-12);
}

TEST(RunDensity, MatchesStatevectorForIdealSwap) {
  const SwapCircuit sc = swap_circuit(std::nullopt, std::nullopt);
  const auto dm = run_density(sc.circuit);
  const SvResult sv = run_statevector(sc.circuit);
  ASSERT_EQ(dm.size(), sv.branches.size());
  for (std::size_t i = 0; i < dm.size(); ++i) {
    EXPECT_EQ(dm[i].bits, sv.branches[i].bits);
    EXPECT_NEAR(dm[i].branch.probability, sv.branches[i].probability, 1e-12);
    EXPECT_LT(max_abs_diff(dm[i].branch.state->rho,
                           DensityMatrix::pure(sv.branches[i].state).rho),
              1e-12);
  }
}

TEST(SwapCircuit, NoiselessOutcomesAreUniformAndPerfect) {
  const SwapCircuit sc = swap_circuit(std::nullopt, std::nullopt);
  const auto branches = run_density(sc.circuit);
  ASSERT_EQ(branches.size(), 4u);
  for (const auto& [bits, branch] : branches) {
    EXPECT_NEAR(branch.probability, 0.25, 1e-10);
    const DensityMatrix red = partial_trace(*branch.state, {0, 1, 5});
    EXPECT_NEAR(pure_fidelity(w_state(), red), 1.0, 1e-10) << bits;
  }
}

TEST(SwapCircuit, MatchesMatrixPipelineWhenDamped) {
  const double r = 0.3;
  const SwapCircuit sc = swap_circuit(std::nullopt, r);
  const SwapAnalysis an = analyze_swap(sc);
  const SwapResult matrix_result = damped_swap(r);
  for (int i = 0; i < 4; ++i) {
    const auto o = static_cast<CharlieOutcome>(i);
    const SwapBranch& mb = matrix_result.named(o);
    const Branch& cb = an.named[static_cast<std::size_t>(i)];
    ASSERT_FALSE(cb.empty());
    EXPECT_NEAR(cb.probability, mb.branch.probability, 1e-10);
    EXPECT_LT(trace_distance(*cb.state, *mb.branch.state), 1e-9);
  }
}

TEST(SwapCircuit, PurifiedMatchesMatrixPipeline) {
  const double r = 0.3;
  const double q = 0.64;
  const SwapCircuit sc = purified_swap_circuit(r, q);
  const SwapAnalysis an = analyze_swap(sc);
  const SwapResult matrix_result = damped_swap(r);
  for (CharlieOutcome o :
       {CharlieOutcome::kEtaPlus, CharlieOutcome::kEtaMinus}) {
    const SwapBranch& mb = matrix_result.named(o);
    const Branch purified = purify(mb.branch, q);
    const Branch& cb = an.named[static_cast<std::size_t>(o)];
    ASSERT_FALSE(cb.empty());
    // Circuit branch probability is joint: swap outcome times kept ancillas.
    EXPECT_NEAR(cb.probability, mb.branch.probability * purified.probability,
                1e-10);
    EXPECT_LT(trace_distance(*cb.state, *purified.state), 1e-9);
  }
}

TEST(SwapCircuit, NoiseSelectionAndMetadata) {
  const SwapCircuit noisy = swap_circuit(GateNoiseParams{0.95, 0.97},
                                         std::nullopt);
  EXPECT_EQ(noisy.cnot_count, 2);
  ASSERT_TRUE(noisy.noise.has_value());
  EXPECT_EQ(noisy.noise->y2, 0.95);

  const SwapCircuit ideal = swap_circuit(std::nullopt, std::nullopt);
  EXPECT_EQ(ideal.cnot_count, 4);  // two gate-based W preparations
}

TEST(GateNoise, NoiselessLimitIsExact) {
  const SwapCircuit sc = swap_circuit(GateNoiseParams{1.0, 1.0}, std::nullopt);
  const SwapAnalysis an = analyze_swap(sc);
  EXPECT_NEAR(an.average_fidelity, 1.0, 1e-10);
}

// Frozen values for the 2-CNOT noise circuit: F(y2, 1) = (1 + 3 y2^2)/4 and
// F(1, eta) = eta^2.
TEST(GateNoise, ClosedFormAverages) {
  for (double y2 : {0.98, 0.95, 0.9}) {
    const SwapAnalysis an =
        analyze_swap(swap_circuit(GateNoiseParams{y2, 1.0}, std::nullopt));
    EXPECT_NEAR(an.average_fidelity, (1.0 + 3.0 * y2 * y2) / 4.0, 1e-10)
        << "y2 = " << y2;
  }
  for (double eta : {0.98, 0.95, 0.9}) {
    const SwapAnalysis an =
        analyze_swap(swap_circuit(GateNoiseParams{1.0, eta}, std::nullopt));
    EXPECT_NEAR(an.average_fidelity, eta * eta, 1e-10) << "eta = " << eta;
  }
}

TEST(GateNoise, ReadoutErrorDominatesCnotError) {
  for (double x : {0.95, 0.9}) {
    const double f_cnot =
        analyze_swap(swap_circuit(GateNoiseParams{x, 1.0}, std::nullopt))
            .average_fidelity;
    const double f_readout =
        analyze_swap(swap_circuit(GateNoiseParams{1.0, x}, std::nullopt))
            .average_fidelity;
    EXPECT_LT(f_readout, f_cnot) << "x = " << x;
  }
}

TEST(SampleShots, DeterministicGivenSeed) {
  SwapCircuitOptions opts;
  opts.measure_final = true;
  const SwapCircuit sc = swap_circuit(opts);
  const ShotResult a = sample_shots(sc.circuit, 2000, 7);
  const ShotResult b = sample_shots(sc.circuit, 2000, 7);
  EXPECT_EQ(a.counts, b.counts);
  const ShotResult c = sample_shots(sc.circuit, 2000, 8);
  EXPECT_NE(a.counts, c.counts);
  std::int64_t total = 0;
  for (const auto& [bits, count] : a.counts) total += count;
  EXPECT_EQ(total, a.shots);
}

TEST(SampleShots, SingleShot) {
  Circuit c(1, 1);
  c.append(GateOp::h(0));
  c.append(GateOp::measure(0, 0));
  const ShotResult res = sample_shots(c, 1, 123);
  std::int64_t total = 0;
  for (const auto& [bits, count] : res.counts) total += count;
  EXPECT_EQ(total, 1);
}

TEST(SampleShots, FrequenciesConcentrate) {
  SwapCircuitOptions opts;
  opts.measure_final = true;
  const SwapCircuit sc = swap_circuit(opts);
  const std::int64_t shots = 100000;
  const ShotResult res = sample_shots(sc.circuit, shots, 20260810);
  std::int64_t ones = 0;
  for (const auto& [bits, count] : res.counts) {
    if (bits.compare(static_cast<std::size_t>(sc.final_cbit0), 3, "001") ==
        0) {
      ones += count;
    }
  }
  const double freq = static_cast<double>(ones) / static_cast<double>(shots);
  EXPECT_NEAR(freq, 0.5, 3.0 * std::sqrt(0.25 / static_cast<double>(shots)));
}

TEST(SampleShots, TotalVariationBound) {
  SwapCircuitOptions opts;
  opts.measure_final = true;
  const SwapCircuit sc = swap_circuit(opts);
  const auto exact = run_density(sc.circuit);
  const std::int64_t shots = 10000;
  const ShotResult res = sample_shots(sc.circuit, shots, 5);
  double tv = 0.0;
  for (const auto& [bits, branch] : exact) {
    const auto it = res.counts.find(bits);
    const double emp =
        it == res.counts.end()
            ? 0.0
            : static_cast<double>(it->second) / static_cast<double>(shots);
    tv += std::abs(branch.probability - emp);
  }
  tv *= 0.5;
  EXPECT_LT(tv, 5.0 * std::sqrt(static_cast<double>(exact.size()) /
                                static_cast<double>(shots)));
}

TEST(Serialize, RoundStructure) {
  const SwapCircuit sc = swap_circuit(std::nullopt, 0.3);
  const std::string text = sc.circuit.serialize();
  EXPECT_NE(text.find("qubits 6"), std::string::npos);
  EXPECT_NE(text.find("cbits 3"), std::string::npos);
  EXPECT_NE(text.find("damp 2 0.2999"), std::string::npos);
  EXPECT_NE(text.find("measure 2 -> 0"), std::string::npos);
  EXPECT_NE(text.find("cond 2 == 1 : z 5"), std::string::npos);
  // Deterministic output.
  EXPECT_EQ(text, swap_circuit(std::nullopt, 0.3).circuit.serialize());
}

// Circuit-vs-matrix equivalence over the pipeline configurations.
TEST(Equivalence, AllPipelineConfigurations) {
  // Ideal.
  {
    const SwapAnalysis an =
        analyze_swap(swap_circuit(std::nullopt, std::nullopt));
    const SwapResult m = ideal_swap();
    for (int i = 0; i < 4; ++i) {
      EXPECT_LT(
          trace_distance(*an.named[static_cast<std::size_t>(i)].state,
                         *m.branches[static_cast<std::size_t>(i)]
                              .branch.state),
          1e-9);
    }
  }
  // Damped.
  for (double r : {0.1, 0.3, 0.5}) {
    const SwapAnalysis an = analyze_swap(swap_circuit(std::nullopt, r));
    const SwapResult m = damped_swap(r);
    for (int i = 0; i < 4; ++i) {
      EXPECT_LT(
          trace_distance(*an.named[static_cast<std::size_t>(i)].state,
                         *m.branches[static_cast<std::size_t>(i)]
                              .branch.state),
          1e-9)
          << "r = " << r;
    }
  }
  // Damped + purified.
  for (double q : {0.3, 0.64}) {
    const double r = 0.3;
    const SwapAnalysis an = analyze_swap(purified_swap_circuit(r, q));
    const SwapResult m = damped_swap(r);
    for (CharlieOutcome o :
         {CharlieOutcome::kEtaPlus, CharlieOutcome::kEtaMinus}) {
      const Branch purified = purify(m.named(o).branch, q);
      EXPECT_LT(trace_distance(*an.named[static_cast<std::size_t>(o)].state,
                               *purified.state),
                1e-9)
          << "q = " << q;
    }
  }
}

}  // namespace
}  // namespace wswap
