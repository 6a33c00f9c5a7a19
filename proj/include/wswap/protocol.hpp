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

// Matrix-level entanglement-swapping pipeline.
//
// Alice holds qubits 1,2,3 and Bob qubits 4,5,6 (1-based labels; indices
// 0..5 here), each triple in |W>. Qubits 3,4,5 travel to Charlie, who
// measures them in the eta/xi basis and announces a 2-bit code; Bob then
// corrects qubit 6 with {I, Z, X, XZ}. Ideally every outcome occurs with
// probability 1/4 and the corrected state on qubits 1,2,6 is |W> exactly.
//
// With amplitude damping of rate r on the transmitted qubits, the eta
// branches carry probability (1-r^2)/4 each and fidelity 1/(1+r); applying
// the weak measurement M(q) to each remaining qubit and post-selecting
// raises the fidelity to 1/(1+r(1-q)) at conditional success
// (1-q)^2 (r - qr + 1)/(1+r). oracle() collects these closed forms.

#include <array>
#include <optional>
#include <vector>

#include "wswap/channels.hpp"
#include "wswap/qlinalg.hpp"
#include "wswap/states.hpp"

namespace wswap {

struct SwapOutcome {
  // Complement outcomes carry the completion-vector index in
  // complement_index and have no classical code or correction.
  std::optional<CharlieOutcome> label;
  int complement_index = -1;

  bool is_complement() const { return !label.has_value(); }

  // Two-bit code Charlie announces: eta+ = 00, eta- = 01, xi+ = 10, xi- = 11.
  int classical_bits() const;

  // Bob's correction on qubit 6: eta+ -> I, eta- -> Z, xi+ -> X, xi- -> XZ.
  Pauli correction() const;

  static SwapOutcome named(CharlieOutcome o) { return SwapOutcome{o, -1}; }
  static SwapOutcome complement(int index) {
    return SwapOutcome{std::nullopt, index};
  }
};

struct SwapBranch {
  SwapOutcome outcome;
  Branch branch;            // post-correction for named outcomes
  double fidelity = 0.0;    // to |W>; 0 for empty branches
};

struct SwapResult {
  std::vector<SwapBranch> branches;  // all 8 outcomes, named first

  double total_probability() const;
  const SwapBranch& named(CharlieOutcome o) const {
    return branches[static_cast<std::size_t>(o)];
  }
};

// Closed-form values for decay rate r and weak-measurement strength q.
struct OracleReport {
  double fid_ad = 0.0;            // 1/(1+r)
  double fid_wm = 0.0;            // 1/(1+r(1-q))
  double g_eta = 0.0;             // (1-r^2)/4, per eta outcome
  double p_wm = 0.0;              // (1-q)^2 (r-qr+1)/(1+r)
  double p_total_composed = 0.0;  // 2 * p_wm * g_eta
  double p_total_alt = 0.0;       // (1-q^2)(1-r)(r-qr+1)/2: an alternative
                                  // closed form that disagrees with the
                                  // composed product whenever q is in (0,1);
                                  // both are reported so the discrepancy
                                  // stays visible
};

// |W> tensor |W> on qubits 1..6.
StateVector combined_state();

// Projects qubits 3,4,5 onto each basis vector (4 labeled + 4 completion)
// and reduces to qubits 1,2,6. Probabilities over all 8 branches sum to the
// trace of rho.
std::vector<std::pair<SwapOutcome, Branch>> charlie_measure(
    const DensityMatrix& rho, const CharlieBasis& basis);

// Applies the outcome's correction to the third remaining qubit. Throws for
// complement outcomes.
Branch apply_correction(const Branch& b, const SwapOutcome& o);

SwapResult ideal_swap();

// Swap after amplitude damping of rate r on the three transmitted qubits
// (Alice's third, Bob's first two).
SwapResult damped_swap(double r);

// Weak measurement M(q) on all three qubits of the branch, post-selected on
// keeping every M outcome. Returned probability is conditional on the input
// branch.
Branch purify(const Branch& b, double q);

OracleReport oracle(double r, double q);

struct PipelineResult {
  // NaN when no branch survives (possible only at r = 1 or q = 1).
  double fidelity = 0.0;
  double probability = 0.0;
};

// damped_swap -> keep eta branches only -> purify each -> aggregate.
PipelineResult full_pipeline(double r, double q);

// Runs the swap for an arbitrary family member against its own basis:
// probes whether the n = 1 correction set still works. (It does: all four
// probabilities are exactly 1/4 with fidelity 1 for every n > 0 and any
// phases.)
struct FamilySwapReport {
  std::array<double, 4> probabilities{};
  std::array<double, 4> fidelities{};  // to |W_n> after correction
  double complement_probability = 0.0;
};
FamilySwapReport family_swap(const WFamilyParams& p);

// Same probe for an arbitrary 3-qubit resource state measured in the n = 1
// basis; used to show the swap is not deterministic for the prototype state.
FamilySwapReport resource_swap(const StateVector& resource,
                               const StateVector& target);

}  // namespace wswap
