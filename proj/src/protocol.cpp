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

#include "wswap/protocol.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wswap {

namespace {

// Charlie's qubits within the 6-qubit register (1-based labels 3, 4, 5).
const std::vector<int> kCharlieQubits = {2, 3, 4};
// Alice's two plus Bob's last (labels 1, 2, 6).
const std::vector<int> kRemainingQubits = {0, 1, 5};

void check_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

SwapResult swap_with(const DensityMatrix& rho6, const CharlieBasis& basis,
                     const StateVector& target) {
  SwapResult result;
  for (auto& [outcome, branch] : charlie_measure(rho6, basis)) {
    Branch corrected =
        outcome.is_complement() ? branch : apply_correction(branch, outcome);
    const double f =
        corrected.empty() ? 0.0 : pure_fidelity(target, *corrected.state);
    result.branches.push_back(SwapBranch{outcome, std::move(corrected), f});
  }
  return result;
}

}  // namespace

int SwapOutcome::classical_bits() const {
  if (is_complement()) {
    throw std::invalid_argument("complement outcome has no classical code");
  }
  return static_cast<int>(*label);
}

Pauli SwapOutcome::correction() const {
  if (is_complement()) {
    throw std::invalid_argument("complement outcome has no correction");
  }
  switch (*label) {
    case CharlieOutcome::kEtaPlus: return Pauli::I;
    case CharlieOutcome::kEtaMinus: return Pauli::Z;
    case CharlieOutcome::kXiPlus: return Pauli::X;
    case CharlieOutcome::kXiMinus: return Pauli::XZ;
  }
  throw std::logic_error("unreachable");
}

double SwapResult::total_probability() const {
  double p = 0.0;
  for (const auto& b : branches) p += b.branch.probability;
  return p;
}

StateVector combined_state() { return kron(w_state(), w_state()); }

std::vector<std::pair<SwapOutcome, Branch>> charlie_measure(
    const DensityMatrix& rho, const CharlieBasis& basis) {
  if (rho.num_qubits != 6) {
    throw std::invalid_argument("charlie_measure expects a 6-qubit state");
  }
  std::vector<std::pair<SwapOutcome, Branch>> out;
  auto project = [&](const StateVector& v, SwapOutcome outcome) {
    const Matrix proj = v.amps * v.amps.adjoint();
    const Matrix post = conjugate_by(rho.rho, proj, kCharlieQubits, 6);
    const double p = post.trace().real();
    if (p < kBranchFloor) {
      out.emplace_back(outcome, Branch::impossible());
      return;
    }
    const DensityMatrix red =
        partial_trace(DensityMatrix{6, post / p}, kRemainingQubits);
    out.emplace_back(outcome, Branch{red, p});
  };
  for (int i = 0; i < 4; ++i) {
    project(basis.outcomes[static_cast<std::size_t>(i)],
            SwapOutcome::named(static_cast<CharlieOutcome>(i)));
  }
  for (int i = 0; i < 4; ++i) {
    project(basis.completion[static_cast<std::size_t>(i)],
            SwapOutcome::complement(i));
  }
  return out;
}

Branch apply_correction(const Branch& b, const SwapOutcome& o) {
  const Pauli p = o.correction();  // throws for complement outcomes
  if (b.empty()) return b;
  if (p == Pauli::I) return b;
  const int last = b.state->num_qubits - 1;
  return Branch{apply_operator(*b.state, pauli(p), {last}), b.probability};
}

SwapResult ideal_swap() {
  const DensityMatrix rho = DensityMatrix::pure(combined_state());
  return swap_with(rho, charlie_basis(WFamilyParams{}), w_state());
}

SwapResult damped_swap(double r) {
  check_unit_interval(r, "decay rate r");
  const KrausChannel adc = amplitude_damping(DampingParams{r});
  // Alice sends qubit 3; Bob sends qubits 4 and 5.
  DensityMatrix alice = DensityMatrix::pure(w_state());
  alice = apply_channel(alice, adc, {2});
  DensityMatrix bob = DensityMatrix::pure(w_state());
  bob = apply_channel(bob, adc, {0});
  bob = apply_channel(bob, adc, {1});
  const DensityMatrix combined = DensityMatrix::from(6, kron(alice.rho, bob.rho));
  return swap_with(combined, charlie_basis(WFamilyParams{}), w_state());
}

Branch purify(const Branch& b, double q) {
  check_unit_interval(q, "weak measurement strength q");
  if (b.empty()) return b;
  const MeasurementSet ms = weak_measurement_ops(WeakMeasurementParams{q});
  std::vector<int> all(static_cast<std::size_t>(b.state->num_qubits));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return apply_selective(*b.state, ms.keep, all);
}

OracleReport oracle(double r, double q) {
  check_unit_interval(r, "decay rate r");
  check_unit_interval(q, "weak measurement strength q");
  OracleReport rep;
  rep.fid_ad = 1.0 / (1.0 + r);
  rep.fid_wm = 1.0 / (1.0 + r * (1.0 - q));
  rep.g_eta = (1.0 - r * r) / 4.0;
  rep.p_wm = (1.0 - q) * (1.0 - q) * (r - q * r + 1.0) / (1.0 + r);
  rep.p_total_composed = 2.0 * rep.p_wm * rep.g_eta;
  rep.p_total_alt =
      (1.0 - q * q) * (1.0 - r) * (r - q * r + 1.0) / 2.0;
  return rep;
}

PipelineResult full_pipeline(double r, double q) {
  const SwapResult swapped = damped_swap(r);
  PipelineResult out;
  double fid_weighted = 0.0;
  for (CharlieOutcome o :
       {CharlieOutcome::kEtaPlus, CharlieOutcome::kEtaMinus}) {
    const SwapBranch& sb = swapped.named(o);
    if (sb.branch.empty()) continue;
    const Branch purified = purify(sb.branch, q);
    if (purified.empty()) continue;
    const double p = sb.branch.probability * purified.probability;
    fid_weighted += p * pure_fidelity(w_state(), *purified.state);
    out.probability += p;
  }
  out.fidelity = out.probability > 0.0
                     ? fid_weighted / out.probability
                     : std::numeric_limits<double>::quiet_NaN();
  return out;
}

FamilySwapReport resource_swap(const StateVector& resource,
                               const StateVector& target) {
  if (resource.num_qubits != 3) {
    throw std::invalid_argument("resource state must have 3 qubits");
  }
  const DensityMatrix rho = DensityMatrix::pure(kron(resource, resource));
  const SwapResult res = swap_with(rho, charlie_basis(WFamilyParams{}), target);
  FamilySwapReport rep;
  for (int i = 0; i < 4; ++i) {
    rep.probabilities[static_cast<std::size_t>(i)] =
        res.branches[static_cast<std::size_t>(i)].branch.probability;
    rep.fidelities[static_cast<std::size_t>(i)] =
        res.branches[static_cast<std::size_t>(i)].fidelity;
  }
  for (std::size_t i = 4; i < 8; ++i) {
    rep.complement_probability += res.branches[i].branch.probability;
  }
  return rep;
}

FamilySwapReport family_swap(const WFamilyParams& p) {
  const StateVector wn = w_family(p);
  const DensityMatrix rho = DensityMatrix::pure(kron(wn, wn));
  const SwapResult res = swap_with(rho, charlie_basis(p), wn);
  FamilySwapReport rep;
  for (int i = 0; i < 4; ++i) {
    rep.probabilities[static_cast<std::size_t>(i)] =
        res.branches[static_cast<std::size_t>(i)].branch.probability;
    rep.fidelities[static_cast<std::size_t>(i)] =
        res.branches[static_cast<std::size_t>(i)].fidelity;
  }
  for (std::size_t i = 4; i < 8; ++i) {
    rep.complement_probability += res.branches[i].branch.probability;
  }
  return rep;
}

}  // namespace wswap
