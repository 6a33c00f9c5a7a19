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

// Named three-qubit states and Charlie's measurement basis.
//
// The W family is
//   |W_n> = (1/sqrt(2+2n)) (|100> + sqrt(n) e^{i gamma} |010>
//                                  + sqrt(n+1) e^{i delta} |001>),
// with n > 0 and free phases. n = 1 with zero phases is the canonical |W>
// with amplitudes (1/2, 1/2, sqrt(2)/2).

#include <array>

#include "wswap/qlinalg.hpp"

namespace wswap {

struct WFamilyParams {
  double n = 1.0;       // asymmetry parameter, must be > 0
  double gamma = 0.0;   // phase on |010>, radians
  double delta = 0.0;   // phase on |001>, radians
};

// Indices into CharlieBasis::outcomes.
enum class CharlieOutcome : int { kEtaPlus = 0, kEtaMinus = 1, kXiPlus = 2, kXiMinus = 3 };

inline const char* outcome_name(CharlieOutcome o) {
  switch (o) {
    case CharlieOutcome::kEtaPlus: return "eta+";
    case CharlieOutcome::kEtaMinus: return "eta-";
    case CharlieOutcome::kXiPlus: return "xi+";
    case CharlieOutcome::kXiMinus: return "xi-";
  }
  return "?";
}

// The four labeled outcome vectors (eta+, eta-, xi+, xi-) plus a completion
// spanning their orthogonal complement: together an orthonormal basis of the
// 8-dim three-qubit space.
struct CharlieBasis {
  std::array<StateVector, 4> outcomes;
  std::array<StateVector, 4> completion;
};

// |W> = (1/2)(|100> + |010> + sqrt(2)|001>).
StateVector w_state();

// General family member; throws for n <= 0.
StateVector w_family(const WFamilyParams& p);

// Charlie's orthonormal basis for the given family parameters:
//   eta+-_n = (1/sqrt(2+2n))(|010> + sqrt(n) e^{i gamma}|001>
//                                   +- sqrt(n+1) e^{i delta}|100>)
//   xi+-_n  = (1/sqrt(2+2n))(|110> + sqrt(n) e^{i gamma}|101>
//                                   +- sqrt(n+1) e^{i delta}|000>)
// For n = 1 with zero phases the completion is the fixed analytic set
// {(|010>-|001>)/sqrt(2), (|110>-|101>)/sqrt(2), |011>, |111>}; otherwise it
// is produced by deterministic Gram-Schmidt over the computational basis
// (vectors below norm 1e-8 dropped).
CharlieBasis charlie_basis(const WFamilyParams& p);

enum class Pauli { I, X, Z, XZ };

// Single-qubit correction operators; XZ is the matrix product sigma_x *
// sigma_z.
Matrix pauli(Pauli p);

// The symmetric (1/sqrt(3))(|100>+|010>+|001>) state. Kept only as the
// contrast case: the four-outcome measurement is not deterministic for it.
StateVector prototype_w();

}  // namespace wswap
