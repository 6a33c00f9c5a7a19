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

#include "wswap/states.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace wswap {
namespace {

constexpr std::size_t k100 = 4;
constexpr std::size_t k010 = 2;
constexpr std::size_t k001 = 1;

TEST(WState, BasisProbabilities) {
  const StateVector w = w_state();
  EXPECT_NEAR(w.probability(k100), 0.25, 1e-12);
  EXPECT_NEAR(w.probability(k010), 0.25, 1e-12);
  EXPECT_NEAR(w.probability(k001), 0.5, 1e-12);
  EXPECT_NEAR(w.norm(), 1.0, 1e-12);
}

TEST(WState, MatchesUnitFamilyMember) {
  const StateVector w = w_state();
  const StateVector f = w_family(WFamilyParams{1.0, 0.0, 0.0});
  EXPECT_LT((w.amps - f.amps).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(WFamily, DirectSubstitution) {
  // n = 2, gamma = pi, delta = 0:
  // (1/sqrt(6))(|100> - sqrt(2)|010> + sqrt(3)|001>).
  const StateVector f = w_family(WFamilyParams{2.0, std::acos(-1.0), 0.0});
  const double a = 1.0 / std::sqrt(6.0);
  EXPECT_NEAR(std::abs(f.amps(k100) - Complex{a, 0.0}), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(f.amps(k010) - Complex{-a * std::sqrt(2.0), 0.0}), 0.0,
              1e-12);
  EXPECT_NEAR(std::abs(f.amps(k001) - Complex{a * std::sqrt(3.0), 0.0}), 0.0,
              1e-12);
}

TEST(WFamily, NormalizedForRandomParams) {
  std::mt19937_64 rng(814);
  std::uniform_real_distribution<double> n_dist(0.05, 8.0);
  std::uniform_real_distribution<double> phase(-3.14, 3.14);
  for (int rep = 0; rep < 25; ++rep) {
    const StateVector f =
        w_family(WFamilyParams{n_dist(rng), phase(rng), phase(rng)});
    EXPECT_NEAR(f.norm(), 1.0, 1e-12);
  }
}

TEST(WFamily, RejectsNonPositiveN) {
  EXPECT_THROW(w_family(WFamilyParams{0.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(w_family(WFamilyParams{-1.0, 0.0, 0.0}),
               std::invalid_argument);
}

TEST(CharlieBasis, UnitCaseVectors) {
  const CharlieBasis b = charlie_basis(WFamilyParams{});
  // eta+ = (1/2)(|010> + |001> + sqrt(2)|100>).
  const Vector& eta_p = b.outcomes[0].amps;
  EXPECT_NEAR(std::abs(eta_p(k010) - Complex{0.5, 0.0}), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(eta_p(k001) - Complex{0.5, 0.0}), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(eta_p(k100) - Complex{std::sqrt(2.0) / 2.0, 0.0}), 0.0,
              1e-12);
  const Vector& eta_m = b.outcomes[1].amps;
  EXPECT_NEAR(std::abs((eta_p.adjoint() * eta_m)(0, 0)), 0.0, 1e-12);
  const Vector& xi_p = b.outcomes[2].amps;
  EXPECT_NEAR(std::abs((eta_p.adjoint() * xi_p)(0, 0)), 0.0, 1e-12);
}

TEST(CharlieBasis, UnitCaseCompletion) {
  const CharlieBasis b = charlie_basis(WFamilyParams{});
  const double s = 1.0 / std::sqrt(2.0);
  Vector c0 = Vector::Zero(8);
  c0(k010) = s;
  c0(k001) = -s;
  Vector c1 = Vector::Zero(8);
  c1(6) = s;   // |110>
  c1(5) = -s;  // |101>
  EXPECT_LT((b.completion[0].amps - c0).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((b.completion[1].amps - c1).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(std::abs(b.completion[2].amps(3) - Complex{1.0, 0.0}), 0.0,
              1e-12);  // |011>
  EXPECT_NEAR(std::abs(b.completion[3].amps(7) - Complex{1.0, 0.0}), 0.0,
              1e-12);  // |111>
}

TEST(CharlieBasis, GramMatrixIsIdentityAcrossFamily) {
  std::mt19937_64 rng(515);
  std::uniform_real_distribution<double> phase(-3.14159, 3.14159);
  for (double n : {0.5, 1.0, 2.0, 5.0}) {
    const CharlieBasis b =
        charlie_basis(WFamilyParams{n, phase(rng), phase(rng)});
    Matrix all(8, 8);
    for (int i = 0; i < 4; ++i) {
      all.col(i) = b.outcomes[static_cast<std::size_t>(i)].amps;
      all.col(i + 4) = b.completion[static_cast<std::size_t>(i)].amps;
    }
    const Matrix gram = all.adjoint() * all;
    EXPECT_LT((gram - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12)
        << "n = " << n;
  }
}

TEST(CharlieBasis, RejectsNonPositiveN) {
  EXPECT_THROW(charlie_basis(WFamilyParams{0.0, 0.0, 0.0}),
               std::invalid_argument);
}

TEST(PauliOps, Algebra) {
  const Matrix x = pauli(Pauli::X);
  const Matrix z = pauli(Pauli::Z);
  const Matrix xz = pauli(Pauli::XZ);
  Vector v0(2), v1(2);
  v0 << 1, 0;
  v1 << 0, 1;
  EXPECT_LT((x * v0 - v1).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((z * v1 + v1).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((xz - x * z).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((xz * xz + Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((xz.adjoint() * xz - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(PrototypeW, UniformProbabilitiesAndOverlap) {
  const StateVector p = prototype_w();
  EXPECT_NEAR(p.probability(k100), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(p.probability(k010), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(p.probability(k001), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(p.norm(), 1.0, 1e-12);
  const Complex overlap = (p.amps.adjoint() * w_state().amps)(0, 0);
  // |<prototype|W>|^2 = (3 + 2 sqrt(2))/6.
  EXPECT_NEAR(std::norm(overlap), (3.0 + 2.0 * std::sqrt(2.0)) / 6.0, 1e-12);
}

// The combined state, with Charlie's qubits leading, splits into the four
// outcome branches with weight 1/2 each and companions |W>, Z6|W>, X6|W>,
// and (sigma_z sigma_x applied to qubit 6)|W>. Note the last companion:
// with XZ = sigma_x*sigma_z the exact identity needs the reversed product
// (equivalently a -1 phase), which no correction-level check can see.
TEST(CharlieBasis, CombinedStateDecomposition) {
  const StateVector w = w_state();
  const StateVector combined = kron(w, w);
  const StateVector moved = permute_qubits(combined, {3, 4, 0, 1, 2, 5});
  const CharlieBasis b = charlie_basis(WFamilyParams{});

  const Matrix i2 = pauli(Pauli::I);
  const Matrix z6 = kron(kron(i2, i2), pauli(Pauli::Z));
  const Matrix x6 = kron(kron(i2, i2), pauli(Pauli::X));
  const Matrix zx = pauli(Pauli::Z) * pauli(Pauli::X);
  const Matrix zx6 = kron(kron(i2, i2), zx);

  Vector rhs = Vector::Zero(64);
  rhs += kron(b.outcomes[0].amps, Vector(w.amps));
  rhs += kron(b.outcomes[1].amps, Vector(z6 * w.amps));
  rhs += kron(b.outcomes[2].amps, Vector(x6 * w.amps));
  rhs += kron(b.outcomes[3].amps, Vector(zx6 * w.amps));
  rhs *= 0.5;

  EXPECT_LT((moved.amps - rhs).cwiseAbs().maxCoeff(), 1e-12);
}

}  // namespace
}  // namespace wswap
