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
#include <stdexcept>
#include <vector>

namespace wswap {

namespace {

constexpr std::size_t kIdx100 = 4;
constexpr std::size_t kIdx010 = 2;
constexpr std::size_t kIdx001 = 1;
constexpr std::size_t kIdx110 = 6;
constexpr std::size_t kIdx101 = 5;
constexpr std::size_t kIdx000 = 0;

void check_params(const WFamilyParams& p) {
  if (!(p.n > 0.0)) {
    throw std::invalid_argument("w_family: n must be positive");
  }
}

bool is_canonical(const WFamilyParams& p) {
  return p.n == 1.0 && p.gamma == 0.0 && p.delta == 0.0;
}

}  // namespace

StateVector w_state() { return w_family(WFamilyParams{}); }

StateVector w_family(const WFamilyParams& p) {
  check_params(p);
  const double a = 1.0 / std::sqrt(2.0 + 2.0 * p.n);
  Vector v = Vector::Zero(8);
  v(kIdx100) = a;
  v(kIdx010) = a * std::sqrt(p.n) * std::polar(1.0, p.gamma);
  v(kIdx001) = a * std::sqrt(p.n + 1.0) * std::polar(1.0, p.delta);
  return StateVector::from(3, std::move(v));
}

CharlieBasis charlie_basis(const WFamilyParams& p) {
  check_params(p);
  const double a = 1.0 / std::sqrt(2.0 + 2.0 * p.n);
  const Complex cg = std::sqrt(p.n) * std::polar(1.0, p.gamma);
  const Complex cd = std::sqrt(p.n + 1.0) * std::polar(1.0, p.delta);

  auto vec3 = [](std::size_t i, Complex ai, std::size_t j, Complex aj,
                 std::size_t k, Complex ak) {
    Vector v = Vector::Zero(8);
    v(static_cast<Eigen::Index>(i)) = ai;
    v(static_cast<Eigen::Index>(j)) = aj;
    v(static_cast<Eigen::Index>(k)) = ak;
    return StateVector::from(3, std::move(v));
  };

  CharlieBasis basis{
      {vec3(kIdx010, a, kIdx001, a * cg, kIdx100, a * cd),
       vec3(kIdx010, a, kIdx001, a * cg, kIdx100, -a * cd),
       vec3(kIdx110, a, kIdx101, a * cg, kIdx000, a * cd),
       vec3(kIdx110, a, kIdx101, a * cg, kIdx000, -a * cd)},
      {StateVector::zero(3), StateVector::zero(3), StateVector::zero(3),
       StateVector::zero(3)}};

  if (is_canonical(p)) {
    const double s = 1.0 / std::sqrt(2.0);
    basis.completion = {
        vec3(kIdx010, s, kIdx001, -s, kIdx000, 0.0),
        vec3(kIdx110, s, kIdx101, -s, kIdx000, 0.0),
        StateVector::basis(3, 3),   // |011>
        StateVector::basis(3, 7)};  // |111>
    return basis;
  }

  // Deterministic Gram-Schmidt of the computational basis against the four
  // outcome vectors, in index order, dropping near-null residues.
  std::vector<Vector> have;
  for (const auto& o : basis.outcomes) have.push_back(o.amps);
  int found = 0;
  for (std::size_t i = 0; i < 8 && found < 4; ++i) {
    Vector v = Vector::Zero(8);
    v(static_cast<Eigen::Index>(i)) = Complex{1.0, 0.0};
    for (const auto& b : have) {
      v -= b * (b.adjoint() * v)(0, 0);
    }
    const double nrm = v.norm();
    if (nrm <= 1e-8) continue;
    v /= nrm;
    have.push_back(v);
    basis.completion[static_cast<std::size_t>(found++)] =
        StateVector::from(3, std::move(v));
  }
  if (found != 4) {
    throw std::runtime_error("charlie_basis: completion construction failed");
  }
  return basis;
}

Matrix pauli(Pauli p) {
  Matrix m(2, 2);
  switch (p) {
    case Pauli::I:
      m << 1, 0, 0, 1;
      break;
    case Pauli::X:
      m << 0, 1, 1, 0;
      break;
    case Pauli::Z:
      m << 1, 0, 0, -1;
      break;
    case Pauli::XZ:
      m << 0, -1, 1, 0;
      break;
  }
  return m;
}

StateVector prototype_w() {
  const double a = 1.0 / std::sqrt(3.0);
  Vector v = Vector::Zero(8);
  v(kIdx100) = a;
  v(kIdx010) = a;
  v(kIdx001) = a;
  return StateVector::from(3, std::move(v));
}

}  // namespace wswap
