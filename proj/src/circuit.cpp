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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "wswap/states.hpp"

namespace wswap {

namespace {

constexpr double kUnitaryTol = 1e-12;

void check_unitary(const Matrix& u) {
  if (u.rows() != u.cols()) {
    throw std::invalid_argument("gate matrix must be square");
  }
  const Matrix delta =
      u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  if (delta.cwiseAbs().maxCoeff() > kUnitaryTol) {
    throw std::invalid_argument("gate matrix is not unitary");
  }
}

std::string fmt17(double v) {
  if (v == 0.0) v = 0.0;  // normalize negative zero
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Matrix cu_matrix(double theta, double phi, double lambda, double /*gamma*/) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Matrix m = Matrix::Identity(4, 4);
  m(2, 2) = std::polar(c, -(phi + lambda) / 2.0);
  m(2, 3) = -std::polar(s, -(phi - lambda) / 2.0);
  m(3, 2) = std::polar(s, (phi - lambda) / 2.0);
  m(3, 3) = std::polar(c, (phi + lambda) / 2.0);
  return m;
}

namespace {

GateOp make_gate(GateKind kind, std::vector<int> qubits,
                 std::vector<double> params = {}) {
  GateOp op;
  op.kind = kind;
  op.qubits = std::move(qubits);
  op.params = std::move(params);
  return op;
}

}  // namespace

GateOp GateOp::x(int q) { return make_gate(GateKind::kX, {q}); }
GateOp GateOp::z(int q) { return make_gate(GateKind::kZ, {q}); }
GateOp GateOp::h(int q) { return make_gate(GateKind::kH, {q}); }

GateOp GateOp::rx(int q, double theta) {
  return make_gate(GateKind::kRX, {q}, {theta});
}

GateOp GateOp::ry(int q, double theta) {
  return make_gate(GateKind::kRY, {q}, {theta});
}

GateOp GateOp::cnot(int control, int target) {
  if (control == target) {
    throw std::invalid_argument("cnot: control equals target");
  }
  return make_gate(GateKind::kCNOT, {control, target});
}

GateOp GateOp::cu(int control, int target, double theta, double phi,
                  double lambda, double gamma) {
  if (control == target) {
    throw std::invalid_argument("cu: control equals target");
  }
  check_unitary(cu_matrix(theta, phi, lambda, gamma));
  return make_gate(GateKind::kCU, {control, target},
                   {theta, phi, lambda, gamma});
}

GateOp GateOp::unitary(Matrix u, std::vector<int> targets) {
  check_unitary(u);
  if (u.rows() != (Eigen::Index{1} << targets.size())) {
    throw std::invalid_argument("unitary dims do not match target count");
  }
  GateOp op = make_gate(GateKind::kUnitary, std::move(targets));
  op.matrix = std::move(u);
  return op;
}

GateOp GateOp::measure(int q, int cbit) {
  GateOp op = make_gate(GateKind::kMeasure, {q});
  op.cbit = cbit;
  return op;
}

GateOp GateOp::barrier() { return make_gate(GateKind::kBarrier, {}); }

GateOp GateOp::conditional(int cbit, int value, GateOp inner) {
  if (!inner.is_unitary_gate()) {
    throw std::invalid_argument("conditional payload must be a unitary gate");
  }
  if (value != 0 && value != 1) {
    throw std::invalid_argument("conditional value must be 0 or 1");
  }
  GateOp op = make_gate(GateKind::kConditional, {});
  op.cbit = cbit;
  op.condition_value = value;
  op.inner = std::make_shared<const GateOp>(std::move(inner));
  return op;
}

GateOp GateOp::kraus(KrausChannel ch, std::vector<int> targets,
                     std::string name, std::vector<double> params) {
  if (static_cast<int>(targets.size()) != ch.arity) {
    throw std::invalid_argument("channel arity does not match target count");
  }
  GateOp op = make_gate(GateKind::kChannel, std::move(targets));
  op.channel = std::move(ch);
  op.channel_name = std::move(name);
  op.channel_params = std::move(params);
  return op;
}

bool GateOp::is_unitary_gate() const {
  switch (kind) {
    case GateKind::kX:
    case GateKind::kZ:
    case GateKind::kH:
    case GateKind::kRX:
    case GateKind::kRY:
    case GateKind::kCNOT:
    case GateKind::kCU:
    case GateKind::kUnitary:
      return true;
    default:
      return false;
  }
}

Matrix GateOp::gate_matrix() const {
  switch (kind) {
    case GateKind::kX:
      return pauli(Pauli::X);
    case GateKind::kZ:
      return pauli(Pauli::Z);
    case GateKind::kH: {
      Matrix m(2, 2);
      const double s = 1.0 / std::sqrt(2.0);
      m << s, s, s, -s;
      return m;
    }
    case GateKind::kRX: {
      const double c = std::cos(params[0] / 2.0);
      const double s = std::sin(params[0] / 2.0);
      Matrix m(2, 2);
      m << Complex{c, 0}, Complex{0, -s}, Complex{0, -s}, Complex{c, 0};
      return m;
    }
    case GateKind::kRY: {
      const double c = std::cos(params[0] / 2.0);
      const double s = std::sin(params[0] / 2.0);
      Matrix m(2, 2);
      m << c, -s, s, c;
      return m;
    }
    case GateKind::kCNOT:
      return cnot_matrix();
    case GateKind::kCU:
      return cu_matrix(params[0], params[1], params[2], params[3]);
    case GateKind::kUnitary:
      return matrix;
    default:
      throw std::invalid_argument("op has no gate matrix");
  }
}

void Circuit::append(GateOp op) {
  for (int q : op.qubits) {
    if (q < 0 || q >= num_qubits) {
      throw std::invalid_argument("qubit index out of range");
    }
  }
  if (written_.size() != static_cast<std::size_t>(num_classical)) {
    written_.assign(static_cast<std::size_t>(num_classical), false);
    for (const auto& prev : ops) {
      if (prev.kind == GateKind::kMeasure) {
        written_[static_cast<std::size_t>(prev.cbit)] = true;
      }
    }
  }
  if (op.kind == GateKind::kMeasure) {
    if (op.cbit < 0 || op.cbit >= num_classical) {
      throw std::invalid_argument("classical bit out of range");
    }
    written_[static_cast<std::size_t>(op.cbit)] = true;
  }
  if (op.kind == GateKind::kConditional) {
    if (op.cbit < 0 || op.cbit >= num_classical) {
      throw std::invalid_argument("classical bit out of range");
    }
    if (!written_[static_cast<std::size_t>(op.cbit)]) {
      throw std::invalid_argument(
          "conditional reads a classical bit with no prior measurement");
    }
    for (int q : op.inner->qubits) {
      if (q < 0 || q >= num_qubits) {
        throw std::invalid_argument("qubit index out of range");
      }
    }
  }
  ops.push_back(std::move(op));
}

void Circuit::append(const Circuit& other) {
  if (other.num_qubits != num_qubits ||
      other.num_classical > num_classical) {
    throw std::invalid_argument("appending circuit with mismatched registers");
  }
  for (const auto& op : other.ops) append(op);
}

int Circuit::cnot_count() const {
  int n = 0;
  for (const auto& op : ops) {
    if (op.kind == GateKind::kCNOT) ++n;
  }
  return n;
}

namespace {

void serialize_gate(std::ostringstream& out, const GateOp& op) {
  auto qubits = [&]() {
    std::string s;
    for (int q : op.qubits) s += " " + std::to_string(q);
    return s;
  };
  switch (op.kind) {
    case GateKind::kX:
      out << "x" << qubits();
      break;
    case GateKind::kZ:
      out << "z" << qubits();
      break;
    case GateKind::kH:
      out << "h" << qubits();
      break;
    case GateKind::kRX:
      out << "rx" << qubits() << " " << fmt17(op.params[0]);
      break;
    case GateKind::kRY:
      out << "ry" << qubits() << " " << fmt17(op.params[0]);
      break;
    case GateKind::kCNOT:
      out << "cnot" << qubits();
      break;
    case GateKind::kCU:
      out << "cu" << qubits();
      for (double p : op.params) out << " " << fmt17(p);
      break;
    case GateKind::kUnitary: {
      out << "unitary" << qubits() << " :";
      for (Eigen::Index i = 0; i < op.matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < op.matrix.cols(); ++j) {
          out << " " << fmt17(op.matrix(i, j).real()) << " "
              << fmt17(op.matrix(i, j).imag());
        }
      }
      break;
    }
    default:
      throw std::logic_error("serialize_gate: not a gate");
  }
}

}  // namespace

std::string Circuit::serialize() const {
  std::ostringstream out;
  out << "# wswap circuit format v1\n";
  out << "qubits " << num_qubits << "\n";
  out << "cbits " << num_classical << "\n";
  for (const auto& op : ops) {
    switch (op.kind) {
      case GateKind::kMeasure:
        out << "measure " << op.qubits[0] << " -> " << op.cbit;
        break;
      case GateKind::kBarrier:
        out << "barrier";
        break;
      case GateKind::kConditional:
        out << "cond " << op.cbit << " == " << op.condition_value << " : ";
        serialize_gate(out, *op.inner);
        break;
      case GateKind::kChannel: {
        out << op.channel_name;
        for (int q : op.qubits) out << " " << q;
        for (double p : op.channel_params) out << " " << fmt17(p);
        break;
      }
      default:
        serialize_gate(out, op);
        break;
    }
    out << "\n";
  }
  return out.str();
}

// --- builders ---------------------------------------------------------------

Circuit w_prep_circuit() {
  Circuit c(3, 0);
  const double theta_top = std::numbers::pi / 3.0;                     // 2 asin(1/2)
  const double theta_mid = 2.0 * std::asin(1.0 / std::sqrt(3.0));
  c.append(GateOp::ry(0, theta_top));
  // Control-0 CRY: rotate qubit 1 only where qubit 0 stayed |0>.
  c.append(GateOp::x(0));
  c.append(GateOp::cu(0, 1, theta_mid, 0.0, 0.0, 0.0));
  c.append(GateOp::x(0));
  // Move the leftover |000> weight onto |001>.
  c.append(GateOp::x(2));
  c.append(GateOp::cnot(0, 2));
  c.append(GateOp::cnot(1, 2));
  return c;
}

Circuit basis_change_circuit() {
  const CharlieBasis basis = charlie_basis(WFamilyParams{});
  Matrix u(8, 8);
  for (int i = 0; i < 4; ++i) {
    u.row(i) = basis.outcomes[static_cast<std::size_t>(i)].amps.adjoint();
    u.row(i + 4) = basis.completion[static_cast<std::size_t>(i)].amps.adjoint();
  }
  Circuit c(3, 0);
  c.append(GateOp::unitary(std::move(u), {0, 1, 2}));
  return c;
}

Circuit basis_change_circuit_elementary() {
  Circuit c(3, 0);
  c.append(GateOp::cnot(2, 1));
  c.append(GateOp::cu(1, 2, -std::numbers::pi / 2.0, 0.0, 0.0, 0.0));  // CRY(-pi/2)
  c.append(GateOp::cnot(0, 1));
  c.append(GateOp::h(0));
  return c;
}

double weak_measurement_theta(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("weak measurement strength q outside [0, 1]");
  }
  if (q == 1.0) return std::numbers::pi;  // projective limit
  return 2.0 * std::atan(std::sqrt(q) / std::sqrt(1.0 - q));
}

Circuit weak_measurement_gadget(double q) {
  const double theta = weak_measurement_theta(q);
  Circuit c(2, 0);
  c.append(GateOp::x(0));
  c.append(GateOp::cu(0, 1, theta, 0.0, 0.0, 0.0));
  c.append(GateOp::x(0));
  return c;
}

namespace {

// Charlie's physical qubits and Bob's correction qubit in the 6-qubit layout.
const std::vector<int> kCharlie = {2, 3, 4};
constexpr int kBobQubit = 5;

void append_shifted(Circuit& c, const Circuit& frag,
                    const std::vector<int>& qubit_map) {
  for (GateOp op : frag.ops) {
    for (int& q : op.qubits) q = qubit_map[static_cast<std::size_t>(q)];
    c.append(std::move(op));
  }
}

}  // namespace

SwapCircuit swap_circuit(const SwapCircuitOptions& opts) {
  const bool purify = opts.purify_q.has_value();
  const int nq = purify ? 9 : 6;
  int nc = 3;
  const int ancilla_cbit0 = purify ? nc : -1;
  if (purify) nc += 3;
  const int final_cbit0 = opts.measure_final ? nc : -1;
  if (opts.measure_final) nc += 3;

  SwapCircuit sc;
  sc.circuit = Circuit(nq, nc);
  sc.noise = opts.noise;
  Circuit& c = sc.circuit;

  // Phase 1: W states at Alice's and Bob's sites.
  if (opts.gate_based_prep) {
    const Circuit prep = w_prep_circuit();
    append_shifted(c, prep, {0, 1, 2});
    append_shifted(c, prep, {3, 4, 5});
  } else {
    // Trusted local preparation as one state-prep unitary per site: the
    // first column is |W>, completed to a unitary by QR.
    Matrix a = Matrix::Identity(8, 8);
    a.col(0) = w_state().amps;
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix u = qr.householderQ();
    const Complex phase = u.col(0).dot(w_state().amps);
    u.col(0) *= phase;  // |phase| = 1, fixes Q's sign freedom
    c.append(GateOp::unitary(u, {0, 1, 2}));
    c.append(GateOp::unitary(std::move(u), {3, 4, 5}));
  }
  c.append(GateOp::barrier());

  // Phase 2: transmission through amplitude damping channels.
  if (opts.damping_r.has_value()) {
    const KrausChannel adc = amplitude_damping(DampingParams{*opts.damping_r});
    for (int q : kCharlie) {
      c.append(GateOp::kraus(adc, {q}, "damp", {*opts.damping_r}));
    }
    c.append(GateOp::barrier());
  }

  // Phase 3: rotate Charlie's qubits into the computational basis.
  if (opts.elementary_basis_change) {
    append_shifted(c, basis_change_circuit_elementary(), kCharlie);
    sc.outcome_pattern = {0b010, 0b110, 0b000, 0b100};
  } else {
    append_shifted(c, basis_change_circuit(), kCharlie);
    sc.outcome_pattern = {0b000, 0b001, 0b010, 0b011};
  }
  c.append(GateOp::barrier());

  // Phase 4: Charlie measures and announces.
  for (int i = 0; i < 3; ++i) {
    c.append(GateOp::measure(kCharlie[static_cast<std::size_t>(i)], i));
  }
  c.append(GateOp::barrier());

  // Phase 5: Bob's corrections, keyed on the two announced code bits. The Z
  // conditional comes first so that a branch needing both receives X * Z.
  if (purify) {
    // Only eta outcomes are kept downstream, so only the eta- correction is
    // wired up; the sign-bit conditional also fires on discarded xi-
    // branches, which is harmless.
    if (opts.elementary_basis_change) {
      c.append(GateOp::conditional(0, 1, GateOp::z(kBobQubit)));
    } else {
      c.append(GateOp::conditional(2, 1, GateOp::z(kBobQubit)));
    }
  } else if (opts.elementary_basis_change) {
    c.append(GateOp::conditional(0, 1, GateOp::z(kBobQubit)));
    c.append(GateOp::conditional(1, 0, GateOp::x(kBobQubit)));
  } else {
    c.append(GateOp::conditional(2, 1, GateOp::z(kBobQubit)));
    c.append(GateOp::conditional(1, 1, GateOp::x(kBobQubit)));
  }

  // Phase 6: weak-measurement gadgets on the remaining qubits.
  if (purify) {
    c.append(GateOp::barrier());
    const Circuit gadget = weak_measurement_gadget(*opts.purify_q);
    const std::array<int, 3> data = {0, 1, kBobQubit};
    for (int i = 0; i < 3; ++i) {
      append_shifted(c, gadget, {data[static_cast<std::size_t>(i)], 6 + i});
    }
    for (int i = 0; i < 3; ++i) {
      c.append(GateOp::measure(6 + i, ancilla_cbit0 + i));
    }
  }

  if (opts.measure_final) {
    c.append(GateOp::barrier());
    const std::array<int, 3> finals = {0, 1, kBobQubit};
    for (int i = 0; i < 3; ++i) {
      c.append(GateOp::measure(finals[static_cast<std::size_t>(i)],
                               final_cbit0 + i));
    }
  }

  sc.cnot_count = c.cnot_count();
  sc.ancilla_cbit0 = ancilla_cbit0;
  sc.final_cbit0 = final_cbit0;
  return sc;
}

SwapCircuit swap_circuit(std::optional<GateNoiseParams> noise,
                         std::optional<double> damping_r) {
  SwapCircuitOptions opts;
  opts.noise = noise;
  opts.damping_r = damping_r;
  if (noise.has_value()) {
    // Noise studies expose Charlie's swap operations: trusted state prep,
    // elementary basis change (2 literal CNOTs).
    opts.gate_based_prep = false;
    opts.elementary_basis_change = true;
  }
  return swap_circuit(opts);
}

SwapCircuit purified_swap_circuit(double r, double q) {
  SwapCircuitOptions opts;
  opts.damping_r = r;
  opts.purify_q = q;
  return swap_circuit(opts);
}

// --- executors --------------------------------------------------------------

namespace {

struct SvState {
  std::string bits;
  double probability = 1.0;
  Vector amps;
};

}  // namespace

SvResult run_statevector(const Circuit& c) {
  const int n = c.num_qubits;
  SvResult result;
  result.pre_measurement = StateVector::zero(n);
  bool captured = false;

  std::vector<SvState> branches;
  branches.push_back(SvState{std::string(
                                 static_cast<std::size_t>(c.num_classical),
                                 '0'),
                             1.0, StateVector::zero(n).amps});

  for (const auto& op : c.ops) {
    switch (op.kind) {
      case GateKind::kBarrier:
        break;
      case GateKind::kChannel:
        throw std::invalid_argument(
            "statevector executor does not support noise ops");
      case GateKind::kMeasure: {
        if (!captured) {
          result.pre_measurement =
              StateVector::from(n, branches.front().amps);
          captured = true;
        }
        std::vector<SvState> next;
        for (auto& b : branches) {
          const int q = op.qubits[0];
          Vector a0 = b.amps;
          Vector a1 = b.amps;
          for (Eigen::Index i = 0; i < a0.size(); ++i) {
            if (qubit_bit(static_cast<std::size_t>(i), q, n)) {
              a0(i) = Complex{0.0, 0.0};
            } else {
              a1(i) = Complex{0.0, 0.0};
            }
          }
          const double p0 = a0.squaredNorm();
          const double p1 = a1.squaredNorm();
          if (p0 >= kBranchFloor) {
            SvState s{b.bits, b.probability * p0, a0 / std::sqrt(p0)};
            s.bits[static_cast<std::size_t>(op.cbit)] = '0';
            next.push_back(std::move(s));
          }
          if (p1 >= kBranchFloor) {
            SvState s{b.bits, b.probability * p1, a1 / std::sqrt(p1)};
            s.bits[static_cast<std::size_t>(op.cbit)] = '1';
            next.push_back(std::move(s));
          }
        }
        branches = std::move(next);
        break;
      }
      case GateKind::kConditional: {
        const char want = op.condition_value ? '1' : '0';
        for (auto& b : branches) {
          if (b.bits[static_cast<std::size_t>(op.cbit)] == want) {
            b.amps =
                apply_to_vector(b.amps, op.inner->gate_matrix(),
                                op.inner->qubits, n);
          }
        }
        break;
      }
      default: {
        const Matrix u = op.gate_matrix();
        for (auto& b : branches) {
          b.amps = apply_to_vector(b.amps, u, op.qubits, n);
        }
        break;
      }
    }
  }

  if (!captured && !branches.empty()) {
    result.pre_measurement = StateVector::from(n, branches.front().amps);
  }
  std::sort(branches.begin(), branches.end(),
            [](const SvState& a, const SvState& b) { return a.bits < b.bits; });
  for (auto& b : branches) {
    result.branches.push_back(
        SvBranch{b.bits, b.probability, StateVector::from(n, b.amps)});
  }
  return result;
}

namespace {

struct DmState {
  std::string bits;
  double probability = 1.0;
  DensityMatrix state;
};

}  // namespace

std::vector<DmBranch> run_density(const Circuit& c,
                                  const std::optional<GateNoiseParams>& noise) {
  const int n = c.num_qubits;
  const double y2 = noise ? noise->y2 : 1.0;
  const double eta = noise ? noise->eta_m : 1.0;

  std::vector<DmState> branches;
  branches.push_back(
      DmState{std::string(static_cast<std::size_t>(c.num_classical), '0'), 1.0,
              DensityMatrix::pure(StateVector::zero(n))});

  for (const auto& op : c.ops) {
    switch (op.kind) {
      case GateKind::kBarrier:
        break;
      case GateKind::kChannel:
        for (auto& b : branches) {
          b.state = apply_channel(b.state, op.channel, op.qubits);
        }
        break;
      case GateKind::kCNOT:
        for (auto& b : branches) {
          b.state = (y2 < 1.0)
                        ? noisy_cnot_apply(b.state, op.qubits[0], op.qubits[1],
                                           y2)
                        : apply_cnot(b.state, op.qubits[0], op.qubits[1]);
        }
        break;
      case GateKind::kMeasure: {
        std::vector<DmState> next;
        for (auto& b : branches) {
          auto outcomes = noisy_readout(b.state, op.qubits[0], eta);
          for (int bit = 0; bit < 2; ++bit) {
            Branch& br = outcomes[static_cast<std::size_t>(bit)];
            if (br.empty()) continue;
            DmState s{b.bits, b.probability * br.probability,
                      std::move(*br.state)};
            s.bits[static_cast<std::size_t>(op.cbit)] = bit ? '1' : '0';
            next.push_back(std::move(s));
          }
        }
        branches = std::move(next);
        break;
      }
      case GateKind::kConditional: {
        const char want = op.condition_value ? '1' : '0';
        const Matrix u = op.inner->gate_matrix();
        for (auto& b : branches) {
          if (b.bits[static_cast<std::size_t>(op.cbit)] == want) {
            b.state = apply_operator(b.state, u, op.inner->qubits);
          }
        }
        break;
      }
      default: {
        const Matrix u = op.gate_matrix();
        for (auto& b : branches) {
          b.state = apply_operator(b.state, u, op.qubits);
        }
        break;
      }
    }
  }

  std::sort(branches.begin(), branches.end(),
            [](const DmState& a, const DmState& b) { return a.bits < b.bits; });
  std::vector<DmBranch> out;
  out.reserve(branches.size());
  for (auto& b : branches) {
    out.push_back(
        DmBranch{b.bits, Branch{std::move(b.state), b.probability}});
  }
  return out;
}

SwapAnalysis analyze_swap(const SwapCircuit& sc) {
  if (sc.final_cbit0 >= 0) {
    throw std::invalid_argument(
        "analyze_swap requires a circuit without final measurement");
  }
  const StateVector w = w_state();
  const bool has_ancillas = sc.ancilla_cbit0 >= 0;
  SwapAnalysis out;
  out.named = {Branch::impossible(), Branch::impossible(),
               Branch::impossible(), Branch::impossible()};
  for (const auto& [bits, branch] : run_density(sc.circuit, sc.noise)) {
    if (branch.empty()) continue;
    const DensityMatrix reduced = partial_trace(*branch.state, {0, 1, 5});
    out.average_fidelity +=
        branch.probability * pure_fidelity(w, reduced);
    int pattern = 0;
    for (int i = 0; i < 3; ++i) {
      pattern = (pattern << 1) | (bits[static_cast<std::size_t>(i)] == '1');
    }
    bool kept = false;
    if (!has_ancillas ||
        bits.compare(static_cast<std::size_t>(sc.ancilla_cbit0), 3, "000") ==
            0) {
      for (int i = 0; i < 4; ++i) {
        if (pattern != sc.outcome_pattern[static_cast<std::size_t>(i)]) {
          continue;
        }
        out.named[static_cast<std::size_t>(i)] =
            Branch{reduced, branch.probability};
        out.fidelity[static_cast<std::size_t>(i)] = pure_fidelity(w, reduced);
        kept = true;
        break;
      }
    }
    if (!kept) out.other_probability += branch.probability;
  }
  return out;
}

ShotResult sample_shots(const Circuit& c, std::int64_t shots,
                        std::uint64_t seed,
                        const std::optional<GateNoiseParams>& noise) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const auto branches = run_density(c, noise);
  std::vector<double> cumulative;
  double total = 0.0;
  for (const auto& b : branches) {
    total += b.branch.probability;
    cumulative.push_back(total);
  }
  ShotResult result;
  result.shots = shots;
  result.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::int64_t s = 0; s < shots; ++s) {
    // 53-bit uniform in [0, 1); independent of library distribution details.
    const double u =
        static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0) * total;
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t idx = std::min(
        static_cast<std::size_t>(it - cumulative.begin()),
        branches.size() - 1);
    ++result.counts[branches[idx].bits];
  }
  return result;
}

}  // namespace wswap
