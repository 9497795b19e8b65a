#include "pgw/teleport.hpp"

#include <cmath>
#include <stdexcept>

namespace pgw {

std::string to_string(BellLabel b) {
  return std::string(b.family == BellFamily::Psi ? "Psi" : "Phi") + (b.sign == BellSign::Plus ? "+" : "-");
}

std::string to_string(TelegateVariant v) { return v == TelegateVariant::Swap ? "swap" : "parity_filter"; }

QubitState bell_state(BellLabel label, const std::string& first, const std::string& second) {
  const double s = 1.0 / std::sqrt(2.0);
  const double sign = label.sign == BellSign::Plus ? 1.0 : -1.0;
  QubitState::Vector v = QubitState::Vector::Zero(4);
  if (label.family == BellFamily::Psi) {
    v(1) = s;
    v(2) = sign * s;
  } else {
    v(0) = s;
    v(3) = sign * s;
  }
  return QubitState({first, second}, std::move(v));
}

PbmResult pbm(const QubitState& state, const std::string& first, const std::string& second) {
  PbmResult r;
  const BellLabel accepted[2] = {kPsiPlus, kPsiMinus};
  for (int j = 0; j < 2; ++j) {
    QubitBranch b;
    b.outcome = to_string(accepted[j]);
    b.corrections = {j};
    b.state = partial_inner(bell_state(accepted[j], first, second), state);
    b.probability = b.state.squared_norm();
    r.accepted[static_cast<std::size_t>(j)] = std::move(b);
  }
  for (BellLabel phi : {kPhiPlus, kPhiMinus}) {
    r.rejected_probability += partial_inner(bell_state(phi, first, second), state).squared_norm();
  }
  return r;
}

QubitState z_correction(const QubitState& state, const std::string& qubit, int j) {
  if (j != 0 && j != 1) throw std::invalid_argument("correction index must be 0 or 1");
  return j == 0 ? state : apply(gates::pauli_z(qubit), state);
}

QubitState parity_filter(const QubitState& state, const std::string& first, const std::string& second) {
  return apply(gates::parity_filter(first, second), state);
}

QubitGateResult telegate_stage(const QubitState& joint, const std::string& input, const std::string& aux1,
                               const std::string& aux2, TelegateVariant variant) {
  QubitState s = variant == TelegateVariant::Swap ? joint.relabeled_swap(input, aux1)
                                                  : parity_filter(joint, input, aux1);
  PbmResult m = pbm(s, aux1, aux2);
  QubitGateResult r;
  for (auto& b : m.accepted) {
    b.state = z_correction(b.state, input, b.corrections.front());
    r.accepted_branches.push_back(std::move(b));
  }
  finalize(r, joint.squared_norm());
  return r;
}

QubitGateResult telegate_t(const QubitState& input, const QubitState& aux, TelegateVariant variant) {
  if (input.size() != 1) throw std::invalid_argument("telegate input must be a single qubit");
  if (aux.size() != 2) throw std::invalid_argument("telegate resource must be two qubits");
  return telegate_stage(tensor(input, aux), input.labels()[0], aux.labels()[0], aux.labels()[1], variant);
}

QubitState cz_resource_state(const std::string& a1, const std::string& a2, const std::string& b1,
                             const std::string& b2) {
  const std::vector<std::string> labels{a1, a2, b1, b2};
  QubitState::Vector v = QubitState::Vector::Zero(16);
  v(0b0101) = 0.5;
  v(0b0110) = 0.5;
  v(0b1001) = 0.5;
  v(0b1010) = -0.5;
  return QubitState(labels, std::move(v));
}

QubitOperator cz_from_paulis(const std::string& a, const std::string& b) {
  using gates::identity;
  using gates::kron;
  using gates::pauli_z;
  const QubitOperator::Matrix m = 0.5 * (kron(identity(a), identity(b)).matrix + kron(pauli_z(a), identity(b)).matrix +
                                         kron(identity(a), pauli_z(b)).matrix - kron(pauli_z(a), pauli_z(b)).matrix);
  return QubitOperator(m, {a, b});
}

QubitGateResult cz_via_two_telegates(const QubitState& input, const QubitState& aux, TelegateVariant variant) {
  if (input.size() != 2) throw std::invalid_argument("CZ input must be two qubits");
  if (aux.size() != 4) throw std::invalid_argument("CZ resource must be four qubits");
  const auto& c = input.labels()[0];
  const auto& t = input.labels()[1];
  const auto& al = aux.labels();
  const QubitState joint = tensor(input, aux);

  QubitGateResult out;
  const QubitGateResult first = telegate_stage(joint, c, al[0], al[1], variant);
  for (const auto& b1 : first.accepted_branches) {
    const QubitGateResult second = telegate_stage(b1.state, t, al[2], al[3], variant);
    for (const auto& b2 : second.accepted_branches) {
      QubitBranch b;
      b.outcome = b1.outcome + "," + b2.outcome;
      b.corrections = {b1.corrections.front(), b2.corrections.front()};
      b.state = b2.state.reordered({c, t});
      b.probability = b2.probability;
      out.accepted_branches.push_back(std::move(b));
    }
  }
  finalize(out, joint.squared_norm());
  return out;
}

QubitGateResult cnot_via_cz(const QubitState& input, TelegateVariant variant) {
  if (input.size() != 2) throw std::invalid_argument("CNOT input must be two qubits");
  const auto& t = input.labels()[1];
  QubitGateResult r = cz_via_two_telegates(apply(gates::hadamard(t), input), cz_resource_state(), variant);
  for (auto& b : r.accepted_branches) b.state = apply(gates::hadamard(t), b.state);
  finalize(r, input.squared_norm());
  return r;
}

}  // namespace pgw
