#include "pgw/optical_gates.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "pgw/optical_elements.hpp"

namespace pgw {

void FGateLayout::validate() const {
  const std::set<std::string> labels{input_port, aux_port, detector0, detector1};
  if (labels.size() != 4) throw std::invalid_argument("F gate layout labels must be distinct");
}

namespace {

void require_one_photon_per_port(const FockKet& k, const std::string& a, const std::string& b) {
  if (!k.reg().has_port(a) || !k.reg().has_port(b)) {
    throw RegisterError("ports " + a + " / " + b + " not in register");
  }
  if (k.is_zero()) throw std::invalid_argument("gate input is the zero ket");
  for (const auto& [occ, amp] : k.terms()) {
    if (photons_in_port(k, occ, a) != 1 || photons_in_port(k, occ, b) != 1) {
      throw std::invalid_argument("gate expects exactly one photon in each of " + a + " and " + b);
    }
  }
}

GateResult f_gate_unchecked(const FockKet& joint, const FGateLayout& l) {
  FockKet s = apply_mode_transform(joint, pbs(l.input_port, l.aux_port));
  s = apply_mode_transform(s, hwp(l.aux_port, kHadamardPlateAngle));

  GateResult r;
  Branch d0 = measure_and_postselect(s, DetectionPattern(l.detector0, {{H(l.aux_port), 1}, {V(l.aux_port), 0}}));
  d0.corrections = {0};
  Branch d1 = measure_and_postselect(s, DetectionPattern(l.detector1, {{H(l.aux_port), 0}, {V(l.aux_port), 1}}));
  d1.corrections = {1};
  d1.state = apply_mode_transform(d1.state, pockels_z(l.input_port));
  r.accepted_branches.push_back(std::move(d0));
  r.accepted_branches.push_back(std::move(d1));
  finalize(r, joint.squared_norm());
  return r;
}

// Runs `stage` on every branch of `r`, concatenating outcome labels and
// correction indices.
GateResult chain(const GateResult& r, double input_norm2,
                 const std::function<GateResult(const FockKet&)>& stage) {
  GateResult out;
  for (const auto& b : r.accepted_branches) {
    GateResult next = stage(b.state);
    for (auto& nb : next.accepted_branches) {
      Branch combined;
      combined.outcome = b.outcome + "," + nb.outcome;
      combined.corrections = b.corrections;
      combined.corrections.insert(combined.corrections.end(), nb.corrections.begin(), nb.corrections.end());
      combined.state = std::move(nb.state);
      combined.probability = nb.probability;
      out.accepted_branches.push_back(std::move(combined));
    }
  }
  finalize(out, input_norm2);
  return out;
}

GateResult map_branches(GateResult r, const ModeTransform& u, double input_norm2) {
  for (auto& b : r.accepted_branches) {
    b.state = apply_mode_transform(b.state, u);
    b.probability = b.state.squared_norm();
  }
  finalize(r, input_norm2);
  return r;
}

}  // namespace

GateResult f_gate(const FockKet& joint, const FGateLayout& layout) {
  layout.validate();
  require_one_photon_per_port(joint, layout.input_port, layout.aux_port);
  return f_gate_unchecked(joint, layout);
}

FockKet polarization_qubit(const std::string& port, Complex alpha, Complex beta, int cutoff) {
  const Register reg = Register::from_ports({port});
  return superpose({{alpha, single_photon(H(port), reg, cutoff)}, {beta, single_photon(V(port), reg, cutoff)}});
}

FockKet polarization_basis(const std::vector<std::string>& ports, const std::vector<int>& bits, int cutoff) {
  if (ports.size() != bits.size() || ports.empty()) {
    throw std::invalid_argument("polarization_basis: one bit per port required");
  }
  const Register reg = Register::from_ports(ports);
  OccupationVector occ(reg.size(), 0);
  for (std::size_t i = 0; i < ports.size(); ++i) {
    occ[reg.index_of(mode(ports[i], bits[i] == 0 ? Polarization::H : Polarization::V))] = 1;
  }
  return FockKet::basis(reg, std::move(occ), 1.0, cutoff);
}

GateResult quantum_parity_check(const FockKet& input, Polarization aux, const FGateLayout& layout) {
  layout.validate();
  const Register aux_reg = Register::from_ports({layout.aux_port});
  return f_gate(tensor(input, single_photon(mode(layout.aux_port, aux), aux_reg, input.cutoff())), layout);
}

GateResult destructive_cnot(const FockKet& joint, const FGateLayout& layout) {
  layout.validate();
  require_one_photon_per_port(joint, layout.input_port, layout.aux_port);
  FockKet s = apply_mode_transform(joint, hwp(layout.input_port, kHadamardPlateAngle));
  s = apply_mode_transform(s, hwp(layout.aux_port, kHadamardPlateAngle));
  return map_branches(f_gate_unchecked(s, layout), hwp(layout.input_port, kHadamardPlateAngle),
                      joint.squared_norm());
}

FockKet phi_plus_aux(const std::string& a, const std::string& a_prime, int cutoff) {
  const double s = 1.0 / std::sqrt(2.0);
  return superpose({{s, polarization_basis({a, a_prime}, {0, 0}, cutoff)},
                    {s, polarization_basis({a, a_prime}, {1, 1}, cutoff)}});
}

GateResult e_cnot(const FockKet& input) {
  const FGateLayout control{"IN", "A", "D0", "D1"};
  const FGateLayout target{"IN'", "A'", "D0'", "D1'"};
  require_one_photon_per_port(input, control.input_port, target.input_port);
  if (input.reg() != Register::from_ports({control.input_port, target.input_port})) {
    throw RegisterError("e_cnot expects a state on exactly the IN and IN' ports");
  }

  FockKet s = tensor(input, phi_plus_aux(control.aux_port, target.aux_port, input.cutoff()));
  s = apply_mode_transform(s, hwp(target.input_port, kHadamardPlateAngle));
  s = apply_mode_transform(s, hwp(target.aux_port, kHadamardPlateAngle));

  const double n2 = input.squared_norm();
  const GateResult parity = f_gate_unchecked(s, control);
  const GateResult both = chain(parity, n2, [&](const FockKet& k) { return f_gate_unchecked(k, target); });
  return map_branches(both, hwp(target.input_port, kHadamardPlateAngle), n2);
}

std::vector<TruthRow> gate_truth_table(const FockGate& gate, std::span<const FockKet> basis) {
  std::vector<TruthRow> rows;
  for (const auto& in : basis) {
    const GateResult r = gate(in);
    TruthRow row{in, std::nullopt, r.success_probability, r.corrected_outputs_equal};
    for (const auto& b : r.accepted_branches) {
      if (b.probability > 1e-24) {
        row.output = b.state.normalized();
        break;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pgw
