#include "pgw/mb_bridge.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pgw/optical_gates.hpp"
#include "pgw/teleport.hpp"

namespace pgw {

std::string MBEncoding::occupation_label(const std::string& aux_port, Polarization p) {
  return aux_port + to_string(p);
}

std::vector<std::string> MBEncoding::qubit_labels() const {
  std::vector<std::string> labels = input_ports;
  for (const auto& a : aux_ports) {
    labels.push_back(occupation_label(a, Polarization::V));
    labels.push_back(occupation_label(a, Polarization::H));
  }
  return labels;
}

Register MBEncoding::optical_register() const {
  std::vector<std::string> ports = input_ports;
  ports.insert(ports.end(), aux_ports.begin(), aux_ports.end());
  return Register::from_ports(ports);
}

bool MBEncoding::is_input(const std::string& port) const {
  return std::find(input_ports.begin(), input_ports.end(), port) != input_ports.end();
}

bool MBEncoding::is_aux(const std::string& port) const {
  return std::find(aux_ports.begin(), aux_ports.end(), port) != aux_ports.end();
}

namespace {

void require_register(const FockKet& state, const MBEncoding& enc) {
  if (!(state.reg() == enc.optical_register())) {
    throw EncodingError("state register does not match the encoding's ports");
  }
}

// Basis index of an encodable term, or -1.
Eigen::Index encode_term(const FockKet& state, const OccupationVector& occ, const MBEncoding& enc) {
  const Register& reg = state.reg();
  Eigen::Index idx = 0;
  for (const auto& p : enc.input_ports) {
    const int h = occ[reg.index_of(H(p))];
    const int v = occ[reg.index_of(V(p))];
    if (h + v != 1) return -1;
    idx = (idx << 1) | v;
  }
  for (const auto& a : enc.aux_ports) {
    const int h = occ[reg.index_of(H(a))];
    const int v = occ[reg.index_of(V(a))];
    if (h + v != 1) return -1;
    idx = (idx << 2) | (v << 1) | h;
  }
  return idx;
}

}  // namespace

bool is_encodable(const FockKet& state, const OccupationVector& term, const MBEncoding& enc) {
  require_register(state, enc);
  return encode_term(state, term, enc) >= 0;
}

FockKet restrict_to_encodable(const FockKet& state, const MBEncoding& enc) {
  require_register(state, enc);
  FockKet::Terms kept;
  for (const auto& [occ, amp] : state.terms()) {
    if (encode_term(state, occ, enc) >= 0) kept.emplace(occ, amp);
  }
  return FockKet(state.reg(), std::move(kept), state.cutoff());
}

QubitState mb_encode(const FockKet& state, const MBEncoding& enc) {
  require_register(state, enc);
  const auto labels = enc.qubit_labels();
  QubitState::Vector v = QubitState::Vector::Zero(Eigen::Index{1} << labels.size());
  for (const auto& [occ, amp] : state.terms()) {
    const Eigen::Index idx = encode_term(state, occ, enc);
    if (idx < 0) throw EncodingError("term outside the mixed-basis encodable subspace");
    v(idx) += amp;
  }
  return QubitState(labels, std::move(v));
}

FockKet mb_decode(const QubitState& state, const MBEncoding& enc, int cutoff) {
  const auto labels = enc.qubit_labels();
  if (state.size() != labels.size()) throw EncodingError("qubit register does not match the encoding");
  for (const auto& l : labels) {
    if (!state.has(l)) throw EncodingError("qubit " + l + " missing from state");
  }
  const QubitState aligned = state.labels() == labels ? state : state.reordered(labels);
  const Register reg = enc.optical_register();
  const std::size_t n = labels.size();

  FockKet::Terms terms;
  for (Eigen::Index i = 0; i < aligned.amplitudes().size(); ++i) {
    const Complex amp = aligned.amplitudes()(i);
    if (std::abs(amp) < FockKet::kPruneThreshold) continue;
    auto bit = [&](std::size_t pos) { return static_cast<int>((i >> (n - 1 - pos)) & 1); };
    OccupationVector occ(reg.size(), 0);
    std::size_t pos = 0;
    for (const auto& p : enc.input_ports) {
      occ[reg.index_of(bit(pos) == 0 ? H(p) : V(p))] = 1;
      ++pos;
    }
    for (const auto& a : enc.aux_ports) {
      const int v = bit(pos);
      const int h = bit(pos + 1);
      if (v + h != 1) throw EncodingError("aux pair of " + a + " has support outside span{|01>, |10>}");
      occ[reg.index_of(V(a))] = v;
      occ[reg.index_of(H(a))] = h;
      pos += 2;
    }
    terms[occ] += amp;
  }
  return FockKet(reg, std::move(terms), cutoff);
}

QubitOperator mb_image(const ElementSpec& e, const MBEncoding& enc) {
  e.validate();
  const auto jones = [&]() -> Eigen::Matrix2cd {
    return e.kind == ElementKind::HWP ? hwp_jones(e.angle_degrees) : pockels_jones<double>();
  };
  switch (e.kind) {
    case ElementKind::HWP:
    case ElementKind::PC: {
      const auto& p = e.ports[0];
      const Eigen::Matrix2cd j = jones();
      if (enc.is_input(p)) return QubitOperator(QubitOperator::Matrix(j), {p});
      if (enc.is_aux(p)) {
        // (AV, AH): |01> is H, |10> is V; |00> and |11> lie outside the domain.
        QubitOperator::Matrix m = QubitOperator::Matrix::Identity(4, 4);
        m(1, 1) = j(0, 0);
        m(2, 1) = j(1, 0);
        m(1, 2) = j(0, 1);
        m(2, 2) = j(1, 1);
        return QubitOperator(m, {MBEncoding::occupation_label(p, Polarization::V),
                                 MBEncoding::occupation_label(p, Polarization::H)});
      }
      throw EncodingError("element port " + p + " not covered by the encoding");
    }
    case ElementKind::PBS: {
      const auto& a = e.ports[0];
      const auto& b = e.ports[1];
      if (enc.is_input(a) && enc.is_aux(b)) {
        return gates::parity_filter(a, MBEncoding::occupation_label(b, Polarization::V));
      }
      if (enc.is_aux(a) && enc.is_input(b)) {
        return gates::parity_filter(b, MBEncoding::occupation_label(a, Polarization::V));
      }
      throw EncodingError("pbs has a mixed-basis image only between an input and an aux port");
    }
    case ElementKind::SWAP:
      throw EncodingError("mode swaps have no mixed-basis image");
  }
  throw std::logic_error("unknown element kind");
}

// ---------------------------------------------------------------------------
// Verification

namespace {

struct MaxTracker {
  double value = 0.0;
  void operator()(double v) { value = std::max(value, v); }
};

struct MinTracker {
  double value = 1.0;
  void operator()(double v) { value = std::min(value, v); }
};

const MBEncoding kSingleAux{{"IN"}, {"A"}};

FockKet optical_pair(Complex a, Complex b, Complex aux_h, Complex aux_v) {
  return tensor(polarization_qubit("IN", a, b), polarization_qubit("A", aux_h, aux_v));
}

// alpha|0>+beta|1> on one named qubit.
QubitState qubit(const std::string& label, Complex alpha, Complex beta) {
  QubitState::Vector v(2);
  v << alpha, beta;
  return QubitState({label}, std::move(v));
}

double pbs_deviation(Complex a, Complex b, Complex A, Complex B) {
  const FockKet psi = optical_pair(a, b, A, B);
  const FockKet out = restrict_to_encodable(apply_mode_transform(psi, pbs("IN", "A")), kSingleAux);
  const QubitState got = mb_encode(out, kSingleAux);
  const std::vector<std::string> labels{"IN", "AV", "AH"};
  const QubitState want = QubitState::basis(labels, "001").scaled(a * A) + QubitState::basis(labels, "110").scaled(b * B);
  return max_abs_difference(got, want);
}

}  // namespace

std::vector<CheckRecord> verify_pbs_mb(Rng& rng, int trials) {
  std::vector<CheckRecord> out;
  const std::string ref = "PBS in mixed basis: aA|001> + bB|110>";
  out.push_back(make_check("mb.pbs.even_term", ref, pbs_deviation(1.0, 0.0, 1.0, 0.0), 0.0, 1e-12));
  {
    const FockKet psi = optical_pair(0.0, 1.0, 1.0, 0.0);
    const FockKet kept = restrict_to_encodable(apply_mode_transform(psi, pbs("IN", "A")), kSingleAux);
    out.push_back(make_check("mb.pbs.odd_term_filtered", ref, kept.norm(), 0.0, 1e-12));
  }
  if (trials > 0) {
    MaxTracker formula;
    MaxTracker filter;
    for (int t = 0; t < trials; ++t) {
      const auto [a, b] = random_qubit_amplitudes(rng);
      const auto [A, B] = random_qubit_amplitudes(rng);
      formula(pbs_deviation(a, b, A, B));
      const FockKet psi = optical_pair(a, b, A, B);
      const QubitState lhs =
          mb_encode(restrict_to_encodable(apply_mode_transform(psi, pbs("IN", "A")), kSingleAux), kSingleAux);
      const QubitState rhs = parity_filter(mb_encode(psi, kSingleAux), "IN", "AV");
      filter(max_abs_difference(lhs, rhs));
    }
    out.push_back(make_check("mb.pbs.random_formula", ref, formula.value, 0.0, 1e-12));
    out.push_back(make_check("mb.pbs.random_parity_filter", "PBS equals parity filter on (IN, AV)",
                             filter.value, 0.0, 1e-12));
  }
  return out;
}

std::vector<CheckRecord> verify_hwp_mb(Rng& rng, int trials) {
  std::vector<CheckRecord> out;
  const MBEncoding aux_only{{}, {"A"}};
  const Register reg = aux_only.optical_register();
  const ModeTransform plate = hwp("A", kHadamardPlateAngle);
  const std::string ref = "HWP in mixed basis: |01> -> Psi+, |10> -> Psi-";

  const QubitState from_h = mb_encode(apply_mode_transform(single_photon(H("A"), reg), plate), aux_only);
  const QubitState from_v = mb_encode(apply_mode_transform(single_photon(V("A"), reg), plate), aux_only);
  out.push_back(make_check("mb.hwp.01_to_psi_plus", ref,
                           fidelity_up_to_global_phase(from_h, bell_state(kPsiPlus, "AV", "AH")), 1.0, 1e-12));
  out.push_back(make_check("mb.hwp.10_to_psi_minus", ref,
                           fidelity_up_to_global_phase(from_v, bell_state(kPsiMinus, "AV", "AH")), 1.0, 1e-12));

  const DetectionPattern d0("D0", {{H("A"), 1}, {V("A"), 0}});
  const DetectionPattern d1("D1", {{H("A"), 0}, {V("A"), 1}});
  const std::string analyzer_ref = "HWP then detection discriminates Psi+ / Psi-";
  for (const auto& [label, bell, want_d0] :
       {std::tuple{"psi_plus", kPsiPlus, 1.0}, std::tuple{"psi_minus", kPsiMinus, 0.0}}) {
    const FockKet photon = mb_decode(bell_state(bell, "AV", "AH"), aux_only);
    const FockKet rotated = apply_mode_transform(photon, plate);
    out.push_back(make_check(std::string("mb.hwp.analyzer.") + label + ".d0", analyzer_ref,
                             measure_and_postselect(rotated, d0).probability, want_d0, 1e-12));
    out.push_back(make_check(std::string("mb.hwp.analyzer.") + label + ".d1", analyzer_ref,
                             measure_and_postselect(rotated, d1).probability, 1.0 - want_d0, 1e-12));
  }

  if (trials > 0) {
    MaxTracker image_dev;
    MaxTracker prob_dev;
    const QubitOperator image = mb_image(ElementSpec::make_hwp("A", kHadamardPlateAngle), aux_only);
    for (int t = 0; t < trials; ++t) {
      const auto [A, B] = random_qubit_amplitudes(rng);
      const FockKet photon = polarization_qubit("A", A, B);
      const FockKet rotated = apply_mode_transform(photon, plate);
      const QubitState encoded = mb_encode(photon, aux_only);
      image_dev(max_abs_difference(mb_encode(rotated, aux_only), apply(image, encoded)));
      const double p_plus = std::norm(inner(bell_state(kPsiPlus, "AV", "AH"), encoded));
      prob_dev(std::abs(measure_and_postselect(rotated, d0).probability - p_plus));
    }
    out.push_back(make_check("mb.hwp.random_image", ref, image_dev.value, 0.0, 1e-12));
    out.push_back(make_check("mb.hwp.random_analyzer", analyzer_ref, prob_dev.value, 0.0, 1e-12));
  }
  return out;
}

std::vector<CheckRecord> verify_f_equals_tprime(Rng& rng, int trials, int cutoff) {
  const MBEncoding input_only{{"IN"}, {}};
  MaxTracker prob_gap;
  MaxTracker quarter_gap;
  MinTracker twin_fidelity;
  MinTracker expected_fidelity;
  int failures = 0;

  auto run = [&](Complex alpha, Complex beta) {
    for (const int sign : {+1, -1}) {
      const double s = 1.0 / std::sqrt(2.0);
      const FockKet joint = tensor(polarization_qubit("IN", alpha, beta, cutoff), polarization_qubit("A", s, sign * s, cutoff));
      const GateResult optical = f_gate(joint);
      const QubitState phi = qubit("IN", alpha, beta);
      const QubitGateResult tele =
          telegate_t(phi, bell_state(sign > 0 ? kPsiPlus : kPsiMinus, "AV", "AH"), TelegateVariant::ParityFilter);
      const QubitState expected = sign > 0 ? phi : apply(gates::pauli_z("IN"), phi);
      for (std::size_t j = 0; j < 2; ++j) {
        const Branch& ob = optical.accepted_branches[j];
        const QubitBranch& tb = tele.accepted_branches[j];
        if (ob.corrections != tb.corrections) ++failures;
        prob_gap(std::abs(ob.probability - tb.probability));
        quarter_gap(std::abs(ob.probability - 0.25));
        const QubitState encoded = mb_encode(ob.state, input_only);
        twin_fidelity(fidelity_up_to_global_phase(encoded, tb.state));
        expected_fidelity(fidelity_up_to_global_phase(encoded, expected));
      }
    }
  };

  run(0.6, Complex(0.0, 0.8));
  for (int t = 0; t < trials; ++t) {
    const auto [a, b] = random_qubit_amplitudes(rng);
    run(a, b);
  }
  const std::string ref = "F gate in mixed basis equals telegate T'";
  return {
      make_check("mb.f_tprime.branch_pairing", ref, failures, 0.0, 0.0),
      make_check("mb.f_tprime.probability_match", ref, prob_gap.value, 0.0, 1e-11),
      make_check("mb.f_tprime.branch_probability", ref, quarter_gap.value, 0.0, 1e-11),
      make_check("mb.f_tprime.state_fidelity", ref, twin_fidelity.value, 1.0, 1e-11),
      make_check("mb.f_tprime.output_is_phi_or_z_phi", ref, expected_fidelity.value, 1.0, 1e-11),
  };
}

std::vector<CheckRecord> verify_aux_state_equivalence(int cutoff) {
  const MBEncoding pair{{}, {"A", "A'"}};
  const QubitState resource = cz_resource_state("AV", "AH", "A'V", "A'H");
  const ModeTransform plate = hwp("A'", kHadamardPlateAngle);
  const std::string ref = "(I x HWP)|Phi+> encodes to the two-telegate CZ resource";

  const FockKet phi_plus = phi_plus_aux("A", "A'", cutoff);
  const double s = 1.0 / std::sqrt(2.0);
  const FockKet phi_minus = superpose({{s, polarization_basis({"A", "A'"}, {0, 0}, cutoff)},
                                       {-s, polarization_basis({"A", "A'"}, {1, 1}, cutoff)}});

  const double f = fidelity_up_to_global_phase(mb_encode(apply_mode_transform(phi_plus, plate), pair), resource);
  const double no_plate = fidelity_up_to_global_phase(mb_encode(phi_plus, pair), resource);
  const double wrong_bell = fidelity_up_to_global_phase(mb_encode(apply_mode_transform(phi_minus, plate), pair), resource);
  return {
      make_check("mb.aux.fidelity", ref, f, 1.0, 1e-12),
      make_check("mb.aux.negative_no_hwp", "negative control: resource without the HWP", no_plate, 0.0, 1e-12),
      make_check("mb.aux.negative_phi_minus", "negative control: Phi- instead of Phi+", wrong_bell, 0.0, 1e-12),
  };
}

std::vector<CheckRecord> verify_ecnot_equals_tcnot(Rng& rng, int trials, int cutoff) {
  const MBEncoding inputs{{"IN", "IN'"}, {}};
  const std::vector<std::string> labels{"IN", "IN'"};
  MaxTracker e_quarter;
  MaxTracker t_quarter;
  MaxTracker prob_gap;
  MinTracker twin_fidelity;
  MinTracker cnot_fidelity;
  int pairing_failures = 0;

  auto run = [&](const QubitState& q) {
    const GateResult optical = e_cnot(mb_decode(q, inputs, cutoff));
    const QubitGateResult tele = cnot_via_cz(q, TelegateVariant::ParityFilter);
    const QubitState direct = apply(gates::cnot("IN", "IN'"), q);
    if (optical.accepted_branches.size() != tele.accepted_branches.size()) {
      ++pairing_failures;
      return;
    }
    for (const auto& ob : optical.accepted_branches) {
      const auto it = std::find_if(tele.accepted_branches.begin(), tele.accepted_branches.end(),
                                   [&](const QubitBranch& tb) { return tb.corrections == ob.corrections; });
      if (it == tele.accepted_branches.end()) {
        ++pairing_failures;
        continue;
      }
      e_quarter(std::abs(ob.probability - 1.0 / 16.0));
      t_quarter(std::abs(it->probability - 1.0 / 16.0));
      prob_gap(std::abs(ob.probability - it->probability));
      const QubitState encoded = mb_encode(ob.state, inputs);
      twin_fidelity(fidelity_up_to_global_phase(encoded, it->state));
      cnot_fidelity(fidelity_up_to_global_phase(encoded, direct));
    }
  };

  for (const char* bits : {"00", "01", "10", "11"}) run(QubitState::basis(labels, bits));
  for (int t = 0; t < trials; ++t) run(random_qubit_state(rng, labels));

  const std::string ref = "mixed-basis E-CNOT branches equal T-CNOT branches";
  return {
      make_check("mb.e2e.branch_pairing", ref, pairing_failures, 0.0, 0.0),
      make_check("mb.e2e.ecnot_branch_probability", ref, e_quarter.value, 0.0, 1e-10),
      make_check("mb.e2e.tcnot_branch_probability", ref, t_quarter.value, 0.0, 1e-10),
      make_check("mb.e2e.probability_match", ref, prob_gap.value, 0.0, 1e-10),
      make_check("mb.e2e.state_fidelity", ref, twin_fidelity.value, 1.0, 1e-10),
      make_check("mb.e2e.cnot_fidelity", ref, cnot_fidelity.value, 1.0, 1e-10),
  };
}

namespace {

FockKet random_encodable(Rng& rng) {
  const QubitState q = random_qubit_state(rng, {"IN", "A"});
  // Both ports read as polarization qubits, so every term has one photon per port.
  return mb_decode(q, MBEncoding{{"IN", "A"}, {}});
}

}  // namespace

std::vector<CheckRecord> verify_encoding_isometry(Rng& rng, int trials) {
  MaxTracker inner_gap;
  MaxTracker round_trip;
  for (int t = 0; t < trials; ++t) {
    const FockKet psi = random_encodable(rng);
    const FockKet phi = random_encodable(rng);
    const QubitState ep = mb_encode(psi, kSingleAux);
    const QubitState ef = mb_encode(phi, kSingleAux);
    inner_gap(std::abs(inner(ep, ef) - inner(psi, phi)));
    round_trip(max_abs_difference(mb_decode(ep, kSingleAux), psi));
  }
  if (trials == 0) return {};
  return {
      make_check("mb.encode.isometry", "encoding preserves inner products", inner_gap.value, 0.0, 1e-12),
      make_check("mb.encode.round_trip", "decode inverts encode", round_trip.value, 0.0, 1e-13),
  };
}

std::vector<CheckRecord> verify_naturality(Rng& rng, int trials) {
  if (trials == 0) return {};
  MaxTracker dev;
  for (int t = 0; t < trials; ++t) {
    const double theta = 180.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const ElementSpec elements[] = {
        ElementSpec::make_hwp("IN", theta), ElementSpec::make_hwp("A", theta), ElementSpec::make_pc("IN"),
        ElementSpec::make_pc("A"), ElementSpec::make_pbs("IN", "A"),
    };
    const FockKet psi = random_encodable(rng);
    const QubitState encoded = mb_encode(psi, kSingleAux);
    for (const auto& e : elements) {
      const FockKet optical = restrict_to_encodable(apply_mode_transform(psi, to_transform(e)), kSingleAux);
      dev(max_abs_difference(mb_encode(optical, kSingleAux), apply(mb_image(e, kSingleAux), encoded)));
    }
  }
  return {make_check("mb.naturality", "encode after element equals element image after encode", dev.value, 0.0,
                     1e-11)};
}

}  // namespace pgw
