#include "pgw/truth_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "pgw/mb_bridge.hpp"
#include "pgw/optical_gates.hpp"
#include "pgw/teleport.hpp"

namespace pgw {

const std::vector<std::string>& truth_table_gates() {
  static const std::vector<std::string> names{"e_cnot", "d_cnot",  "f_gate", "parity_check",
                                              "telegate_t", "telegate_tp", "cz2t", "cnot_cz"};
  return names;
}

namespace {

std::string num(double v) {
  if (std::abs(v) < 5e-13) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Renders a state with the global phase chosen so the first largest
// amplitude is real and positive. `letters` names the 0/1 values.
std::string render(const QubitState& s, const char* letters) {
  if (s.squared_norm() < 1e-24) return "rejected";
  const QubitState n = s.normalized();
  const auto& a = n.amplitudes();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < a.size(); ++i) {
    if (std::abs(a(i)) > std::abs(a(best)) + 1e-12) best = i;
  }
  const Complex phase = std::conj(a(best)) / std::abs(a(best));
  const std::size_t q = n.size();
  std::string out;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Complex c = a(i) * phase;
    if (std::abs(c) < 1e-12) continue;
    std::string ket = "|";
    for (std::size_t p = 0; p < q; ++p) ket += letters[(i >> (q - 1 - p)) & 1];
    ket += ">";
    std::string coeff;
    if (std::abs(c - Complex(1.0)) < 1e-12) {
      coeff = "";
    } else if (std::abs(c.imag()) < 1e-12) {
      coeff = num(c.real());
    } else {
      coeff = "(" + num(c.real()) + (c.imag() < 0 ? "" : "+") + num(c.imag()) + "i)";
    }
    if (out.empty()) {
      out = coeff + ket;
    } else if (!coeff.empty() && coeff[0] == '-') {
      out += " - " + coeff.substr(1) + ket;
    } else {
      out += " + " + coeff + ket;
    }
  }
  return out;
}

std::string bits_to_letters(const std::string& bits, const char* letters) {
  std::string out;
  for (char c : bits) out += letters[c == '1' ? 1 : 0];
  return out;
}

constexpr const char* kPol = "HV";
constexpr const char* kBit = "01";

TruthTableRow optical_row(const std::string& input, const GateResult& r, const MBEncoding& out_enc) {
  TruthTableRow row{input, "rejected", r.success_probability,
                    r.corrected_outputs_equal || r.accepted_branches.empty()};
  for (const auto& b : r.accepted_branches) {
    if (b.probability > 1e-24) {
      row.output = render(mb_encode(b.state, out_enc), kPol);
      break;
    }
  }
  return row;
}

TruthTableRow qubit_row(const std::string& input, const QubitGateResult& r) {
  TruthTableRow row{input, "rejected", r.success_probability, r.corrected_outputs_equal};
  for (const auto& b : r.accepted_branches) {
    if (b.probability > 1e-24) {
      row.output = render(b.state, kBit);
      break;
    }
  }
  return row;
}

const char* kTwoBits[] = {"00", "01", "10", "11"};

}  // namespace

TruthTable make_truth_table(const std::string& gate) {
  TruthTable t{gate, {}};
  const double s = 1.0 / std::sqrt(2.0);

  if (gate == "e_cnot") {
    const MBEncoding enc{{"IN", "IN'"}, {}};
    for (const char* bits : kTwoBits) {
      const FockKet in = polarization_basis({"IN", "IN'"}, {bits[0] - '0', bits[1] - '0'});
      t.rows.push_back(optical_row(bits_to_letters(bits, kPol), e_cnot(in), enc));
    }
  } else if (gate == "d_cnot") {
    const MBEncoding enc{{"IN'"}, {}};
    for (const auto pol : {Polarization::H, Polarization::V}) {
      const FockKet aux = single_photon(mode("A'", pol), Register::from_ports({"A'"}));
      TruthTableRow row{"A'=" + to_string(pol), "", 0.0, true};
      for (int b = 0; b < 2; ++b) {
        const GateResult r = destructive_cnot(tensor(polarization_basis({"IN'"}, {b}), aux));
        const TruthTableRow one = optical_row("", r, enc);
        row.output += std::string(row.output.empty() ? "" : ", ") + kPol[b] + "->" + one.output;
        row.probability = r.success_probability;
        row.branches_agree = row.branches_agree && r.corrected_outputs_equal;
      }
      t.rows.push_back(std::move(row));
    }
  } else if (gate == "f_gate") {
    const MBEncoding enc{{"IN"}, {}};
    for (const int sign : {+1, -1}) {
      const FockKet aux = polarization_qubit("A", s, sign * s);
      for (int b = 0; b < 3; ++b) {
        const FockKet in = b < 2 ? polarization_basis({"IN"}, {b}) : polarization_qubit("IN", s, s);
        const GateResult r = f_gate(tensor(in, aux));
        t.rows.push_back(optical_row(std::string(1, "HV+"[b]) + " A=" + (sign > 0 ? "+" : "-"), r, enc));
      }
    }
  } else if (gate == "parity_check") {
    const MBEncoding enc{{"IN"}, {}};
    for (const auto pol : {Polarization::H, Polarization::V}) {
      for (int b = 0; b < 2; ++b) {
        const GateResult r = quantum_parity_check(polarization_basis({"IN"}, {b}), pol);
        t.rows.push_back(optical_row(std::string(1, kPol[b]) + " A=" + to_string(pol), r, enc));
      }
    }
  } else if (gate == "telegate_t" || gate == "telegate_tp") {
    const auto variant = gate == "telegate_t" ? TelegateVariant::Swap : TelegateVariant::ParityFilter;
    for (const BellLabel aux : {kPsiPlus, kPsiMinus}) {
      for (const char* bit : {"0", "1"}) {
        const QubitGateResult r = telegate_t(QubitState::basis({"IN"}, bit), bell_state(aux), variant);
        t.rows.push_back(qubit_row(std::string(bit) + " aux=" + to_string(aux), r));
      }
    }
    // |+> input exposes the relative phase that basis inputs cannot show.
    for (const BellLabel aux : {kPsiPlus, kPsiMinus}) {
      QubitState::Vector v(2);
      v << s, s;
      const QubitGateResult r = telegate_t(QubitState({"IN"}, v), bell_state(aux), variant);
      t.rows.push_back(qubit_row("+ aux=" + to_string(aux), r));
    }
  } else if (gate == "cz2t") {
    for (const char* bits : kTwoBits) {
      t.rows.push_back(qubit_row(bits, cz_via_two_telegates(QubitState::basis({"IN", "IN'"}, bits), cz_resource_state())));
    }
    QubitState::Vector v = QubitState::Vector::Constant(4, 0.5);
    t.rows.push_back(qubit_row("++", cz_via_two_telegates(QubitState({"IN", "IN'"}, v), cz_resource_state())));
  } else if (gate == "cnot_cz") {
    for (const char* bits : kTwoBits) {
      t.rows.push_back(qubit_row(bits, cnot_via_cz(QubitState::basis({"IN", "IN'"}, bits))));
    }
  } else {
    throw std::invalid_argument("unknown gate '" + gate + "'");
  }
  return t;
}

void write_text(std::ostream& os, const TruthTable& t) {
  os << "gate: " << t.gate << "\n";
  std::size_t w = 5;
  for (const auto& r : t.rows) w = std::max(w, r.input.size());
  for (const auto& r : t.rows) {
    os << r.input << std::string(w - r.input.size(), ' ') << "  ->  " << r.output
       << "  probability=" << num(r.probability) << "  branches_agree=" << (r.branches_agree ? "yes" : "no") << "\n";
  }
}

std::string to_json(const TruthTable& t) {
  nlohmann::ordered_json j;
  j["gate"] = t.gate;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    j["rows"].push_back({{"input", r.input},
                         {"output", r.output},
                         {"probability", r.probability},
                         {"branches_agree", r.branches_agree}});
  }
  return j.dump(2) + "\n";
}

}  // namespace pgw
