#include <cmath>

#include <gtest/gtest.h>

#include "pgw/optical_elements.hpp"
#include "pgw/optical_gates.hpp"
#include "pgw/report.hpp"

using namespace pgw;

namespace {

const double kS = 1.0 / std::sqrt(2.0);
const Complex kMinusI(0, -1);

FockKet in_qubit(Complex a, Complex b) { return polarization_qubit("IN", a, b); }

// Hand expansion of the F gate for input a|H> + b|V> and aux c|H> + d|V>:
// after PBS only a c |H_IN H_A> and b d |V_IN V_A> keep one photon per port,
// the plate sends each aux photon to -i(H +- V)/sqrt2, and the Pockels cell
// undoes the sign on D1. Both branches are -i/sqrt2 (a c |H> + b d |V>).
FockKet expected_f_branch(Complex a, Complex b, Complex c, Complex d) {
  return (kMinusI * kS) * in_qubit(a * c, b * d);
}

double rejected_weight_f(const FockKet& joint) {
  FockKet s = apply_mode_transform(joint, pbs("IN", "A"));
  s = apply_mode_transform(s, hwp("A", 22.5));
  double w = 0.0;
  for (const auto& o : enumerate_outcomes(s, {H("A"), V("A")})) {
    const auto& m = o.outcome;
    if (m.find("A.H=1") != std::string::npos && m.find("A.V=0") != std::string::npos) continue;
    if (m.find("A.H=0") != std::string::npos && m.find("A.V=1") != std::string::npos) continue;
    w += o.probability;
  }
  return w;
}

FockKet cnot_expected(const std::array<Complex, 4>& c) {
  // c indexed by (control, target) bits; control IN, target IN'.
  FockKet::Terms none;
  FockKet out(Register::from_ports({"IN", "IN'"}), none);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out = out + c[static_cast<std::size_t>(2 * i + j)] * polarization_basis({"IN", "IN'"}, {i, i ^ j});
    }
  }
  return out;
}

}  // namespace

TEST(FGate, BranchesMatchHandExpansion) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto [a, b] = random_qubit_amplitudes(rng);
    const auto [c, d] = random_qubit_amplitudes(rng);
    const FockKet joint = tensor(in_qubit(a, b), polarization_qubit("A", c, d));
    const GateResult r = f_gate(joint);
    ASSERT_EQ(r.accepted_branches.size(), 2u);
    const FockKet want = expected_f_branch(a, b, c, d);
    EXPECT_EQ(r.accepted_branches[0].outcome, "D0");
    EXPECT_EQ(r.accepted_branches[1].outcome, "D1");
    EXPECT_EQ(r.accepted_branches[1].corrections, std::vector<int>{1});
    for (const auto& br : r.accepted_branches) EXPECT_LE(max_abs_difference(br.state, want), 1e-13);
    EXPECT_NEAR(r.rejected_probability, rejected_weight_f(joint), 1e-12);
  }
}

TEST(FGate, PlusAuxIsIdentityMinusAuxIsZ) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto [a, b] = random_qubit_amplitudes(rng);
    for (const double sign : {1.0, -1.0}) {
      const GateResult r = f_gate(tensor(in_qubit(a, b), polarization_qubit("A", kS, sign * kS)));
      EXPECT_NEAR(r.success_probability, 0.5, 1e-12);
      for (const auto& br : r.accepted_branches) {
        EXPECT_NEAR(br.probability, 0.25, 1e-12);
        EXPECT_NEAR(fidelity_up_to_global_phase(br.state, in_qubit(a, sign * b)), 1.0, 1e-12);
      }
      EXPECT_TRUE(r.corrected_outputs_equal);
    }
  }
}

TEST(FGate, RejectsBadInputs) {
  const FockKet two = FockKet::basis(Register::from_ports({"IN", "A"}), {0, 0, 1, 1});
  EXPECT_THROW(f_gate(two), std::invalid_argument);
  EXPECT_THROW(f_gate(in_qubit(1, 0)), RegisterError);
  EXPECT_THROW(f_gate(tensor(in_qubit(1, 0), polarization_qubit("A", 1, 0)), {"IN", "A", "D", "D"}),
               std::invalid_argument);
}

TEST(ParityCheck, PassesMatchingPolarization) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto [a, b] = random_qubit_amplitudes(rng);
    const GateResult h = quantum_parity_check(in_qubit(a, b), Polarization::H);
    const GateResult v = quantum_parity_check(in_qubit(a, b), Polarization::V);
    EXPECT_NEAR(h.success_probability, std::norm(a), 1e-12);
    EXPECT_NEAR(v.success_probability, std::norm(b), 1e-12);
    for (const auto& br : h.accepted_branches) {
      EXPECT_LE(max_abs_difference(br.state, expected_f_branch(a, b, 1, 0)), 1e-13);
    }
    for (const auto& br : v.accepted_branches) {
      EXPECT_LE(max_abs_difference(br.state, expected_f_branch(a, b, 0, 1)), 1e-13);
    }
  }
}

TEST(DestructiveCnot, AuxHIdentityAuxVFlip) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto [g, d] = random_qubit_amplitudes(rng);
    const FockKet target = polarization_qubit("IN'", g, d);
    const Register ar = Register::from_ports({"A'"});
    const GateResult rh = destructive_cnot(tensor(target, single_photon(H("A'"), ar)));
    const GateResult rv = destructive_cnot(tensor(target, single_photon(V("A'"), ar)));
    EXPECT_NEAR(rh.success_probability, 0.5, 1e-12);
    EXPECT_NEAR(rv.success_probability, 0.5, 1e-12);
    for (const auto& br : rh.accepted_branches) {
      EXPECT_NEAR(fidelity_up_to_global_phase(br.state, target), 1.0, 1e-12);
    }
    for (const auto& br : rv.accepted_branches) {
      EXPECT_NEAR(fidelity_up_to_global_phase(br.state, polarization_qubit("IN'", d, g)), 1.0, 1e-12);
    }
  }
}

TEST(ECnot, TruthTable) {
  for (int c = 0; c < 2; ++c) {
    for (int t = 0; t < 2; ++t) {
      const GateResult r = e_cnot(polarization_basis({"IN", "IN'"}, {c, t}));
      EXPECT_NEAR(r.success_probability, 0.25, 1e-12);
      ASSERT_EQ(r.accepted_branches.size(), 4u);
      const FockKet want = polarization_basis({"IN", "IN'"}, {c, c ^ t});
      for (const auto& br : r.accepted_branches) {
        EXPECT_NEAR(br.probability, 1.0 / 16.0, 1e-12);
        EXPECT_NEAR(fidelity_up_to_global_phase(br.state, want), 1.0, 1e-12);
      }
    }
  }
}

TEST(ECnot, RandomInputsAndOutcomeLabels) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto [a, b] = random_qubit_amplitudes(rng);
    const auto [c, d] = random_qubit_amplitudes(rng);
    const FockKet in = tensor(in_qubit(a, b), polarization_qubit("IN'", c, d));
    const GateResult r = e_cnot(in);
    EXPECT_NEAR(r.success_probability, 0.25, 1e-10);
    const FockKet want = cnot_expected({a * c, a * d, b * c, b * d});
    for (const auto& br : r.accepted_branches) {
      EXPECT_NEAR(br.probability, 1.0 / 16.0, 1e-10);
      EXPECT_GE(fidelity_up_to_global_phase(br.state, want), 1.0 - 1e-10);
    }
    EXPECT_EQ(r.accepted_branches[1].outcome, "D0,D1'");
    EXPECT_EQ(r.accepted_branches[3].corrections, (std::vector<int>{1, 1}));
  }
}

TEST(ECnot, RequiresExactRegister) {
  EXPECT_THROW(e_cnot(in_qubit(1, 0)), RegisterError);
}

TEST(TruthTable, GenericHelper) {
  std::vector<FockKet> basis;
  for (int b = 0; b < 2; ++b) basis.push_back(polarization_basis({"IN"}, {b}));
  const auto rows = gate_truth_table(
      [](const FockKet& k) { return quantum_parity_check(k, Polarization::H); }, basis);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(rows[0].output.has_value());
  EXPECT_NEAR(rows[0].probability, 1.0, 1e-12);
  EXPECT_FALSE(rows[1].output.has_value());
  EXPECT_NEAR(rows[1].probability, 0.0, 1e-12);
}
