#include <cmath>

#include <gtest/gtest.h>

#include "pgw/mb_bridge.hpp"
#include "pgw/optical_gates.hpp"
#include "pgw/teleport.hpp"

using namespace pgw;

namespace {

const double kS = 1.0 / std::sqrt(2.0);
const Complex kI(0, 1);

const MBEncoding kOne{{"IN"}, {"A"}};

QubitState vec(std::vector<std::string> labels, std::initializer_list<std::pair<int, Complex>> entries) {
  QubitState::Vector v = QubitState::Vector::Zero(Eigen::Index{1} << labels.size());
  for (const auto& [i, a] : entries) v(i) = a;
  return QubitState(std::move(labels), v);
}

void expect_all_pass(const std::vector<CheckRecord>& checks) {
  ASSERT_FALSE(checks.empty());
  for (const auto& c : checks) {
    EXPECT_TRUE(c.passed) << c.id << " got=" << c.got << " want=" << c.want << " tol=" << c.tol;
  }
}

}  // namespace

TEST(Encoding, Dictionary) {
  const MBEncoding aux_only{{}, {"A"}};
  const Register r = Register::from_ports({"A"});
  EXPECT_EQ(aux_only.qubit_labels(), (std::vector<std::string>{"AV", "AH"}));
  const QubitState h = mb_encode(single_photon(H("A"), r), aux_only);
  const QubitState v = mb_encode(single_photon(V("A"), r), aux_only);
  EXPECT_LE(max_abs_difference(h, vec({"AV", "AH"}, {{1, 1.0}})), 0.0);
  EXPECT_LE(max_abs_difference(v, vec({"AV", "AH"}, {{2, 1.0}})), 0.0);
  const QubitState plus = mb_encode(polarization_qubit("A", kS, kS), aux_only);
  const QubitState minus = mb_encode(polarization_qubit("A", kS, -kS), aux_only);
  EXPECT_LE(max_abs_difference(plus, bell_state(kPsiPlus, "AV", "AH")), 1e-15);
  EXPECT_LE(max_abs_difference(minus, bell_state(kPsiMinus, "AV", "AH")), 1e-15);
}

TEST(Encoding, InputPortsUsePolarization) {
  const MBEncoding in_only{{"IN", "IN'"}, {}};
  const QubitState q = mb_encode(polarization_basis({"IN", "IN'"}, {1, 0}), in_only);
  EXPECT_LE(max_abs_difference(q, QubitState::basis({"IN", "IN'"}, "10")), 0.0);
}

TEST(Encoding, RoundTripAndDomainErrors) {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto [a, b] = random_qubit_amplitudes(rng);
    const auto [c, d] = random_qubit_amplitudes(rng);
    const FockKet s = tensor(polarization_qubit("IN", a, b), polarization_qubit("A", c, d));
    EXPECT_LE(max_abs_difference(mb_decode(mb_encode(s, kOne), kOne), s), 1e-15);
  }
  const FockKet two_in_aux = FockKet::basis(kOne.optical_register(), {0, 0, 1, 1});
  EXPECT_THROW(mb_encode(two_in_aux, kOne), EncodingError);
  EXPECT_FALSE(is_encodable(two_in_aux, two_in_aux.terms().begin()->first, kOne));
  EXPECT_THROW(mb_decode(QubitState::basis({"IN", "AV", "AH"}, "000"), kOne), EncodingError);
  EXPECT_THROW(mb_encode(polarization_qubit("IN", 1, 0), kOne), EncodingError);
}

TEST(Image, PbsIsParityFilterAfterRestriction) {
  // aA |H_IN H_A> and bB |V_IN V_A> are the only one-photon-per-port terms
  // after the PBS; on (IN, AV, AH) they are |001> and |110>.
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto [a, b] = random_qubit_amplitudes(rng);
    const auto [A, B] = random_qubit_amplitudes(rng);
    const FockKet s = tensor(polarization_qubit("IN", a, b), polarization_qubit("A", A, B));
    const FockKet out = restrict_to_encodable(apply_mode_transform(s, pbs("IN", "A")), kOne);
    const QubitState want = vec({"IN", "AV", "AH"}, {{1, a * A}, {6, b * B}});
    EXPECT_LE(max_abs_difference(mb_encode(out, kOne), want), 1e-12);
    const QubitState via_image = apply(mb_image(ElementSpec::make_pbs("IN", "A"), kOne), mb_encode(s, kOne));
    EXPECT_LE(max_abs_difference(via_image, want), 1e-12);
  }
}

TEST(Image, AuxHalfWavePlateMapsToBellStates) {
  const MBEncoding aux_only{{}, {"A"}};
  const QubitOperator u = mb_image(ElementSpec::make_hwp("A", 22.5), aux_only);
  EXPECT_TRUE(u.is_unitary());
  const QubitState h = apply(u, vec({"AV", "AH"}, {{1, 1.0}}));
  const QubitState v = apply(u, vec({"AV", "AH"}, {{2, 1.0}}));
  EXPECT_LE(max_abs_difference(h, bell_state(kPsiPlus, "AV", "AH").scaled(-kI)), 1e-15);
  EXPECT_LE(max_abs_difference(v, bell_state(kPsiMinus, "AV", "AH").scaled(-kI)), 1e-15);
}

TEST(Image, RejectsUnmappableElements) {
  const MBEncoding two_inputs{{"IN", "IN'"}, {}};
  EXPECT_THROW(mb_image(ElementSpec::make_pbs("IN", "IN'"), two_inputs), EncodingError);
  EXPECT_THROW(mb_image(ElementSpec::make_swap(H("IN"), V("IN")), two_inputs), EncodingError);
  EXPECT_THROW(mb_image(ElementSpec::make_hwp("X", 22.5), two_inputs), EncodingError);
}

TEST(Equivalence, FGateBranchesMatchParityFilterTelegate) {
  // Optical branch: -i/sqrt2 (ac|H> + bd|V>). T' branch with aux c|01> + d|10>:
  // PF keeps ac|0,01> + bd|1,10>, <Psi+-| leaves (ac|0> +- bd|1>)/sqrt2, Z fixes j=1.
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const auto [a, b] = random_qubit_amplitudes(rng);
    const auto [c, d] = random_qubit_amplitudes(rng);
    const FockKet joint = tensor(polarization_qubit("IN", a, b), polarization_qubit("A", c, d));
    const GateResult optical = f_gate(joint);
    const QubitState enc = mb_encode(joint, kOne);
    const QubitGateResult tele = telegate_stage(enc, "IN", "AV", "AH", TelegateVariant::ParityFilter);
    const QubitState want = vec({"IN"}, {{0, a * c * kS}, {1, b * d * kS}});
    for (std::size_t j = 0; j < 2; ++j) {
      const QubitState o = mb_encode(optical.accepted_branches[j].state, MBEncoding{{"IN"}, {}});
      EXPECT_LE(max_abs_difference(o, want.scaled(-kI)), 1e-13);
      EXPECT_LE(max_abs_difference(tele.accepted_branches[j].state, want), 1e-13);
      EXPECT_NEAR(optical.accepted_branches[j].probability, tele.accepted_branches[j].probability, 1e-13);
    }
  }
}

TEST(Equivalence, AuxResourceEncodesToCzResource) {
  // (I x HWP)(|HH> + |VV>)/sqrt2 = -i/2 (|HH> + |HV> + |VH> - |VV>), and
  // HH, HV, VH, VV encode to 0101, 0110, 1001, 1010 on (AV, AH, A'V, A'H).
  const MBEncoding aux{{}, {"A", "A'"}};
  const FockKet s = apply_mode_transform(phi_plus_aux(), hwp("A'", 22.5));
  const QubitState got = mb_encode(s, aux);
  const QubitState want = vec({"AV", "AH", "A'V", "A'H"},
                              {{0b0101, -0.5 * kI}, {0b0110, -0.5 * kI}, {0b1001, -0.5 * kI}, {0b1010, 0.5 * kI}});
  EXPECT_LE(max_abs_difference(got, want), 1e-15);
  EXPECT_NEAR(fidelity_up_to_global_phase(got, cz_resource_state("AV", "AH", "A'V", "A'H")), 1.0, 1e-12);
}

TEST(Verify, AllGroupsPass) {
  Rng rng(7);
  expect_all_pass(verify_pbs_mb(rng, 50));
  expect_all_pass(verify_hwp_mb(rng, 50));
  expect_all_pass(verify_f_equals_tprime(rng, 50));
  expect_all_pass(verify_aux_state_equivalence());
  expect_all_pass(verify_ecnot_equals_tcnot(rng, 30));
  expect_all_pass(verify_encoding_isometry(rng, 50));
  expect_all_pass(verify_naturality(rng, 50));
}

TEST(Verify, ZeroTrialsStillReportsDeterministicChecks) {
  Rng rng(7);
  expect_all_pass(verify_aux_state_equivalence());
  for (const auto& c : verify_pbs_mb(rng, 0)) EXPECT_TRUE(c.passed) << c.id;
}
