#include "pgw/suites.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include <Eigen/QR>

#include "pgw/mb_bridge.hpp"
#include "pgw/optical_elements.hpp"
#include "pgw/optical_gates.hpp"
#include "pgw/teleport.hpp"

namespace pgw {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"all", "optical", "teleport", "mb"};
  return names;
}

Eigen::MatrixXcd random_unitary(Rng& rng, Eigen::Index n) {
  Eigen::MatrixXcd z(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) z(r, c) = Complex(standard_normal(rng), standard_normal(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  // Fix the phases of R's diagonal so the distribution is Haar.
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Max {
  double value = 0.0;
  void operator()(double v) { value = std::max(value, v); }
};

struct Min {
  double value = 1.0;
  void operator()(double v) { value = std::min(value, v); }
};

// Runs one group of checks; an exception becomes a single failing record.
void guarded(Report& rep, const std::string& id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    rep.add(make_check(id + ".error", e.what(), kNaN, 0.0, 0.0));
  }
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

QubitState qubit1(const std::string& label, Complex a, Complex b) {
  QubitState::Vector v(2);
  v << a, b;
  return QubitState({label}, std::move(v));
}

// Random ket on ports IN, A, B (6 modes) with 1-3 photons per term.
FockKet random_ket(Rng& rng, int cutoff) {
  const Register reg = Register::from_ports({"IN", "A", "B"});
  FockKet::Terms t;
  const int terms = 1 + static_cast<int>(rng() % 4);
  for (int k = 0; k < terms; ++k) {
    const int photons = 1 + static_cast<int>(rng() % 3);
    OccupationVector occ(reg.size(), 0);
    for (int p = 0; p < photons; ++p) ++occ[rng() % reg.size()];
    t[occ] += Complex(standard_normal(rng), standard_normal(rng));
  }
  return FockKet(reg, std::move(t), cutoff).normalized();
}

// ---------------------------------------------------------------------------

void optical_suite(Report& rep, Rng& rng, int trials, int cutoff) {
  guarded(rep, "opt.elements", [&] {
    Eigen::Matrix2cd want;
    const Complex mi(0.0, -kInvSqrt2);
    want << mi, mi, mi, -mi;
    rep.add(make_check("opt.hwp.jones_22_5", "HWP at 22.5 deg with the -i factor",
                       (hwp_jones(22.5) - want).cwiseAbs().maxCoeff(), 0.0, 1e-14));
    const Register r1 = Register::from_ports({"A"});
    const FockKet v0 = apply_mode_transform(single_photon(V("A"), r1, cutoff), hwp("A", 0.0));
    rep.add(make_check("opt.hwp.theta0_v", "HWP at 0 deg maps V -> +iV",
                       std::abs(v0.amplitude({{V("A"), 1}}) - Complex(0.0, 1.0)), 0.0, 1e-14));

    const Register r2 = Register::from_ports({"A", "B"});
    const FockKet h_out = apply_mode_transform(single_photon(H("A"), r2, cutoff), pbs("A", "B"));
    const FockKet v_out = apply_mode_transform(single_photon(V("A"), r2, cutoff), pbs("A", "B"));
    rep.add(make_check("opt.pbs.transmit_h", "PBS transmits H",
                       max_abs_difference(h_out, single_photon(H("A"), r2, cutoff)), 0.0, 1e-15));
    rep.add(make_check("opt.pbs.reflect_v", "PBS reflects V",
                       max_abs_difference(v_out, single_photon(V("B"), r2, cutoff)), 0.0, 1e-15));

    Max unitarity;
    Max square;
    for (double theta : {0.0, 10.0, 22.5, 45.0, 67.5, 90.0, 133.0}) {
      const Eigen::MatrixXcd m = hwp("A", theta).matrix();
      unitarity((m.adjoint() * m - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff());
      square((m * m + Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff());
    }
    for (const auto& u : {pbs("A", "B"), pockels_z("A"), mode_swap(H("A"), V("B"))}) {
      const Eigen::MatrixXcd& m = u.matrix();
      unitarity((m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff());
    }
    rep.add(make_check("opt.elements.unitary", "every element is unitary", unitarity.value, 0.0, 1e-13));
    rep.add(make_check("opt.hwp.square_is_minus_identity", "HWP squared is -I", square.value, 0.0, 1e-13));
  });

  guarded(rep, "opt.fgate", [&] {
    Max parity_prob;
    Min parity_state;
    Max neutral_prob;
    Max branch_quarter;
    Max rejected_half;
    Min neutral_state;
    Min flip_state;
    auto run = [&](Complex a, Complex b) {
      const FockKet in = polarization_qubit("IN", a, b, cutoff);
      const Register r = in.reg();
      const GateResult ph = quantum_parity_check(in, Polarization::H);
      const GateResult pv = quantum_parity_check(in, Polarization::V);
      parity_prob(std::abs(ph.success_probability - std::norm(a)));
      parity_prob(std::abs(pv.success_probability - std::norm(b)));
      for (const auto& [res, m] : {std::pair{&ph, H("IN")}, std::pair{&pv, V("IN")}}) {
        for (const auto& br : res->accepted_branches) {
          if (br.probability > 1e-20) parity_state(fidelity_up_to_global_phase(br.state, single_photon(m, r, cutoff)));
        }
      }
      for (const int sign : {+1, -1}) {
        const FockKet aux = polarization_qubit("A", kInvSqrt2, sign * kInvSqrt2, cutoff);
        const GateResult g = f_gate(tensor(in, aux));
        neutral_prob(std::abs(g.success_probability - 0.5));
        rejected_half(std::abs(g.rejected_probability - 0.5));
        const FockKet want = polarization_qubit("IN", a, double(sign) * b, cutoff);
        for (const auto& br : g.accepted_branches) {
          branch_quarter(std::abs(br.probability - 0.25));
          (sign > 0 ? neutral_state : flip_state)(fidelity_up_to_global_phase(br.state, want));
        }
      }
    };
    run(0.6, Complex(0.0, 0.8));
    for (int t = 0; t < trials; ++t) {
      const auto [a, b] = random_qubit_amplitudes(rng);
      run(a, b);
    }
    rep.add(make_check("opt.fgate.parity_probability", "parity check passes |alpha|^2 or |beta|^2",
                       parity_prob.value, 0.0, 1e-10));
    rep.add(make_check("opt.fgate.parity_state", "parity check output matches aux polarization",
                       parity_state.value, 1.0, 1e-10));
    rep.add(make_check("opt.fgate.neutral_success", "F with |+-> aux succeeds with 1/2", neutral_prob.value, 0.0, 1e-10));
    rep.add(make_check("opt.fgate.branch_quarter", "each detector branch has weight 1/4", branch_quarter.value, 0.0,
                       1e-10));
    rep.add(make_check("opt.fgate.rejected_half", "rejected weight is 1/2", rejected_half.value, 0.0, 1e-10));
    rep.add(make_check("opt.fgate.neutral_state", "F with |+> aux is the identity", neutral_state.value, 1.0, 1e-10));
    rep.add(make_check("opt.fgate.phase_flip_state", "F with |-> aux flips the relative phase", flip_state.value, 1.0,
                       1e-10));
  });

  guarded(rep, "opt.dcnot", [&] {
    Max prob;
    Min state;
    auto run = [&](Complex g, Complex d) {
      const FockKet target = polarization_qubit("IN'", g, d, cutoff);
      for (const auto pol : {Polarization::H, Polarization::V}) {
        const FockKet aux = single_photon(mode("A'", pol), Register::from_ports({"A'"}), cutoff);
        const GateResult r = destructive_cnot(tensor(target, aux));
        prob(std::abs(r.success_probability - 0.5));
        const FockKet want = pol == Polarization::H ? target : polarization_qubit("IN'", d, g, cutoff);
        for (const auto& br : r.accepted_branches) state(fidelity_up_to_global_phase(br.state, want));
      }
    };
    run(1.0, 0.0);
    for (int t = 0; t < trials; ++t) {
      const auto [g, d] = random_qubit_amplitudes(rng);
      run(g, d);
    }
    rep.add(make_check("opt.dcnot.success", "destructive CNOT succeeds with 1/2", prob.value, 0.0, 1e-10));
    rep.add(make_check("opt.dcnot.state", "aux H: identity, aux V: bit flip", state.value, 1.0, 1e-10));
  });

  guarded(rep, "opt.ecnot", [&] {
    const int table[4][2] = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
    const char* names[4] = {"HH", "HV", "VH", "VV"};
    for (int row = 0; row < 4; ++row) {
      const int c = row / 2;
      const int t = row % 2;
      const GateResult r = e_cnot(polarization_basis({"IN", "IN'"}, {c, t}, cutoff));
      const FockKet want = polarization_basis({"IN", "IN'"}, {table[row][0], table[row][1]}, cutoff);
      Min f;
      for (const auto& br : r.accepted_branches) f(fidelity_up_to_global_phase(br.state, want));
      rep.add(make_check(std::string("opt.ecnot.truth.") + names[row], "CNOT truth table row", f.value, 1.0, 1e-10));
      rep.add(make_check(std::string("opt.ecnot.truth.") + names[row] + ".success", "E-CNOT succeeds with 1/4",
                         r.success_probability, 0.25, 1e-10));
    }
    Max prob;
    Max branch;
    Min fid;
    const MBEncoding inputs{{"IN", "IN'"}, {}};
    for (int t = 0; t < trials; ++t) {
      const QubitState q = random_qubit_state(rng, {"IN", "IN'"});
      const GateResult r = e_cnot(mb_decode(q, inputs, cutoff));
      const FockKet want = mb_decode(apply(gates::cnot("IN", "IN'"), q), inputs, cutoff);
      prob(std::abs(r.success_probability - 0.25));
      for (const auto& br : r.accepted_branches) {
        branch(std::abs(br.probability - 1.0 / 16.0));
        fid(fidelity_up_to_global_phase(br.state, want));
      }
    }
    if (trials > 0) {
      rep.add(make_check("opt.ecnot.random_success", "E-CNOT succeeds with 1/4", prob.value, 0.0, 1e-10));
      rep.add(make_check("opt.ecnot.random_branch", "each E-CNOT branch has weight 1/16", branch.value, 0.0, 1e-10));
      rep.add(make_check("opt.ecnot.random_fidelity", "E-CNOT equals CNOT on every branch", fid.value, 1.0, 1e-10));
    }
  });

  guarded(rep, "opt.fock", [&] {
    if (trials == 0) return;
    Max norm_gap;
    Max completeness;
    const Register reg = Register::from_ports({"IN", "A", "B"});
    for (int t = 0; t < trials; ++t) {
      const FockKet psi = random_ket(rng, cutoff);
      const ModeTransform u(reg.modes(), random_unitary(rng, static_cast<Eigen::Index>(reg.size())));
      norm_gap(std::abs(apply_mode_transform(psi, u).norm() - psi.norm()));
      double total = 0.0;
      for (const auto& b : enumerate_outcomes(psi, {H("A"), V("A"), V("B")})) total += b.probability;
      completeness(std::abs(total - psi.squared_norm()));
    }
    rep.add(make_check("opt.fock.norm_preservation", "unitary transforms preserve the norm", norm_gap.value, 0.0,
                       1e-11));
    rep.add(make_check("opt.fock.measurement_completeness", "outcome probabilities sum to the squared norm",
                       completeness.value, 0.0, 1e-11));
  });
}

// ---------------------------------------------------------------------------

void teleport_suite(Report& rep, Rng& rng, int trials) {
  guarded(rep, "tel.static", [&] {
    Max ortho;
    const BellLabel all[] = {kPsiPlus, kPsiMinus, kPhiPlus, kPhiMinus};
    for (const auto& a : all) {
      for (const auto& b : all) {
        const double want = a == b ? 1.0 : 0.0;
        ortho(std::abs(inner(bell_state(a), bell_state(b)) - want));
      }
    }
    rep.add(make_check("tel.bell.orthonormal", "Bell states are orthonormal", ortho.value, 0.0, 1e-15));
    rep.add(make_check("tel.cz.pauli_decomposition", "CZ = (II + ZI + IZ - ZZ)/2",
                       (cz_from_paulis("a", "b").matrix - gates::cz("a", "b").matrix).cwiseAbs().maxCoeff(), 0.0,
                       1e-14));
    const QubitOperator pf = gates::parity_filter("a", "b");
    rep.add(make_check("tel.parity_filter.projector", "parity filter is a projector",
                       pf.is_projector(1e-15) ? 0.0 : 1.0, 0.0, 0.0));
  });

  guarded(rep, "tel.telegate", [&] {
    Max success;
    Min state;
    Max variant_gap;
    auto run = [&](Complex a, Complex b) {
      const QubitState phi = qubit1("IN", a, b);
      for (const BellLabel aux : {kPsiPlus, kPsiMinus}) {
        const QubitState want = aux == kPsiPlus ? phi : apply(gates::pauli_z("IN"), phi);
        const QubitGateResult sw = telegate_t(phi, bell_state(aux), TelegateVariant::Swap);
        const QubitGateResult pf = telegate_t(phi, bell_state(aux), TelegateVariant::ParityFilter);
        for (const auto* r : {&sw, &pf}) {
          success(std::abs(r->success_probability - 0.5));
          for (const auto& br : r->accepted_branches) state(fidelity_up_to_global_phase(br.state, want));
        }
        for (std::size_t j = 0; j < 2; ++j) {
          variant_gap(max_abs_difference(sw.accepted_branches[j].state, pf.accepted_branches[j].state));
        }
      }
      // arbitrary resource inside span{Psi+, Psi-}
      const auto [c, d] = random_qubit_amplitudes(rng);
      const QubitState aux = bell_state(kPsiPlus).scaled(c) + bell_state(kPsiMinus).scaled(d);
      const QubitGateResult sw = telegate_t(phi, aux, TelegateVariant::Swap);
      const QubitGateResult pf = telegate_t(phi, aux, TelegateVariant::ParityFilter);
      for (std::size_t j = 0; j < 2; ++j) {
        variant_gap(max_abs_difference(sw.accepted_branches[j].state, pf.accepted_branches[j].state));
      }
    };
    run(0.6, Complex(0.0, 0.8));
    for (int t = 0; t < trials; ++t) {
      const auto [a, b] = random_qubit_amplitudes(rng);
      run(a, b);
    }
    rep.add(make_check("tel.telegate.success", "telegate succeeds with 1/2", success.value, 0.0, 1e-11));
    rep.add(make_check("tel.telegate.state", "Psi+ aux: identity, Psi- aux: Z", state.value, 1.0, 1e-11));
    rep.add(make_check("tel.telegate.variants_agree", "swap and parity-filter telegates agree", variant_gap.value,
                       0.0, 1e-12));
  });

  guarded(rep, "tel.two_telegates", [&] {
    Min rows;
    Min cz_fid;
    Max cz_prob;
    Max cz_branch;
    Min cnot_fid;
    Max cnot_prob;
    const std::vector<std::string> io{"IN", "IN'"};
    auto run = [&](const QubitState& q) {
      for (const BellLabel first : {kPsiPlus, kPsiMinus}) {
        for (const BellLabel second : {kPsiPlus, kPsiMinus}) {
          const QubitState aux = tensor(bell_state(first, "A1", "A2"), bell_state(second, "A1'", "A2'"));
          QubitState want = q;
          if (first == kPsiMinus) want = apply(gates::pauli_z("IN"), want);
          if (second == kPsiMinus) want = apply(gates::pauli_z("IN'"), want);
          const QubitGateResult r = cz_via_two_telegates(q, aux);
          for (const auto& br : r.accepted_branches) rows(fidelity_up_to_global_phase(br.state, want));
        }
      }
      const QubitGateResult cz = cz_via_two_telegates(q, cz_resource_state());
      const QubitState cz_want = apply(gates::cz("IN", "IN'"), q);
      cz_prob(std::abs(cz.success_probability - 0.25));
      for (const auto& br : cz.accepted_branches) {
        cz_branch(std::abs(br.probability - 1.0 / 16.0));
        cz_fid(fidelity_up_to_global_phase(br.state, cz_want));
      }
      const QubitGateResult cn = cnot_via_cz(q);
      const QubitState cn_want = apply(gates::cnot("IN", "IN'"), q);
      cnot_prob(std::abs(cn.success_probability - 0.25));
      for (const auto& br : cn.accepted_branches) cnot_fid(fidelity_up_to_global_phase(br.state, cn_want));
    };
    for (const char* bits : {"00", "01", "10", "11"}) run(QubitState::basis(io, bits));
    for (int t = 0; t < trials; ++t) run(random_qubit_state(rng, io));
    rep.add(make_check("tel.two_telegates.pauli_rows", "Bell-product resources give I/Z products", rows.value, 1.0,
                       1e-11));
    rep.add(make_check("tel.cz.success", "two-telegate CZ succeeds with 1/4", cz_prob.value, 0.0, 1e-10));
    rep.add(make_check("tel.cz.branch", "each CZ branch has weight 1/16", cz_branch.value, 0.0, 1e-10));
    rep.add(make_check("tel.cz.fidelity", "two-telegate CZ equals CZ", cz_fid.value, 1.0, 1e-10));
    rep.add(make_check("tel.cnot.success", "T-CNOT succeeds with 1/4", cnot_prob.value, 0.0, 1e-10));
    rep.add(make_check("tel.cnot.fidelity", "T-CNOT equals CNOT", cnot_fid.value, 1.0, 1e-10));
  });

  guarded(rep, "tel.pbm", [&] {
    if (trials == 0) return;
    Max gap;
    for (int t = 0; t < trials; ++t) {
      const QubitState s = random_qubit_state(rng, {"IN", "A1", "A2"}).scaled(0.8);
      const PbmResult m = pbm(s, "A1", "A2");
      gap(std::abs(m.accepted[0].probability + m.accepted[1].probability + m.rejected_probability - s.squared_norm()));
    }
    rep.add(make_check("tel.pbm.completeness", "accepted plus rejected weight equals the squared norm", gap.value, 0.0,
                       1e-11));
  });
}

// ---------------------------------------------------------------------------

void mb_suite(Report& rep, Rng& rng, int trials, int cutoff) {
  guarded(rep, "mb.dictionary", [&] {
    const MBEncoding enc{{}, {"A"}};
    const Register reg = enc.optical_register();
    const std::vector<std::string> pair{"AV", "AH"};
    rep.add(make_check("mb.encode.h", "|H>_A = |0>_AV |1>_AH",
                       max_abs_difference(mb_encode(single_photon(H("A"), reg, cutoff), enc),
                                          QubitState::basis(pair, "01")),
                       0.0, 0.0));
    rep.add(make_check("mb.encode.v", "|V>_A = |1>_AV |0>_AH",
                       max_abs_difference(mb_encode(single_photon(V("A"), reg, cutoff), enc),
                                          QubitState::basis(pair, "10")),
                       0.0, 0.0));
    rep.add(make_check("mb.encode.plus", "|+>_A is Psi+ on (AV, AH)",
                       max_abs_difference(mb_encode(polarization_qubit("A", kInvSqrt2, kInvSqrt2, cutoff), enc),
                                          bell_state(kPsiPlus, "AV", "AH")),
                       0.0, 1e-15));
    rep.add(make_check("mb.encode.minus", "|->_A is Psi- on (AV, AH)",
                       max_abs_difference(mb_encode(polarization_qubit("A", kInvSqrt2, -kInvSqrt2, cutoff), enc),
                                          bell_state(kPsiMinus, "AV", "AH")),
                       0.0, 1e-15));
  });
  guarded(rep, "mb.pbs", [&] { rep.append(verify_pbs_mb(rng, trials)); });
  guarded(rep, "mb.hwp", [&] { rep.append(verify_hwp_mb(rng, trials)); });
  guarded(rep, "mb.f_tprime", [&] { rep.append(verify_f_equals_tprime(rng, trials, cutoff)); });
  guarded(rep, "mb.aux", [&] { rep.append(verify_aux_state_equivalence(cutoff)); });
  guarded(rep, "mb.e2e", [&] { rep.append(verify_ecnot_equals_tcnot(rng, trials, cutoff)); });
  guarded(rep, "mb.encode", [&] { rep.append(verify_encoding_isometry(rng, trials)); });
  guarded(rep, "mb.naturality", [&] { rep.append(verify_naturality(rng, trials)); });
}

}  // namespace

Report run_suite(const SuiteOptions& opts) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), opts.suite) == names.end()) {
    throw std::invalid_argument("unknown suite '" + opts.suite + "'");
  }
  if (opts.trials < 0) throw std::invalid_argument("trials must be non-negative");
  Report rep;
  rep.suite = opts.suite;
  rep.seed = opts.seed;
  rep.trials = opts.trials;
  Rng rng(opts.seed);
  const bool all = opts.suite == "all";
  if (all || opts.suite == "optical") optical_suite(rep, rng, opts.trials, opts.cutoff);
  if (all || opts.suite == "teleport") teleport_suite(rep, rng, opts.trials);
  if (all || opts.suite == "mb") mb_suite(rep, rng, opts.trials, opts.cutoff);
  return rep;
}

}  // namespace pgw
