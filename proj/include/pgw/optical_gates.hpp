#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgw/fock.hpp"

namespace pgw {

/// Port assignment of one F gate. The aux photon leaves through a 22.5
/// degree HWP and a polarization-resolving detector pair: `detector0` sees
/// the H mode of the aux port and leaves the Pockels cell off, `detector1`
/// sees the V mode and fires it.
struct FGateLayout {
  std::string input_port = "IN";
  std::string aux_port = "A";
  std::string detector0 = "D0";
  std::string detector1 = "D1";

  void validate() const;
};

inline constexpr double kHadamardPlateAngle = 22.5;

/// F gate: PBS(input, aux), HWP(aux, 22.5), detect exactly one photon on the
/// aux port, then Z on the input port when detector 1 fired. `joint` must hold
/// exactly one photon in each of the two ports in every term; other modes are
/// carried along untouched.
GateResult f_gate(const FockKet& joint, const FGateLayout& layout = {});

/// F gate with the aux photon prepared in H or V on `layout.aux_port`.
/// `input` lives on the input port only.
GateResult quantum_parity_check(const FockKet& input, Polarization aux,
                                const FGateLayout& layout = {});

/// HWP on target and aux, F gate, HWP on target. The aux polarization acts
/// as the control: H leaves the target alone, V flips it.
GateResult destructive_cnot(const FockKet& joint, const FGateLayout& layout = {"IN'", "A'", "D0'", "D1'"});

/// (|HH> + |VV>)/sqrt2 on ports A, A'.
FockKet phi_plus_aux(const std::string& a = "A", const std::string& a_prime = "A'",
                     int cutoff = FockKet::kDefaultCutoff);

/// Full erasure CNOT with control on IN and target on IN'. Adds the entangled
/// aux pair internally and returns the four feed-forward-corrected branches.
GateResult e_cnot(const FockKet& input);

/// Polarization-encoded input on the given ports; bits are H=0, V=1.
FockKet polarization_basis(const std::vector<std::string>& ports, const std::vector<int>& bits,
                           int cutoff = FockKet::kDefaultCutoff);

/// alpha|H> + beta|V> on one port.
FockKet polarization_qubit(const std::string& port, Complex alpha, Complex beta,
                           int cutoff = FockKet::kDefaultCutoff);

struct TruthRow {
  FockKet input;
  std::optional<FockKet> output;  // normalized corrected output, empty if never accepted
  double probability = 0.0;
  bool branches_agree = false;
};

using FockGate = std::function<GateResult(const FockKet&)>;

std::vector<TruthRow> gate_truth_table(const FockGate& gate, std::span<const FockKet> basis);

}  // namespace pgw
