#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pgw/fock.hpp"
#include "pgw/optical_elements.hpp"
#include "pgw/qubit.hpp"
#include "pgw/report.hpp"

namespace pgw {

struct EncodingError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Mixed-basis dictionary between optical modes and logical qubits.
///
/// Input ports keep polarization encoding: one photon, H -> |0>, V -> |1>.
/// Each aux port A contributes two occupation-number qubits in the order
/// (A.V, A.H), so |H>_A = |0>_AV |1>_AH and |V>_A = |1>_AV |0>_AH. With that
/// order the diagonal single-photon states |+->_A become Psi+- on the pair.
struct MBEncoding {
  std::vector<std::string> input_ports;
  std::vector<std::string> aux_ports;

  /// Qubit register of the encoded state: inputs, then (V, H) per aux port.
  std::vector<std::string> qubit_labels() const;

  /// Optical register the encoding covers.
  Register optical_register() const;

  bool is_input(const std::string& port) const;
  bool is_aux(const std::string& port) const;

  static std::string occupation_label(const std::string& aux_port, Polarization p);
};

/// True when the term has one photon per input port and one photon spread
/// over the two modes of every aux port.
bool is_encodable(const FockKet& state, const OccupationVector& term, const MBEncoding& enc);

/// Drops every term outside the encodable subspace (post-selection onto it).
FockKet restrict_to_encodable(const FockKet& state, const MBEncoding& enc);

/// Isometric map into the qubit register; throws EncodingError when any term
/// lies outside the encodable subspace.
QubitState mb_encode(const FockKet& state, const MBEncoding& enc);

/// Left inverse of mb_encode; throws EncodingError when an aux pair has
/// support on |00> or |11>.
FockKet mb_decode(const QubitState& state, const MBEncoding& enc, int cutoff = FockKet::kDefaultCutoff);

/// Qubit-layer image of an optical element. A PBS between an input port and
/// an aux port becomes the parity filter on (input, aux.V); it is only valid
/// after restricting the optical output to the encodable subspace.
QubitOperator mb_image(const ElementSpec& element, const MBEncoding& enc);

std::vector<CheckRecord> verify_pbs_mb(Rng& rng, int trials);
std::vector<CheckRecord> verify_hwp_mb(Rng& rng, int trials);
std::vector<CheckRecord> verify_f_equals_tprime(Rng& rng, int trials, int cutoff = FockKet::kDefaultCutoff);
std::vector<CheckRecord> verify_aux_state_equivalence(int cutoff = FockKet::kDefaultCutoff);
std::vector<CheckRecord> verify_ecnot_equals_tcnot(Rng& rng, int trials, int cutoff = FockKet::kDefaultCutoff);
std::vector<CheckRecord> verify_encoding_isometry(Rng& rng, int trials);
std::vector<CheckRecord> verify_naturality(Rng& rng, int trials);

}  // namespace pgw
