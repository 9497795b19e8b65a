#pragma once

#include <array>
#include <string>

#include "pgw/qubit.hpp"

namespace pgw {

enum class BellFamily { Psi, Phi };
enum class BellSign { Plus, Minus };

struct BellLabel {
  BellFamily family = BellFamily::Psi;
  BellSign sign = BellSign::Plus;

  bool operator==(const BellLabel&) const = default;
};

inline constexpr BellLabel kPsiPlus{BellFamily::Psi, BellSign::Plus};
inline constexpr BellLabel kPsiMinus{BellFamily::Psi, BellSign::Minus};
inline constexpr BellLabel kPhiPlus{BellFamily::Phi, BellSign::Plus};
inline constexpr BellLabel kPhiMinus{BellFamily::Phi, BellSign::Minus};

std::string to_string(BellLabel b);

/// Psi+- = (|01> +- |10>)/sqrt2, Phi+- = (|00> +- |11>)/sqrt2 on (first, second).
QubitState bell_state(BellLabel label, const std::string& first = "A1", const std::string& second = "A2");

/// Partial Bell measurement: the two Psi outcomes are accepted and the pair
/// is removed; the Phi subspace is rejected and only its weight is kept.
struct PbmResult {
  std::array<QubitBranch, 2> accepted;  // [0] Psi+ (j = 0), [1] Psi- (j = 1)
  double rejected_probability = 0.0;
};

PbmResult pbm(const QubitState& state, const std::string& first, const std::string& second);

QubitState z_correction(const QubitState& state, const std::string& qubit, int j);

/// Unnormalized projection of the pair onto its even-parity subspace.
QubitState parity_filter(const QubitState& state, const std::string& first, const std::string& second);

enum class TelegateVariant {
  Swap,          // exchange the input qubit with the first aux qubit, then PBM on the aux pair
  ParityFilter,  // parity filter on (input, first aux), then PBM on the aux pair
};

std::string to_string(TelegateVariant v);

/// Teleports the single-qubit `input` through the two-qubit `aux` resource.
/// The corrected output keeps the input's label.
QubitGateResult telegate_t(const QubitState& input, const QubitState& aux,
                           TelegateVariant variant = TelegateVariant::Swap);

/// One telegate stage inside a larger register: consumes `aux1`, `aux2` and
/// leaves the corrected output on `input`.
QubitGateResult telegate_stage(const QubitState& joint, const std::string& input, const std::string& aux1,
                               const std::string& aux2, TelegateVariant variant);

/// (|0101> + |0110> + |1001> - |1010>)/2 on (a1, a2, b1, b2).
QubitState cz_resource_state(const std::string& a1 = "A1", const std::string& a2 = "A2",
                             const std::string& b1 = "A1'", const std::string& b2 = "A2'");

/// (I I + Z I + I Z - Z Z)/2 assembled from Pauli products.
QubitOperator cz_from_paulis(const std::string& a, const std::string& b);

/// Two telegates, one per input qubit. `input` is a two-qubit state and
/// `aux` a four-qubit resource whose first pair feeds the first input qubit.
QubitGateResult cz_via_two_telegates(const QubitState& input, const QubitState& aux,
                                     TelegateVariant variant = TelegateVariant::ParityFilter);

/// Hadamard on the target, two-telegate CZ with the standard resource,
/// Hadamard on the target.
QubitGateResult cnot_via_cz(const QubitState& input, TelegateVariant variant = TelegateVariant::ParityFilter);

}  // namespace pgw
