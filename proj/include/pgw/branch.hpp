#pragma once

#include <string>
#include <vector>

namespace pgw {

/// One post-selected measurement outcome. `state` is the unnormalized
/// conditional state on the surviving modes or qubits, so `probability` is
/// its squared norm.
template <typename State>
struct BasicBranch {
  std::string outcome;
  std::vector<int> corrections;  // one feed-forward index j per measurement stage
  State state;
  double probability = 0.0;
};

template <typename State>
struct BasicGateResult {
  std::vector<BasicBranch<State>> accepted_branches;
  double success_probability = 0.0;
  double rejected_probability = 0.0;
  bool corrected_outputs_equal = false;
};

inline constexpr double kBranchEqualityTolerance = 1e-10;

/// Fills in the probability bookkeeping of a gate result. `input_norm2` is the
/// squared norm of the state the gate was applied to. Branches with zero
/// probability carry no state and are skipped by the equality diagnostic.
template <typename State>
void finalize(BasicGateResult<State>& result, double input_norm2) {
  double total = 0.0;
  for (const auto& b : result.accepted_branches) total += b.probability;
  result.success_probability = total;
  result.rejected_probability = input_norm2 - total;
  if (result.rejected_probability < 0.0 && result.rejected_probability > -1e-12) {
    result.rejected_probability = 0.0;
  }

  bool equal = true;
  const State* reference = nullptr;
  for (const auto& b : result.accepted_branches) {
    if (b.probability <= 1e-24) continue;
    if (reference == nullptr) {
      reference = &b.state;
      continue;
    }
    if (fidelity_up_to_global_phase(*reference, b.state) < 1.0 - kBranchEqualityTolerance) {
      equal = false;
      break;
    }
  }
  result.corrected_outputs_equal = equal && reference != nullptr;
}

}  // namespace pgw
