#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pgw {

struct TruthTableRow {
  std::string input;
  std::string output;  // corrected output ket, global phase fixed
  double probability = 0.0;
  bool branches_agree = false;
};

struct TruthTable {
  std::string gate;
  std::vector<TruthTableRow> rows;
};

/// Gate names: e_cnot, d_cnot, f_gate, parity_check (optical) and
/// telegate_t, telegate_tp, cz2t, cnot_cz (teleportation layer).
const std::vector<std::string>& truth_table_gates();

/// Throws std::invalid_argument for an unknown gate.
TruthTable make_truth_table(const std::string& gate);

void write_text(std::ostream& os, const TruthTable& t);
std::string to_json(const TruthTable& t);

}  // namespace pgw
