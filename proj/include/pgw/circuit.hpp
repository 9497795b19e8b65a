#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgw/fock.hpp"
#include "pgw/optical_elements.hpp"

namespace pgw {

/// Circuit-file syntax error carrying a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A step of the circuit: a passive element or a named composite gate
/// (f_gate, parity_check, d_cnot, e_cnot) acting on the listed ports.
struct CircuitStep {
  std::optional<ElementSpec> element;
  std::string gate;
  std::vector<std::string> gate_ports;
};

struct CircuitTerm {
  Complex amplitude;
  std::map<ModeId, int> counts;
};

/// Line-oriented circuit description, `pgw-circuit v1`:
///
///   pgw-circuit v1
///   ports IN A
///   cutoff 4
///   term 0.7071067811865476,0 IN.H A.H
///   element pbs IN A
///   element hwp A 22.5
///   gate f_gate IN A
///   accept D0 A.H=1 A.V=0
///   correct D1 pc IN
///   post hwp IN 22.5
///
/// `term` adds a basis ket (MODE or MODE=count) with a `re,im` amplitude.
/// Steps run in file order. Each `accept` pattern branches every state; the
/// `correct` elements of that label run on the branch, then every `post`
/// element runs on every accepted branch. `#` starts a comment.
struct CircuitFile {
  std::vector<std::string> ports;
  int cutoff = FockKet::kDefaultCutoff;
  std::vector<CircuitTerm> terms;
  std::vector<CircuitStep> steps;
  std::vector<DetectionPattern> accepts;
  std::map<std::string, std::vector<ElementSpec>> corrections;
  std::vector<ElementSpec> post;

  Register reg() const { return Register::from_ports(ports); }
  FockKet initial_state(std::optional<int> cutoff_override = std::nullopt) const;
};

CircuitFile parse_circuit(std::istream& in, const std::string& source = "<input>");
CircuitFile load_circuit(const std::string& path);

GateResult simulate(const CircuitFile& circuit, std::optional<int> cutoff_override = std::nullopt);

/// Branch table: outcome, corrections, probability and the normalized
/// conditional state, amplitudes printed with 15 significant digits.
void write_branch_table(std::ostream& os, const GateResult& result);

/// `(re,im)|IN.H=1 A.V=1>` terms joined by " + ".
std::string format_ket(const FockKet& k);

}  // namespace pgw
