#include "pgw/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pgw/optical_gates.hpp"

namespace pgw {

ParseError::ParseError(const std::string& source, int line, int column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

constexpr const char* kHeader = "pgw-circuit v1";

struct Token {
  std::string text;
  int column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

class LineParser {
 public:
  LineParser(const std::string& source, int line) : source_(source), line_(line) {}

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(source_, line_, t.column, msg);
  }

  double number(const Token& t) const {
    try {
      std::size_t used = 0;
      const double v = std::stod(t.text, &used);
      if (used != t.text.size() || !std::isfinite(v)) fail(t, "malformed number '" + t.text + "'");
      return v;
    } catch (const std::logic_error&) {
      fail(t, "malformed number '" + t.text + "'");
    }
  }

  int count(const Token& t, const std::string& text) const {
    try {
      std::size_t used = 0;
      const int v = std::stoi(text, &used);
      if (used != text.size() || v < 0) fail(t, "photon count must be a non-negative integer");
      return v;
    } catch (const std::logic_error&) {
      fail(t, "photon count must be a non-negative integer");
    }
  }

  Complex amplitude(const Token& t) const {
    const auto comma = t.text.find(',');
    if (comma == std::string::npos) fail(t, "amplitude must be written re,im");
    return {number({t.text.substr(0, comma), t.column}),
            number({t.text.substr(comma + 1), t.column + static_cast<int>(comma) + 1})};
  }

  ModeId mode(const Token& t, const std::string& text) const {
    try {
      return parse_mode(text);
    } catch (const RegisterError& e) {
      fail(t, e.what());
    }
  }

  std::pair<ModeId, int> mode_count(const Token& t, bool default_one) const {
    const auto eq = t.text.find('=');
    if (eq == std::string::npos) {
      if (!default_one) fail(t, "expected MODE=count");
      return {mode(t, t.text), 1};
    }
    return {mode(t, t.text.substr(0, eq)), count(t, t.text.substr(eq + 1))};
  }

  ElementSpec element(const std::vector<Token>& toks, std::size_t first) const {
    const Token& kind = toks[first];
    const std::size_t nargs = toks.size() - first - 1;
    auto arg = [&](std::size_t i) -> const std::string& { return toks[first + 1 + i].text; };
    if (kind.text == "pbs") {
      if (nargs != 2) fail(kind, "pbs takes two ports");
      if (arg(0) == arg(1)) fail(toks[first + 2], "pbs ports must differ");
      return ElementSpec::make_pbs(arg(0), arg(1));
    }
    if (kind.text == "hwp") {
      if (nargs != 2) fail(kind, "hwp takes a port and an angle in degrees");
      return ElementSpec::make_hwp(arg(0), number(toks[first + 2]));
    }
    if (kind.text == "pc") {
      if (nargs != 1) fail(kind, "pc takes one port");
      return ElementSpec::make_pc(arg(0));
    }
    if (kind.text == "swap") {
      if (nargs != 2) fail(kind, "swap takes two modes");
      const ModeId a = mode(toks[first + 1], arg(0));
      const ModeId b = mode(toks[first + 2], arg(1));
      if (a == b) fail(toks[first + 2], "swap modes must differ");
      return ElementSpec::make_swap(a, b);
    }
    fail(kind, "unknown element '" + kind.text + "'");
  }

 private:
  const std::string& source_;
  int line_;
};

void check_ports(const CircuitFile& c, const ElementSpec& e, const LineParser& p, const Token& where) {
  const Register reg = c.reg();
  for (const auto& port : e.ports) {
    if (!reg.has_port(port)) p.fail(where, "unknown port '" + port + "'");
  }
  for (const auto& m : e.modes) {
    if (!reg.contains(m)) p.fail(where, "unknown mode '" + to_string(m) + "'");
  }
}

const std::vector<std::string> kGates{"f_gate", "parity_check", "d_cnot", "e_cnot"};

}  // namespace

CircuitFile parse_circuit(std::istream& in, const std::string& source) {
  CircuitFile c;
  std::string line;
  int lineno = 0;
  bool header = false;
  bool have_ports = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const LineParser p(source, lineno);
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (!header) {
      if (toks.size() != 2 || toks[0].text + " " + toks[1].text != kHeader) {
        p.fail(toks[0], std::string("expected header '") + kHeader + "'");
      }
      header = true;
      continue;
    }
    const Token& kw = toks[0];
    if (kw.text != "ports" && !have_ports) p.fail(kw, "'ports' must come before '" + kw.text + "'");

    if (kw.text == "ports") {
      if (have_ports) p.fail(kw, "duplicate 'ports' line");
      if (toks.size() < 2) p.fail(kw, "'ports' needs at least one label");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        for (const auto& existing : c.ports) {
          if (existing == toks[i].text) p.fail(toks[i], "duplicate port '" + toks[i].text + "'");
        }
        c.ports.push_back(toks[i].text);
      }
      have_ports = true;
    } else if (kw.text == "cutoff") {
      if (toks.size() != 2) p.fail(kw, "'cutoff' takes one integer");
      c.cutoff = p.count(toks[1], toks[1].text);
    } else if (kw.text == "term") {
      if (toks.size() < 3) p.fail(kw, "'term' needs an amplitude and at least one mode");
      CircuitTerm t{p.amplitude(toks[1]), {}};
      for (std::size_t i = 2; i < toks.size(); ++i) {
        auto [m, n] = p.mode_count(toks[i], true);
        if (!c.reg().contains(m)) p.fail(toks[i], "unknown mode '" + to_string(m) + "'");
        if (t.counts.contains(m)) p.fail(toks[i], "mode listed twice");
        t.counts[m] = n;
      }
      c.terms.push_back(std::move(t));
    } else if (kw.text == "element") {
      if (toks.size() < 2) p.fail(kw, "'element' needs a kind");
      ElementSpec e = p.element(toks, 1);
      check_ports(c, e, p, toks[1]);
      c.steps.push_back({std::move(e), {}, {}});
    } else if (kw.text == "gate") {
      if (toks.size() != 4) p.fail(kw, "'gate' takes a name and two ports");
      if (std::find(kGates.begin(), kGates.end(), toks[1].text) == kGates.end()) {
        p.fail(toks[1], "unknown gate '" + toks[1].text + "'");
      }
      for (std::size_t i = 2; i < 4; ++i) {
        if (!c.reg().has_port(toks[i].text) && toks[1].text != "e_cnot") {
          p.fail(toks[i], "unknown port '" + toks[i].text + "'");
        }
      }
      c.steps.push_back({std::nullopt, toks[1].text, {toks[2].text, toks[3].text}});
    } else if (kw.text == "accept") {
      if (toks.size() < 3) p.fail(kw, "'accept' needs a label and at least one MODE=count");
      std::map<ModeId, int> req;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        auto [m, n] = p.mode_count(toks[i], false);
        if (req.contains(m)) p.fail(toks[i], "mode listed twice");
        req[m] = n;
      }
      for (const auto& a : c.accepts) {
        if (a.label == toks[1].text) p.fail(toks[1], "duplicate accept label '" + toks[1].text + "'");
      }
      c.accepts.emplace_back(toks[1].text, std::move(req));
    } else if (kw.text == "correct") {
      if (toks.size() < 3) p.fail(kw, "'correct' needs a label and an element");
      ElementSpec e = p.element(toks, 2);
      check_ports(c, e, p, toks[2]);
      c.corrections[toks[1].text].push_back(std::move(e));
    } else if (kw.text == "post") {
      if (toks.size() < 2) p.fail(kw, "'post' needs an element");
      ElementSpec e = p.element(toks, 1);
      check_ports(c, e, p, toks[1]);
      c.post.push_back(std::move(e));
    } else {
      p.fail(kw, "unknown keyword '" + kw.text + "'");
    }
  }
  if (!header) throw ParseError(source, lineno == 0 ? 1 : lineno, 1, std::string("missing header '") + kHeader + "'");
  if (!have_ports) throw ParseError(source, lineno, 1, "missing 'ports' line");
  if (c.terms.empty()) throw ParseError(source, lineno, 1, "no 'term' lines: initial state is empty");
  for (const auto& [label, elems] : c.corrections) {
    const bool known = std::any_of(c.accepts.begin(), c.accepts.end(),
                                   [&](const DetectionPattern& a) { return a.label == label; });
    if (!known) throw ParseError(source, lineno, 1, "correction for undeclared accept label '" + label + "'");
  }
  return c;
}

CircuitFile load_circuit(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open circuit file '" + path + "'");
  return parse_circuit(f, path);
}

FockKet CircuitFile::initial_state(std::optional<int> cutoff_override) const {
  const Register r = reg();
  const int k = cutoff_override.value_or(cutoff);
  FockKet::Terms t;
  for (const auto& term : terms) {
    OccupationVector occ(r.size(), 0);
    for (const auto& [m, n] : term.counts) occ[r.index_of(m)] = n;
    t[occ] += term.amplitude;
  }
  return FockKet(r, std::move(t), k);
}

namespace {

GateResult run_gate(const std::string& name, const std::vector<std::string>& ports, const FockKet& s) {
  const FGateLayout layout{ports[0], ports[1], "D0", "D1"};
  if (name == "f_gate" || name == "parity_check") return f_gate(s, layout);
  if (name == "d_cnot") return destructive_cnot(s, layout);
  if (name == "e_cnot") {
    if (ports[0] != "IN" || ports[1] != "IN'") throw std::invalid_argument("e_cnot acts on ports IN IN'");
    return e_cnot(s);
  }
  throw std::invalid_argument("unknown gate '" + name + "'");
}

std::string join(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  return a + "," + b;
}

std::string num15(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

GateResult simulate(const CircuitFile& circuit, std::optional<int> cutoff_override) {
  const FockKet initial = circuit.initial_state(cutoff_override);
  std::vector<Branch> branches{{"", {}, initial, initial.squared_norm()}};

  for (const auto& step : circuit.steps) {
    std::vector<Branch> next;
    for (auto& b : branches) {
      if (step.element) {
        b.state = apply_mode_transform(b.state, to_transform(*step.element));
        b.probability = b.state.squared_norm();
        next.push_back(std::move(b));
        continue;
      }
      const GateResult g = run_gate(step.gate, step.gate_ports, b.state);
      for (const auto& gb : g.accepted_branches) {
        Branch nb{join(b.outcome, gb.outcome), b.corrections, gb.state, gb.probability};
        nb.corrections.insert(nb.corrections.end(), gb.corrections.begin(), gb.corrections.end());
        next.push_back(std::move(nb));
      }
    }
    branches = std::move(next);
  }

  if (!circuit.accepts.empty()) {
    std::vector<Branch> next;
    for (const auto& b : branches) {
      for (std::size_t idx = 0; idx < circuit.accepts.size(); ++idx) {
        const DetectionPattern& pattern = circuit.accepts[idx];
        Branch m = measure_and_postselect(b.state, pattern);
        m.outcome = join(b.outcome, pattern.label);
        m.corrections = b.corrections;
        const auto it = circuit.corrections.find(pattern.label);
        m.corrections.push_back(static_cast<int>(idx));
        if (it != circuit.corrections.end()) {
          for (const auto& e : it->second) m.state = apply_mode_transform(m.state, to_transform(e));
        }
        next.push_back(std::move(m));
      }
    }
    branches = std::move(next);
  }
  for (auto& b : branches) {
    for (const auto& e : circuit.post) b.state = apply_mode_transform(b.state, to_transform(e));
    b.probability = b.state.squared_norm();
  }

  GateResult r;
  r.accepted_branches = std::move(branches);
  finalize(r, initial.squared_norm());
  return r;
}

std::string format_ket(const FockKet& k) {
  if (k.is_zero()) return "0";
  std::string out;
  for (const auto& [occ, amp] : k.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + num15(amp.real()) + "," + num15(amp.imag()) + ")|";
    bool first = true;
    for (std::size_t i = 0; i < occ.size(); ++i) {
      if (occ[i] == 0) continue;
      if (!first) out += ' ';
      out += to_string(k.reg().mode(i)) + "=" + std::to_string(occ[i]);
      first = false;
    }
    if (first) out += "vac";
    out += ">";
  }
  return out;
}

void write_branch_table(std::ostream& os, const GateResult& r) {
  os << "branches: " << r.accepted_branches.size() << "\n";
  for (const auto& b : r.accepted_branches) {
    os << "branch " << (b.outcome.empty() ? "-" : b.outcome) << " j=";
    if (b.corrections.empty()) os << "-";
    for (std::size_t i = 0; i < b.corrections.size(); ++i) os << (i ? "," : "") << b.corrections[i];
    os << " probability=" << num15(b.probability) << "\n";
    os << "  state: " << (b.probability > 0.0 ? format_ket(b.state.normalized()) : std::string("0")) << "\n";
  }
  os << "success_probability: " << num15(r.success_probability) << "\n";
  os << "rejected_probability: " << num15(r.rejected_probability) << "\n";
  os << "corrected_outputs_equal: " << (r.corrected_outputs_equal ? "yes" : "no") << "\n";
}

}  // namespace pgw
