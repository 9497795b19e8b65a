#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "pgw/fock.hpp"
#include "pgw/qubit.hpp"

namespace pgw {

/// One verification check: passes iff |got - want| <= tol.
struct CheckRecord {
  std::string id;
  std::string ref;
  bool passed = false;
  double got = 0.0;
  double want = 0.0;
  double tol = 0.0;
};

CheckRecord make_check(std::string id, std::string ref, double got, double want, double tol);

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<CheckRecord> checks;

  bool pass() const;
  void add(CheckRecord c) { checks.push_back(std::move(c)); }
  void append(const std::vector<CheckRecord>& more) { checks.insert(checks.end(), more.begin(), more.end()); }
};

/// Plain-text report: header lines, one line per check, overall verdict.
void write_text(std::ostream& os, const Report& r);

/// {suite, seed, checks:[{id, ref, status, got, want, tol}], pass}
std::string to_json(const Report& r);

using Rng = std::mt19937_64;

/// Standard normal deviate (Box-Muller on 53-bit uniforms).
double standard_normal(Rng& rng);

/// Random normalized amplitude pair, complex Gaussian then normalized.
std::pair<Complex, Complex> random_qubit_amplitudes(Rng& rng);

QubitState random_qubit_state(Rng& rng, const std::vector<std::string>& labels);

}  // namespace pgw
