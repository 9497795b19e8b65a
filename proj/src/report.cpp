#include "pgw/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include <json.hpp>

namespace pgw {

CheckRecord make_check(std::string id, std::string ref, double got, double want, double tol) {
  const bool ok = std::isfinite(got) && std::abs(got - want) <= tol;
  return {std::move(id), std::move(ref), ok, got, want, tol};
}

bool Report::pass() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

// Uniform in (0, 1] from the top 53 bits; independent of the standard
// library's distribution implementations so streams match across toolchains.
double uniform(Rng& rng) { return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53; }

}  // namespace

double standard_normal(Rng& rng) {
  const double u1 = uniform(rng);
  const double u2 = uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void write_text(std::ostream& os, const Report& r) {
  os << "suite: " << r.suite << "\n";
  os << "seed: " << r.seed << "\n";
  os << "trials: " << r.trials << "\n";
  std::size_t failed = 0;
  for (const auto& c : r.checks) {
    if (!c.passed) ++failed;
    os << (c.passed ? "PASS " : "FAIL ") << c.id << " [" << c.ref << "] got=" << num(c.got)
       << " want=" << num(c.want) << " tol=" << num(c.tol) << "\n";
  }
  os << "result: " << (failed == 0 ? "PASS" : "FAIL") << " (" << (r.checks.size() - failed) << "/"
     << r.checks.size() << " checks passed)\n";
}

std::string to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["id"] = c.id;
    cj["ref"] = c.ref;
    cj["status"] = c.passed ? "pass" : "fail";
    cj["got"] = std::isfinite(c.got) ? nlohmann::ordered_json(c.got) : nlohmann::ordered_json(nullptr);
    cj["want"] = c.want;
    cj["tol"] = c.tol;
    j["checks"].push_back(std::move(cj));
  }
  j["pass"] = r.pass();
  return j.dump(2) + "\n";
}

std::pair<Complex, Complex> random_qubit_amplitudes(Rng& rng) {
  const Complex a(standard_normal(rng), standard_normal(rng));
  const Complex b(standard_normal(rng), standard_normal(rng));
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return {a / n, b / n};
}

QubitState random_qubit_state(Rng& rng, const std::vector<std::string>& labels) {
  QubitState::Vector v(Eigen::Index{1} << labels.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(standard_normal(rng), standard_normal(rng));
  v /= v.norm();
  return QubitState(labels, std::move(v));
}

}  // namespace pgw
