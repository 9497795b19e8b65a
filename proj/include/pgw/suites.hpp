#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pgw/report.hpp"

namespace pgw {

struct SuiteOptions {
  std::string suite = "all";  // all | optical | teleport | mb
  std::uint64_t seed = 1;
  int trials = 200;
  int cutoff = FockKet::kDefaultCutoff;
};

const std::vector<std::string>& suite_names();

/// Runs the named suite with one generator seeded from `opts.seed`. For
/// `all` the optical, teleport and mb suites run in that order on the same
/// generator; inside a suite checks are drawn in a fixed order.
Report run_suite(const SuiteOptions& opts);

/// Random unitary via QR of a complex Gaussian matrix.
Eigen::MatrixXcd random_unitary(Rng& rng, Eigen::Index n);

}  // namespace pgw
