#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pgw/branch.hpp"

namespace pgw {

using Complex = std::complex<double>;

struct RegisterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CutoffError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Polarization { H = 0, V = 1 };

/// A single optical mode: a spatial path together with a polarization.
struct ModeId {
  std::string spatial;
  Polarization pol = Polarization::H;

  auto operator<=>(const ModeId&) const = default;
  bool operator==(const ModeId&) const = default;
};

inline ModeId mode(std::string spatial, Polarization pol) { return {std::move(spatial), pol}; }
inline ModeId H(std::string spatial) { return {std::move(spatial), Polarization::H}; }
inline ModeId V(std::string spatial) { return {std::move(spatial), Polarization::V}; }

std::string to_string(const ModeId& m);
std::string to_string(Polarization p);

/// Parses `LABEL.H` / `LABEL.V`.
ModeId parse_mode(std::string_view text);

/// Ordered set of modes. The flat index of a mode is its position after
/// sorting by (spatial label, H before V); two registers declared with the
/// same modes therefore agree on every index.
class Register {
 public:
  Register() = default;
  explicit Register(std::vector<ModeId> modes);

  /// Both polarizations of every listed spatial port.
  static Register from_ports(const std::vector<std::string>& ports);

  std::size_t size() const { return modes_.size(); }
  const std::vector<ModeId>& modes() const { return modes_; }
  const ModeId& mode(std::size_t i) const { return modes_.at(i); }

  std::optional<std::size_t> find(const ModeId& m) const;
  std::size_t index_of(const ModeId& m) const;
  bool contains(const ModeId& m) const { return find(m).has_value(); }
  bool has_port(std::string_view spatial) const;

  Register without(const std::set<ModeId>& removed) const;

  bool operator==(const Register&) const = default;

 private:
  std::vector<ModeId> modes_;
};

using OccupationVector = std::vector<int>;

/// Sparse multimode Fock state. Amplitudes below the pruning threshold are
/// dropped on construction; the ket is not normalized automatically.
class FockKet {
 public:
  using Terms = std::map<OccupationVector, Complex>;

  static constexpr double kPruneThreshold = 1e-14;
  static constexpr int kDefaultCutoff = 4;

  FockKet() = default;
  explicit FockKet(Register reg, Terms terms = {}, int cutoff = kDefaultCutoff);

  static FockKet basis(Register reg, OccupationVector counts, Complex amp = 1.0,
                       int cutoff = kDefaultCutoff);

  const Register& reg() const { return reg_; }
  const Terms& terms() const { return terms_; }
  int cutoff() const { return cutoff_; }

  Complex amplitude(const OccupationVector& counts) const;
  /// Amplitude of the term given as a mode -> count list; unspecified modes are empty.
  Complex amplitude(const std::map<ModeId, int>& counts) const;

  double squared_norm() const;
  double norm() const;
  bool is_zero() const { return terms_.empty(); }

  FockKet scaled(Complex factor) const;
  FockKet normalized() const;

  /// Same state expressed over a larger register (extra modes are empty).
  FockKet embedded(const Register& larger) const;

 private:
  Register reg_;
  Terms terms_;
  int cutoff_ = kDefaultCutoff;
};

FockKet operator+(const FockKet& a, const FockKet& b);
FockKet operator-(const FockKet& a, const FockKet& b);
FockKet operator*(Complex factor, const FockKet& k);

/// Normalized ket with one photon in `m` and vacuum elsewhere.
FockKet single_photon(const ModeId& m, const Register& reg, int cutoff = FockKet::kDefaultCutoff);

/// Linear combination of kets sharing a register.
FockKet superpose(std::span<const std::pair<Complex, FockKet>> terms);
FockKet superpose(std::initializer_list<std::pair<Complex, FockKet>> terms);

/// Product state on the union of two disjoint registers.
FockKet tensor(const FockKet& a, const FockKet& b);

Complex inner(const FockKet& a, const FockKet& b);

/// |<a|b>| / (|a| |b|); throws std::invalid_argument on a zero ket.
double fidelity_up_to_global_phase(const FockKet& a, const FockKet& b);

/// Largest entrywise amplitude difference; registers must match.
double max_abs_difference(const FockKet& a, const FockKet& b);

int photon_count(const OccupationVector& counts);
int photons_in_port(const FockKet& k, const OccupationVector& counts, std::string_view spatial);

/// Passive linear-optical element acting on a subset of modes. The matrix is
/// indexed by position in `modes()` and maps creation operators as
/// a_k^dag -> sum_j U(j, k) a_j^dag.
class ModeTransform {
 public:
  static constexpr double kUnitarityTolerance = 1e-12;

  ModeTransform(std::vector<ModeId> modes, Eigen::MatrixXcd matrix);

  const std::vector<ModeId>& modes() const { return modes_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  /// Full matrix over `reg`, identity on modes this transform does not touch.
  Eigen::MatrixXcd embedded(const Register& reg) const;

 private:
  std::vector<ModeId> modes_;
  Eigen::MatrixXcd matrix_;
};

/// `second` applied after `first`, over the union of their modes.
ModeTransform compose(const ModeTransform& first, const ModeTransform& second);

FockKet apply_mode_transform(const FockKet& state, const ModeTransform& u);

/// Ideal number-resolving detection. Every measured mode must see exactly
/// the count in `required`; measured modes without an entry must stay dark.
struct DetectionPattern {
  std::string label;
  std::map<ModeId, int> required;
  std::set<ModeId> measured_modes;

  DetectionPattern() = default;
  DetectionPattern(std::string label, std::map<ModeId, int> required,
                   std::set<ModeId> extra_measured = {});

  int count_for(const ModeId& m) const;
};

using Branch = BasicBranch<FockKet>;
using GateResult = BasicGateResult<FockKet>;

/// Projects onto the exact-count subspace of `pattern` and traces out the
/// measured modes. A pattern that no term satisfies gives a zero branch.
Branch measure_and_postselect(const FockKet& state, const DetectionPattern& pattern);

/// Every exact-count outcome on `measured` that has support in `state`.
std::vector<Branch> enumerate_outcomes(const FockKet& state, const std::set<ModeId>& measured);

}  // namespace pgw
