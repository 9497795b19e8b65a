#include "pgw/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pgw {

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void require_same_register(const FockKet& a, const FockKet& b, const char* what) {
  if (!(a.reg() == b.reg())) throw RegisterError(std::string(what) + ": register mismatch");
}

}  // namespace

std::string to_string(Polarization p) { return p == Polarization::H ? "H" : "V"; }

std::string to_string(const ModeId& m) { return m.spatial + "." + to_string(m.pol); }

ModeId parse_mode(std::string_view text) {
  const auto dot = text.rfind('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 2 != text.size()) {
    throw RegisterError("malformed mode '" + std::string(text) + "', expected LABEL.H or LABEL.V");
  }
  const char p = text[dot + 1];
  if (p != 'H' && p != 'V') {
    throw RegisterError("malformed mode '" + std::string(text) + "', polarization must be H or V");
  }
  return {std::string(text.substr(0, dot)), p == 'H' ? Polarization::H : Polarization::V};
}

// ---------------------------------------------------------------------------
// Register

Register::Register(std::vector<ModeId> modes) : modes_(std::move(modes)) {
  std::sort(modes_.begin(), modes_.end());
  if (std::adjacent_find(modes_.begin(), modes_.end()) != modes_.end()) {
    throw RegisterError("duplicate mode in register");
  }
  for (const auto& m : modes_) {
    if (m.spatial.empty()) throw RegisterError("empty spatial label");
  }
}

Register Register::from_ports(const std::vector<std::string>& ports) {
  std::vector<ModeId> modes;
  for (const auto& p : ports) {
    modes.push_back(H(p));
    modes.push_back(V(p));
  }
  return Register(std::move(modes));
}

std::optional<std::size_t> Register::find(const ModeId& m) const {
  const auto it = std::lower_bound(modes_.begin(), modes_.end(), m);
  if (it == modes_.end() || !(*it == m)) return std::nullopt;
  return static_cast<std::size_t>(it - modes_.begin());
}

std::size_t Register::index_of(const ModeId& m) const {
  if (auto i = find(m)) return *i;
  throw RegisterError("mode " + to_string(m) + " not in register");
}

bool Register::has_port(std::string_view spatial) const {
  return std::any_of(modes_.begin(), modes_.end(),
                     [&](const ModeId& m) { return m.spatial == spatial; });
}

Register Register::without(const std::set<ModeId>& removed) const {
  std::vector<ModeId> kept;
  for (const auto& m : modes_) {
    if (!removed.contains(m)) kept.push_back(m);
  }
  return Register(std::move(kept));
}

// ---------------------------------------------------------------------------
// FockKet

int photon_count(const OccupationVector& counts) {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

FockKet::FockKet(Register reg, Terms terms, int cutoff)
    : reg_(std::move(reg)), cutoff_(cutoff) {
  if (cutoff_ < 0) throw CutoffError("negative photon cutoff");
  for (auto& [occ, amp] : terms) {
    if (occ.size() != reg_.size()) {
      throw RegisterError("occupation vector length does not match register");
    }
    if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
      throw std::invalid_argument("non-finite amplitude");
    }
    if (std::abs(amp) < kPruneThreshold) continue;
    for (int c : occ) {
      if (c < 0) throw std::invalid_argument("negative photon count");
    }
    if (photon_count(occ) > cutoff_) {
      throw CutoffError("term with " + std::to_string(photon_count(occ)) +
                        " photons exceeds cutoff " + std::to_string(cutoff_));
    }
    terms_.emplace(occ, amp);
  }
}

FockKet FockKet::basis(Register reg, OccupationVector counts, Complex amp, int cutoff) {
  Terms t;
  t.emplace(std::move(counts), amp);
  return FockKet(std::move(reg), std::move(t), cutoff);
}

Complex FockKet::amplitude(const OccupationVector& counts) const {
  const auto it = terms_.find(counts);
  return it == terms_.end() ? Complex{} : it->second;
}

Complex FockKet::amplitude(const std::map<ModeId, int>& counts) const {
  OccupationVector occ(reg_.size(), 0);
  for (const auto& [m, c] : counts) occ[reg_.index_of(m)] = c;
  return amplitude(occ);
}

double FockKet::squared_norm() const {
  double s = 0.0;
  for (const auto& [occ, amp] : terms_) s += std::norm(amp);
  return s;
}

double FockKet::norm() const { return std::sqrt(squared_norm()); }

FockKet FockKet::scaled(Complex factor) const {
  Terms t = terms_;
  for (auto& [occ, amp] : t) amp *= factor;
  return FockKet(reg_, std::move(t), cutoff_);
}

FockKet FockKet::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero ket");
  return scaled(1.0 / n);
}

FockKet FockKet::embedded(const Register& larger) const {
  std::vector<std::size_t> where(reg_.size());
  for (std::size_t i = 0; i < reg_.size(); ++i) where[i] = larger.index_of(reg_.mode(i));
  Terms t;
  for (const auto& [occ, amp] : terms_) {
    OccupationVector big(larger.size(), 0);
    for (std::size_t i = 0; i < occ.size(); ++i) big[where[i]] = occ[i];
    t.emplace(std::move(big), amp);
  }
  return FockKet(larger, std::move(t), cutoff_);
}

FockKet operator+(const FockKet& a, const FockKet& b) {
  require_same_register(a, b, "sum");
  FockKet::Terms t = a.terms();
  for (const auto& [occ, amp] : b.terms()) t[occ] += amp;
  return FockKet(a.reg(), std::move(t), std::min(a.cutoff(), b.cutoff()));
}

FockKet operator-(const FockKet& a, const FockKet& b) { return a + (-1.0) * b; }

FockKet operator*(Complex factor, const FockKet& k) { return k.scaled(factor); }

FockKet single_photon(const ModeId& m, const Register& reg, int cutoff) {
  OccupationVector occ(reg.size(), 0);
  occ[reg.index_of(m)] = 1;
  return FockKet::basis(reg, std::move(occ), 1.0, cutoff);
}

FockKet superpose(std::span<const std::pair<Complex, FockKet>> terms) {
  if (terms.empty()) throw std::invalid_argument("superpose: no terms");
  const Register& reg = terms.front().second.reg();
  int cutoff = terms.front().second.cutoff();
  FockKet::Terms acc;
  for (const auto& [c, k] : terms) {
    if (!(k.reg() == reg)) throw RegisterError("superpose: register mismatch");
    cutoff = std::min(cutoff, k.cutoff());
    for (const auto& [occ, amp] : k.terms()) acc[occ] += c * amp;
  }
  return FockKet(reg, std::move(acc), cutoff);
}

FockKet superpose(std::initializer_list<std::pair<Complex, FockKet>> terms) {
  return superpose(std::span<const std::pair<Complex, FockKet>>(terms.begin(), terms.size()));
}

FockKet tensor(const FockKet& a, const FockKet& b) {
  std::vector<ModeId> modes = a.reg().modes();
  for (const auto& m : b.reg().modes()) {
    if (a.reg().contains(m)) throw RegisterError("tensor: overlapping mode " + to_string(m));
    modes.push_back(m);
  }
  const Register joint(std::move(modes));
  std::vector<std::size_t> wa, wb;
  for (const auto& m : a.reg().modes()) wa.push_back(joint.index_of(m));
  for (const auto& m : b.reg().modes()) wb.push_back(joint.index_of(m));

  FockKet::Terms t;
  for (const auto& [oa, ca] : a.terms()) {
    for (const auto& [ob, cb] : b.terms()) {
      OccupationVector occ(joint.size(), 0);
      for (std::size_t i = 0; i < oa.size(); ++i) occ[wa[i]] = oa[i];
      for (std::size_t i = 0; i < ob.size(); ++i) occ[wb[i]] = ob[i];
      t[occ] += ca * cb;
    }
  }
  return FockKet(joint, std::move(t), std::min(a.cutoff(), b.cutoff()));
}

Complex inner(const FockKet& a, const FockKet& b) {
  require_same_register(a, b, "inner");
  Complex s{};
  for (const auto& [occ, amp] : a.terms()) s += std::conj(amp) * b.amplitude(occ);
  return s;
}

double fidelity_up_to_global_phase(const FockKet& a, const FockKet& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("fidelity of a zero ket");
  return std::min(1.0, std::abs(inner(a, b)) / (na * nb));
}

double max_abs_difference(const FockKet& a, const FockKet& b) {
  require_same_register(a, b, "difference");
  double d = 0.0;
  for (const auto& [occ, amp] : a.terms()) d = std::max(d, std::abs(amp - b.amplitude(occ)));
  for (const auto& [occ, amp] : b.terms()) {
    if (!a.terms().contains(occ)) d = std::max(d, std::abs(amp));
  }
  return d;
}

int photons_in_port(const FockKet& k, const OccupationVector& counts, std::string_view spatial) {
  int n = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (k.reg().mode(i).spatial == spatial) n += counts[i];
  }
  return n;
}

// ---------------------------------------------------------------------------
// ModeTransform

ModeTransform::ModeTransform(std::vector<ModeId> modes, Eigen::MatrixXcd matrix)
    : modes_(std::move(modes)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(modes_.size());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw std::invalid_argument("mode transform matrix does not match its mode list");
  }
  std::vector<ModeId> sorted = modes_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw RegisterError("mode transform touches a mode twice");
  }
  const Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
  const double dev = (gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (n > 0 && dev > kUnitarityTolerance) {
    throw std::invalid_argument("mode transform is not unitary (deviation " + std::to_string(dev) + ")");
  }
}

Eigen::MatrixXcd ModeTransform::embedded(const Register& reg) const {
  const auto n = static_cast<Eigen::Index>(reg.size());
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(n, n);
  std::vector<Eigen::Index> where;
  for (const auto& m : modes_) where.push_back(static_cast<Eigen::Index>(reg.index_of(m)));
  for (std::size_t c = 0; c < where.size(); ++c) {
    for (std::size_t r = 0; r < where.size(); ++r) {
      full(where[r], where[c]) = matrix_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return full;
}

ModeTransform compose(const ModeTransform& first, const ModeTransform& second) {
  std::vector<ModeId> modes = first.modes();
  for (const auto& m : second.modes()) {
    if (std::find(modes.begin(), modes.end(), m) == modes.end()) modes.push_back(m);
  }
  const Register reg(modes);
  return ModeTransform(reg.modes(), second.embedded(reg) * first.embedded(reg));
}

namespace {

// Expands the touched photons of one basis term. Photons are visited one by
// one and each is sent to every output mode with a nonzero column entry; the
// accumulated product is the coefficient of the resulting monomial.
struct Expansion {
  const Eigen::MatrixXcd& u;
  const std::vector<std::size_t>& flat;            // local index -> flat index
  std::vector<std::vector<Eigen::Index>> support;  // nonzero rows of each column
  std::vector<Eigen::Index> photons;               // local source mode per photon
  OccupationVector out;
  FockKet::Terms* sink = nullptr;
  double inv_sqrt_in = 1.0;

  void run(std::size_t p, Complex coeff) {
    if (p == photons.size()) {
      double fact_out = 1.0;
      for (std::size_t i = 0; i < flat.size(); ++i) fact_out *= factorial(out[flat[i]]);
      (*sink)[out] += coeff * std::sqrt(fact_out) * inv_sqrt_in;
      return;
    }
    const Eigen::Index src = photons[p];
    for (Eigen::Index dst : support[static_cast<std::size_t>(src)]) {
      const std::size_t f = flat[static_cast<std::size_t>(dst)];
      ++out[f];
      run(p + 1, coeff * u(dst, src));
      --out[f];
    }
  }
};

}  // namespace

FockKet apply_mode_transform(const FockKet& state, const ModeTransform& u) {
  std::vector<std::size_t> flat;
  for (const auto& m : u.modes()) flat.push_back(state.reg().index_of(m));

  const auto n = u.matrix().rows();
  std::vector<std::vector<Eigen::Index>> support(static_cast<std::size_t>(n));
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      if (std::abs(u.matrix()(r, c)) > 0.0) support[static_cast<std::size_t>(c)].push_back(r);
    }
  }

  FockKet::Terms out_terms;
  for (const auto& [occ, amp] : state.terms()) {
    Expansion e{u.matrix(), flat, support, {}, occ, &out_terms, 1.0};
    double fact_in = 1.0;
    for (std::size_t i = 0; i < flat.size(); ++i) {
      const int c = occ[flat[i]];
      fact_in *= factorial(c);
      for (int k = 0; k < c; ++k) e.photons.push_back(static_cast<Eigen::Index>(i));
      e.out[flat[i]] = 0;
    }
    e.inv_sqrt_in = 1.0 / std::sqrt(fact_in);
    e.run(0, amp);
  }
  // Photon number is conserved, so the FockKet constructor's cutoff check
  // only fires if the input already violated it.
  return FockKet(state.reg(), std::move(out_terms), state.cutoff());
}

// ---------------------------------------------------------------------------
// Detection

DetectionPattern::DetectionPattern(std::string lbl, std::map<ModeId, int> req,
                                   std::set<ModeId> extra_measured)
    : label(std::move(lbl)), required(std::move(req)), measured_modes(std::move(extra_measured)) {
  for (const auto& [m, c] : required) {
    if (c < 0) throw std::invalid_argument("detection pattern with negative count");
    measured_modes.insert(m);
  }
}

int DetectionPattern::count_for(const ModeId& m) const {
  const auto it = required.find(m);
  return it == required.end() ? 0 : it->second;
}

Branch measure_and_postselect(const FockKet& state, const DetectionPattern& pattern) {
  for (const auto& [m, c] : pattern.required) {
    if (!pattern.measured_modes.contains(m)) {
      throw std::invalid_argument("required mode " + to_string(m) + " is not measured");
    }
  }
  std::vector<std::pair<std::size_t, int>> checks;
  for (const auto& m : pattern.measured_modes) {
    checks.emplace_back(state.reg().index_of(m), pattern.count_for(m));
  }
  const Register rest = state.reg().without(pattern.measured_modes);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < state.reg().size(); ++i) {
    if (!pattern.measured_modes.contains(state.reg().mode(i))) kept.push_back(i);
  }

  FockKet::Terms t;
  for (const auto& [occ, amp] : state.terms()) {
    const bool match = std::all_of(checks.begin(), checks.end(),
                                   [&](const auto& ch) { return occ[ch.first] == ch.second; });
    if (!match) continue;
    OccupationVector reduced;
    reduced.reserve(kept.size());
    for (std::size_t i : kept) reduced.push_back(occ[i]);
    t[reduced] += amp;
  }
  Branch b;
  b.outcome = pattern.label;
  b.state = FockKet(rest, std::move(t), state.cutoff());
  b.probability = b.state.squared_norm();
  return b;
}

std::vector<Branch> enumerate_outcomes(const FockKet& state, const std::set<ModeId>& measured) {
  std::set<std::map<ModeId, int>> seen;
  for (const auto& [occ, amp] : state.terms()) {
    std::map<ModeId, int> key;
    for (const auto& m : measured) key[m] = occ[state.reg().index_of(m)];
    seen.insert(std::move(key));
  }
  std::vector<Branch> out;
  for (const auto& key : seen) {
    std::string label;
    for (const auto& [m, c] : key) {
      if (!label.empty()) label += ' ';
      label += to_string(m) + "=" + std::to_string(c);
    }
    out.push_back(measure_and_postselect(state, DetectionPattern(label, key, measured)));
  }
  return out;
}

}  // namespace pgw
