#include "pgw/optical_elements.hpp"

#include <stdexcept>

namespace pgw {

ModeTransform pbs(const std::string& port_a, const std::string& port_b) {
  if (port_a == port_b) throw std::invalid_argument("pbs: ports must differ");
  // local order: a.H, a.V, b.H, b.V
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
  u(0, 0) = 1.0;
  u(2, 2) = 1.0;
  u(3, 1) = 1.0;
  u(1, 3) = 1.0;
  return ModeTransform({H(port_a), V(port_a), H(port_b), V(port_b)}, std::move(u));
}

ModeTransform hwp(const std::string& port, double theta_degrees) {
  return ModeTransform({H(port), V(port)}, Eigen::MatrixXcd(hwp_jones(theta_degrees)));
}

ModeTransform pockels_z(const std::string& port) {
  return ModeTransform({H(port), V(port)}, Eigen::MatrixXcd(pockels_jones<double>()));
}

ModeTransform mode_swap(const ModeId& m1, const ModeId& m2) {
  if (m1 == m2) throw std::invalid_argument("mode_swap: modes must differ");
  Eigen::MatrixXcd u(2, 2);
  u << 0.0, 1.0, 1.0, 0.0;
  return ModeTransform({m1, m2}, std::move(u));
}

std::string to_string(ElementKind k) {
  switch (k) {
    case ElementKind::PBS: return "pbs";
    case ElementKind::HWP: return "hwp";
    case ElementKind::PC: return "pc";
    case ElementKind::SWAP: return "swap";
  }
  return "?";
}

ElementSpec ElementSpec::make_pbs(std::string a, std::string b) {
  return {ElementKind::PBS, {std::move(a), std::move(b)}, {}, 0.0};
}

ElementSpec ElementSpec::make_hwp(std::string port, double theta_degrees) {
  return {ElementKind::HWP, {std::move(port)}, {}, theta_degrees};
}

ElementSpec ElementSpec::make_pc(std::string port) {
  return {ElementKind::PC, {std::move(port)}, {}, 0.0};
}

ElementSpec ElementSpec::make_swap(ModeId a, ModeId b) {
  return {ElementKind::SWAP, {}, {std::move(a), std::move(b)}, 0.0};
}

void ElementSpec::validate() const {
  switch (kind) {
    case ElementKind::PBS:
      if (ports.size() != 2 || !modes.empty()) throw std::invalid_argument("pbs takes exactly 2 ports");
      if (ports[0] == ports[1]) throw std::invalid_argument("pbs ports must differ");
      break;
    case ElementKind::HWP:
    case ElementKind::PC:
      if (ports.size() != 1 || !modes.empty()) {
        throw std::invalid_argument(to_string(kind) + " takes exactly 1 port");
      }
      break;
    case ElementKind::SWAP:
      if (modes.size() != 2 || !ports.empty()) throw std::invalid_argument("swap takes exactly 2 modes");
      if (modes[0] == modes[1]) throw std::invalid_argument("swap modes must differ");
      break;
  }
}

ModeTransform to_transform(const ElementSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ElementKind::PBS: return pbs(spec.ports[0], spec.ports[1]);
    case ElementKind::HWP: return hwp(spec.ports[0], spec.angle_degrees);
    case ElementKind::PC: return pockels_z(spec.ports[0]);
    case ElementKind::SWAP: return mode_swap(spec.modes[0], spec.modes[1]);
  }
  throw std::logic_error("unknown element kind");
}

}  // namespace pgw
