#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pgw/fock.hpp"

namespace pgw {

/// Half-wave plate Jones matrix on (H, V), including the overall -i so that
/// the 22.5 degree plate maps H -> -i(H+V)/sqrt2 and V -> -i(H-V)/sqrt2.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 2> hwp_jones(Scalar theta_degrees) {
  using C = std::complex<Scalar>;
  const Scalar two_theta = Scalar(2) * theta_degrees * std::numbers::pi_v<Scalar> / Scalar(180);
  const C minus_i(Scalar(0), Scalar(-1));
  Eigen::Matrix<C, 2, 2> m;
  m << std::cos(two_theta), std::sin(two_theta),
       std::sin(two_theta), -std::cos(two_theta);
  return minus_i * m;
}

/// Phase flip H -> H, V -> -V.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 2> pockels_jones() {
  Eigen::Matrix<std::complex<Scalar>, 2, 2> m;
  m << Scalar(1), Scalar(0), Scalar(0), Scalar(-1);
  return m;
}

/// Polarizing beam splitter: H is transmitted on both ports, V is exchanged
/// between them with reflection coefficient +1.
ModeTransform pbs(const std::string& port_a, const std::string& port_b);

ModeTransform hwp(const std::string& port, double theta_degrees);

/// Pockels cell used as a classically triggered Z on one port.
ModeTransform pockels_z(const std::string& port);

ModeTransform mode_swap(const ModeId& m1, const ModeId& m2);

enum class ElementKind { PBS, HWP, PC, SWAP };

std::string to_string(ElementKind k);

/// Declarative element description, the unit of circuit files.
struct ElementSpec {
  ElementKind kind = ElementKind::PC;
  std::vector<std::string> ports;  // PBS: 2, HWP/PC: 1
  std::vector<ModeId> modes;       // SWAP: 2
  double angle_degrees = 0.0;      // HWP only

  static ElementSpec make_pbs(std::string a, std::string b);
  static ElementSpec make_hwp(std::string port, double theta_degrees);
  static ElementSpec make_pc(std::string port);
  static ElementSpec make_swap(ModeId a, ModeId b);

  /// Throws std::invalid_argument when the port/mode arity is wrong.
  void validate() const;
};

ModeTransform to_transform(const ElementSpec& spec);

}  // namespace pgw
