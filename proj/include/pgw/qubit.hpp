#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pgw/branch.hpp"

namespace pgw {

inline constexpr std::size_t kMaxQubits = 6;

/// Dense n-qubit state vector with named qubits. The first label is the most
/// significant bit of the basis index, so |01> on (a, b) means a=0, b=1.
template <typename Scalar>
class BasicQubitState {
 public:
  using Complex = std::complex<Scalar>;
  using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  BasicQubitState() = default;

  BasicQubitState(std::vector<std::string> labels, Vector amps)
      : labels_(std::move(labels)), amps_(std::move(amps)) {
    if (labels_.size() > kMaxQubits) throw std::invalid_argument("too many qubits");
    if (amps_.size() != (Eigen::Index{1} << labels_.size())) {
      throw std::invalid_argument("amplitude vector length must be 2^n");
    }
    auto sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("duplicate qubit label");
    }
  }

  /// Computational basis state from a bit string such as "0110".
  static BasicQubitState basis(std::vector<std::string> labels, const std::string& bits) {
    if (bits.size() != labels.size()) throw std::invalid_argument("bit string length mismatch");
    Vector v = Vector::Zero(Eigen::Index{1} << labels.size());
    Eigen::Index idx = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') throw std::invalid_argument("bit string must be 0/1");
      idx = (idx << 1) | (c == '1' ? 1 : 0);
    }
    v(idx) = Scalar(1);
    return BasicQubitState(std::move(labels), std::move(v));
  }

  const std::vector<std::string>& labels() const { return labels_; }
  const Vector& amplitudes() const { return amps_; }
  std::size_t size() const { return labels_.size(); }

  std::size_t position(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw std::invalid_argument("unknown qubit " + label);
    return static_cast<std::size_t>(it - labels_.begin());
  }
  bool has(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
  }

  /// Bit mask of a qubit within the basis index.
  Eigen::Index mask(const std::string& label) const {
    return Eigen::Index{1} << (labels_.size() - 1 - position(label));
  }

  Scalar squared_norm() const { return amps_.squaredNorm(); }
  Scalar norm() const { return amps_.norm(); }

  BasicQubitState scaled(Complex f) const { return {labels_, Vector(f * amps_)}; }
  BasicQubitState normalized() const {
    const Scalar n = norm();
    if (n == Scalar(0)) throw std::invalid_argument("cannot normalize the zero state");
    return {labels_, Vector(amps_ / n)};
  }

  /// Same amplitudes with qubits listed in `order` (a permutation of labels()).
  BasicQubitState reordered(const std::vector<std::string>& order) const {
    if (order.size() != labels_.size()) throw std::invalid_argument("reorder: label count mismatch");
    std::vector<Eigen::Index> src_mask;
    for (const auto& l : order) src_mask.push_back(mask(l));
    const std::size_t n = order.size();
    Vector out(amps_.size());
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
      Eigen::Index src = 0;
      for (std::size_t p = 0; p < n; ++p) {
        if (i & (Eigen::Index{1} << (n - 1 - p))) src |= src_mask[p];
      }
      out(i) = amps_(src);
    }
    return {order, std::move(out)};
  }

  /// Exchanges the names of two qubits; the amplitude vector is untouched.
  BasicQubitState relabeled_swap(const std::string& a, const std::string& b) const {
    auto labels = labels_;
    std::swap(labels[position(a)], labels[position(b)]);
    return {std::move(labels), amps_};
  }

 private:
  std::vector<std::string> labels_;
  Vector amps_;
};

template <typename Scalar>
BasicQubitState<Scalar> operator+(const BasicQubitState<Scalar>& a, const BasicQubitState<Scalar>& b) {
  const auto bb = b.labels() == a.labels() ? b : b.reordered(a.labels());
  return {a.labels(), typename BasicQubitState<Scalar>::Vector(a.amplitudes() + bb.amplitudes())};
}

template <typename Scalar>
BasicQubitState<Scalar> tensor(const BasicQubitState<Scalar>& a, const BasicQubitState<Scalar>& b) {
  auto labels = a.labels();
  for (const auto& l : b.labels()) {
    if (a.has(l)) throw std::invalid_argument("tensor: qubit " + l + " appears twice");
    labels.push_back(l);
  }
  using Vector = typename BasicQubitState<Scalar>::Vector;
  Vector v(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    v.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()(i) * b.amplitudes();
  }
  return {std::move(labels), std::move(v)};
}

/// <a|b> after aligning b to a's qubit order.
template <typename Scalar>
std::complex<Scalar> inner(const BasicQubitState<Scalar>& a, const BasicQubitState<Scalar>& b) {
  const auto bb = b.labels() == a.labels() ? b : b.reordered(a.labels());
  return a.amplitudes().dot(bb.amplitudes());
}

template <typename Scalar>
Scalar fidelity_up_to_global_phase(const BasicQubitState<Scalar>& a, const BasicQubitState<Scalar>& b) {
  const Scalar na = a.norm();
  const Scalar nb = b.norm();
  if (na == Scalar(0) || nb == Scalar(0)) throw std::invalid_argument("fidelity of a zero state");
  return std::min(Scalar(1), std::abs(inner(a, b)) / (na * nb));
}

template <typename Scalar>
Scalar max_abs_difference(const BasicQubitState<Scalar>& a, const BasicQubitState<Scalar>& b) {
  const auto bb = b.labels() == a.labels() ? b : b.reordered(a.labels());
  return (a.amplitudes() - bb.amplitudes()).cwiseAbs().maxCoeff();
}

/// Contracts the qubits named by `bra` against it: returns <bra| psi> as a
/// state on the remaining qubits of psi.
template <typename Scalar>
BasicQubitState<Scalar> partial_inner(const BasicQubitState<Scalar>& bra, const BasicQubitState<Scalar>& psi) {
  std::vector<std::string> rest;
  for (const auto& l : psi.labels()) {
    if (!bra.has(l)) rest.push_back(l);
  }
  if (rest.size() + bra.size() != psi.size()) throw std::invalid_argument("partial_inner: bra qubits not in state");
  std::vector<std::string> order = rest;
  order.insert(order.end(), bra.labels().begin(), bra.labels().end());
  const auto aligned = psi.reordered(order);
  const Eigen::Index k = bra.amplitudes().size();
  using Vector = typename BasicQubitState<Scalar>::Vector;
  Vector out(Eigen::Index{1} << rest.size());
  for (Eigen::Index r = 0; r < out.size(); ++r) {
    out(r) = bra.amplitudes().dot(aligned.amplitudes().segment(r * k, k));
  }
  return {std::move(rest), std::move(out)};
}

/// Operator on a list of named target qubits; the matrix uses the same
/// big-endian convention as BasicQubitState over `targets`.
template <typename Scalar>
struct BasicQubitOperator {
  using Complex = std::complex<Scalar>;
  using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix matrix;
  std::vector<std::string> targets;

  BasicQubitOperator() = default;
  BasicQubitOperator(Matrix m, std::vector<std::string> t) : matrix(std::move(m)), targets(std::move(t)) {
    if (matrix.rows() != matrix.cols() || matrix.rows() != (Eigen::Index{1} << targets.size())) {
      throw std::invalid_argument("operator size must be 2^k for k targets");
    }
  }

  bool is_unitary(Scalar tol = Scalar(1e-12)) const {
    const Matrix g = matrix.adjoint() * matrix;
    return (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() <= tol;
  }
  bool is_projector(Scalar tol = Scalar(1e-12)) const {
    return (matrix * matrix - matrix).cwiseAbs().maxCoeff() <= tol &&
           (matrix.adjoint() - matrix).cwiseAbs().maxCoeff() <= tol;
  }
};

template <typename Scalar>
BasicQubitState<Scalar> apply(const BasicQubitOperator<Scalar>& op, const BasicQubitState<Scalar>& psi) {
  std::vector<Eigen::Index> masks;
  for (const auto& t : op.targets) masks.push_back(psi.mask(t));
  Eigen::Index all = 0;
  for (auto m : masks) all |= m;
  const std::size_t k = masks.size();
  const Eigen::Index dim = Eigen::Index{1} << k;

  auto scatter = [&](Eigen::Index base, Eigen::Index local) {
    Eigen::Index idx = base;
    for (std::size_t p = 0; p < k; ++p) {
      if (local & (Eigen::Index{1} << (k - 1 - p))) idx |= masks[p];
    }
    return idx;
  };

  using Vector = typename BasicQubitState<Scalar>::Vector;
  const Vector& in = psi.amplitudes();
  Vector out = Vector::Zero(in.size());
  Vector local_in(dim);
  for (Eigen::Index base = 0; base < in.size(); ++base) {
    if (base & all) continue;
    for (Eigen::Index l = 0; l < dim; ++l) local_in(l) = in(scatter(base, l));
    const Vector local_out = op.matrix * local_in;
    for (Eigen::Index l = 0; l < dim; ++l) out(scatter(base, l)) = local_out(l);
  }
  return {psi.labels(), std::move(out)};
}

namespace gates {

template <typename Scalar>
using Mat = typename BasicQubitOperator<Scalar>::Matrix;

template <typename Scalar = double>
BasicQubitOperator<Scalar> identity(const std::string& q) {
  return {Mat<Scalar>::Identity(2, 2), {q}};
}

template <typename Scalar = double>
BasicQubitOperator<Scalar> pauli_x(const std::string& q) {
  Mat<Scalar> m(2, 2);
  m << Scalar(0), Scalar(1), Scalar(1), Scalar(0);
  return {m, {q}};
}

template <typename Scalar = double>
BasicQubitOperator<Scalar> pauli_z(const std::string& q) {
  Mat<Scalar> m(2, 2);
  m << Scalar(1), Scalar(0), Scalar(0), Scalar(-1);
  return {m, {q}};
}

template <typename Scalar = double>
BasicQubitOperator<Scalar> hadamard(const std::string& q) {
  const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
  Mat<Scalar> m(2, 2);
  m << s, s, s, -s;
  return {m, {q}};
}

template <typename Scalar = double>
BasicQubitOperator<Scalar> cz(const std::string& a, const std::string& b) {
  Mat<Scalar> m = Mat<Scalar>::Identity(4, 4);
  m(3, 3) = Scalar(-1);
  return {m, {a, b}};
}

template <typename Scalar = double>
BasicQubitOperator<Scalar> cnot(const std::string& control, const std::string& target) {
  Mat<Scalar> m = Mat<Scalar>::Zero(4, 4);
  m(0, 0) = m(1, 1) = Scalar(1);
  m(2, 3) = m(3, 2) = Scalar(1);
  return {m, {control, target}};
}

/// |00><00| + |11><11| on the pair.
template <typename Scalar = double>
BasicQubitOperator<Scalar> parity_filter(const std::string& a, const std::string& b) {
  Mat<Scalar> m = Mat<Scalar>::Zero(4, 4);
  m(0, 0) = m(3, 3) = Scalar(1);
  return {m, {a, b}};
}

/// Kronecker product of two single-qubit operators on distinct qubits.
template <typename Scalar>
BasicQubitOperator<Scalar> kron(const BasicQubitOperator<Scalar>& a, const BasicQubitOperator<Scalar>& b) {
  const auto& A = a.matrix;
  const auto& B = b.matrix;
  Mat<Scalar> m(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      m.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  auto t = a.targets;
  t.insert(t.end(), b.targets.begin(), b.targets.end());
  return {m, t};
}

}  // namespace gates

using QubitState = BasicQubitState<double>;
using QubitOperator = BasicQubitOperator<double>;
using QubitBranch = BasicBranch<QubitState>;
using QubitGateResult = BasicGateResult<QubitState>;

}  // namespace pgw
