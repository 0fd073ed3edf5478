// Copyright 2026 The rankrange Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rankrange/channel.hpp"

#include <cmath>

#include "rankrange/detail/rng.hpp"

namespace rankrange {

namespace {

using detail::mix64;
using detail::Rng;

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      double re = rng.next_gaussian();
      double im = rng.next_gaussian();
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return g;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(base ^ mix64(index + 0x51a2b3c4d5e6f708ULL));
}

KrausChannel BiUnitaryChannel::kraus() const {
  KrausChannel ch;
  ch.dimension = static_cast<int>(V.rows());
  ch.kraus_ops = {std::sqrt(p) * V, std::sqrt(1.0 - p) * W};
  return ch;
}

KrausChannel make_kraus_channel(std::vector<Matrix> ops,
                                const ToleranceConfig& tol) {
  if (ops.empty()) {
    fail(errc::dimension_mismatch, "make_kraus_channel: empty operator list");
  }
  const Eigen::Index n = ops.front().rows();
  Matrix sum = Matrix::Zero(n, n);
  for (const Matrix& e : ops) {
    if (e.rows() != n || e.cols() != n) {
      fail(errc::dimension_mismatch,
           "make_kraus_channel: operators must share a square dimension");
    }
    sum += e.adjoint() * e;
  }
  if ((sum - Matrix::Identity(n, n)).norm() > tol.eps_tp) {
    fail(errc::bad_parameter,
         "make_kraus_channel: operators do not preserve trace");
  }
  KrausChannel ch;
  ch.dimension = static_cast<int>(n);
  ch.kraus_ops = std::move(ops);
  return ch;
}

KrausChannel mixed_unitary_channel(const std::vector<Matrix>& unitaries,
                                   const ToleranceConfig& tol) {
  std::vector<Matrix> ops;
  const double w = 1.0 / std::sqrt(static_cast<double>(unitaries.size()));
  for (const Matrix& u : unitaries) {
    if (!is_unitary(u, tol.eps_proj)) {
      fail(errc::not_unitary, "mixed_unitary_channel: non-unitary operator");
    }
    ops.push_back(w * u);
  }
  return make_kraus_channel(std::move(ops), tol);
}

BiUnitaryChannel make_buc(const Matrix& V, const Matrix& W, double p,
                          const ToleranceConfig& tol) {
  if (V.rows() != W.rows() || V.cols() != W.cols()) {
    fail(errc::dimension_mismatch, "make_buc: V and W dimensions differ");
  }
  if (!is_unitary(V, tol.eps_proj) || !is_unitary(W, tol.eps_proj)) {
    fail(errc::not_unitary, "make_buc: V and W must be unitary");
  }
  if (!(p > 0.0) || !(p < 1.0)) {
    fail(errc::bad_probability, "make_buc: p must lie strictly in (0, 1)");
  }
  return BiUnitaryChannel{V, W, p};
}

Matrix buc_reduce(const BiUnitaryChannel& ch) { return ch.V.adjoint() * ch.W; }

DensityMatrix make_density(const Matrix& rho, const ToleranceConfig& tol) {
  if (rho.rows() != rho.cols()) {
    fail(errc::dimension_mismatch, "make_density: expected square matrix");
  }
  if (hermiticity_residual(rho) > tol.eps_proj) {
    fail(errc::not_hermitian, "make_density: state is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es((rho + rho.adjoint()) / 2.0);
  if (es.eigenvalues().minCoeff() < -tol.eps_proj) {
    fail(errc::bad_parameter, "make_density: state is not positive");
  }
  if (std::abs(rho.trace() - Complex(1.0)) > tol.eps_proj) {
    fail(errc::bad_parameter, "make_density: trace must equal 1");
  }
  return DensityMatrix{rho};
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.matrix.rows() != ch.dimension) {
    fail(errc::dimension_mismatch, "apply: state dimension mismatch");
  }
  Matrix out = Matrix::Zero(ch.dimension, ch.dimension);
  for (const Matrix& e : ch.kraus_ops) out += e * rho.matrix * e.adjoint();
  return DensityMatrix{out};
}

Matrix kron(const Matrix& A, const Matrix& B) {
  Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return out;
}

Matrix pauli_z() {
  Matrix z(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;
  return z;
}

Matrix z1_operator(int n_qubits) {
  if (n_qubits < 1) {
    fail(errc::bad_parameter, "z1_operator: need at least one qubit");
  }
  Eigen::Index rest = Eigen::Index(1) << (n_qubits - 1);
  return kron(pauli_z(), Matrix::Identity(rest, rest));
}

Matrix zz_operator() { return kron(pauli_z(), pauli_z()); }

Matrix random_unitary(int N, std::uint64_t seed) {
  if (N < 1) fail(errc::bad_parameter, "random_unitary: N must be positive");
  Rng rng(mix64(seed));
  Matrix g = gaussian_matrix(N, N, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(N, N);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity of QR so the distribution is exactly Haar.
  for (int j = 0; j < N; ++j) {
    Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

DensityMatrix random_density(int N, std::uint64_t seed) {
  Rng rng(mix64(seed) ^ 0xd1b54a32d192ed03ULL);
  Matrix g = gaussian_matrix(N, N, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix{rho};
}

}  // namespace rankrange
