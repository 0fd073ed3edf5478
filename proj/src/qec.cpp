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

#include "rankrange/qec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rankrange {

namespace {

void require_same_dimension(const KrausChannel& ch, const Projection& P,
                            const char* who) {
  if (P.matrix.rows() != ch.dimension || P.matrix.cols() != ch.dimension) {
    fail(errc::dimension_mismatch,
         std::string(who) + ": channel and projection dimensions differ");
  }
}

// Orthonormal column basis of a projection's range.
Matrix code_basis(const Projection& P) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(P.matrix);
  const Eigen::Index n = P.matrix.rows();
  Matrix basis(n, P.rank);
  // Eigenvalues ascend; the range of P carries the eigenvalues near 1.
  for (int j = 0; j < P.rank; ++j) {
    basis.col(j) = es.eigenvectors().col(n - P.rank + j);
  }
  return basis;
}

}  // namespace

VerificationReport kl_verify(const KrausChannel& ch, const Projection& P,
                             const ToleranceConfig& tol) {
  require_same_dimension(ch, P, "kl_verify");
  const int m = static_cast<int>(ch.kraus_ops.size());
  VerificationReport report;
  report.lambda_estimate.resize(m, m);
  report.per_pair_residuals.resize(m, m);
  const double scale = 1.0;  // channels are trace preserving; O(1) operators
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      Matrix compressed = P.matrix * ch.kraus_ops[a].adjoint() *
                          ch.kraus_ops[b] * P.matrix;
      Complex lam = compressed.trace() / static_cast<double>(P.rank);
      double res = (compressed - lam * P.matrix).norm();
      report.lambda_estimate(a, b) = lam;
      report.per_pair_residuals(a, b) = res;
      report.max_residual = std::max(report.max_residual, res * scale);
    }
  }
  report.correctable = report.max_residual <= tol.eps_scalar;
  if (report.correctable) {
    report.lambda = LambdaMatrix{report.lambda_estimate};
  }
  return report;
}

DensityCheckResult lambda_density_check(const LambdaMatrix& lambda,
                                        const ToleranceConfig& tol) {
  DensityCheckResult out;
  const Matrix& L = lambda.entries;
  out.hermiticity_residual = hermiticity_residual(L);
  Eigen::SelfAdjointEigenSolver<Matrix> es((L + L.adjoint()) / 2.0);
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  out.trace_deviation = std::abs(L.trace() - Complex(1.0));
  out.ok = out.hermiticity_residual <= tol.eps_proj &&
           out.min_eigenvalue >= -tol.eps_proj &&
           out.trace_deviation <= tol.eps_tp;
  return out;
}

std::vector<Matrix> hermitian_family(const KrausChannel& ch) {
  std::vector<Matrix> family;
  const int m = static_cast<int>(ch.kraus_ops.size());
  for (int a = 0; a < m; ++a) {
    family.push_back(ch.kraus_ops[a].adjoint() * ch.kraus_ops[a]);
  }
  const Complex i_unit(0.0, 1.0);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      Matrix ab = ch.kraus_ops[a].adjoint() * ch.kraus_ops[b];
      Matrix ba = ch.kraus_ops[b].adjoint() * ch.kraus_ops[a];
      family.push_back(ab + ba);
      family.push_back(i_unit * (ab - ba));
    }
  }
  return family;
}

BlockPositivityResult block_e_positivity(const KrausChannel& ch,
                                         const Projection& P,
                                         const ToleranceConfig& tol) {
  require_same_dimension(ch, P, "block_e_positivity");
  const int m = static_cast<int>(ch.kraus_ops.size());
  const int n = ch.dimension;
  BlockPositivityResult out;
  out.block.resize(m * n, m * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      out.block.block(i * n, j * n, n, n) =
          ch.kraus_ops[i].adjoint() * ch.kraus_ops[j];
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      (out.block + out.block.adjoint()) / 2.0);
  out.min_eigenvalue = es.eigenvalues().minCoeff();

  VerificationReport report = kl_verify(ch, P, tol);
  Matrix deviation(m * n, m * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      deviation.block(i * n, j * n, n, n) =
          P.matrix * out.block.block(i * n, j * n, n, n) * P.matrix -
          report.lambda_estimate(i, j) * P.matrix;
    }
  }
  out.residual = deviation.norm();
  return out;
}

RecoveryChannel build_recovery(const KrausChannel& ch, const Projection& P,
                               const ToleranceConfig& tol) {
  require_same_dimension(ch, P, "build_recovery");
  VerificationReport report = kl_verify(ch, P, tol);
  if (!report.correctable) {
    fail(errc::not_correctable,
         "build_recovery: code fails the correctability condition");
  }
  const int m = static_cast<int>(ch.kraus_ops.size());
  const int n = ch.dimension;

  // Diagonalize Lambda; columns ordered by descending eigenvalue so the
  // dominant rotated error comes first.
  Eigen::SelfAdjointEigenSolver<Matrix> es(report.lambda->entries);
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return es.eigenvalues()[a] > es.eigenvalues()[b];
  });

  Matrix basis = code_basis(P);
  std::vector<Matrix> isometries;  // n x rank blocks, one per effective error
  for (int idx : order) {
    double d = es.eigenvalues()[idx];
    if (d <= tol.eps_scalar) continue;
    Matrix rotated = Matrix::Zero(n, n);
    for (int a = 0; a < m; ++a) {
      rotated += std::conj(es.eigenvectors()(a, idx)) * ch.kraus_ops[a];
    }
    Matrix on_code = rotated * basis;  // ~ sqrt(d) * isometry
    Eigen::JacobiSVD<Matrix> svd(on_code,
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues().minCoeff() < tol.eps_scalar) {
      fail(errc::rank_deficiency,
           "build_recovery: rotated error is numerically rank-deficient on "
           "the code");
    }
    Matrix iso = svd.matrixU() * svd.matrixV().adjoint();
    // Phase convention: largest entry of the first column real positive.
    Eigen::Index imax = 0;
    iso.col(0).cwiseAbs().maxCoeff(&imax);
    Complex pivot = iso(imax, 0);
    iso *= std::conj(pivot) / std::abs(pivot);
    isometries.push_back(iso);
  }

  // The error images are mutually orthogonal only up to the verification
  // residual; a polar re-orthonormalization of the stacked isometries makes
  // the recovery exactly trace preserving.
  const int k = P.rank;
  Matrix stack(n, static_cast<Eigen::Index>(isometries.size()) * k);
  for (std::size_t b = 0; b < isometries.size(); ++b) {
    stack.middleCols(static_cast<Eigen::Index>(b) * k, k) = isometries[b];
  }
  Eigen::JacobiSVD<Matrix> polar(stack,
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
  Matrix ortho = polar.matrixU() * polar.matrixV().adjoint();

  RecoveryChannel recovery;
  recovery.code = P;
  recovery.channel.dimension = n;
  Matrix reachable = Matrix::Zero(n, n);
  for (std::size_t b = 0; b < isometries.size(); ++b) {
    Matrix iso = ortho.middleCols(static_cast<Eigen::Index>(b) * k, k);
    recovery.channel.kraus_ops.push_back(basis * iso.adjoint());
    reachable += iso * iso.adjoint();
  }
  recovery.channel.kraus_ops.push_back(Matrix::Identity(n, n) - reachable);
  return recovery;
}

double verify_recovery(const KrausChannel& ch, const RecoveryChannel& recovery,
                       const Projection& P, int n_samples, std::uint64_t seed,
                       Exec exec) {
  require_same_dimension(ch, P, "verify_recovery");
  if (recovery.channel.dimension != ch.dimension) {
    fail(errc::dimension_mismatch,
         "verify_recovery: recovery dimension mismatch");
  }
  Matrix basis = code_basis(P);

  auto sample_deviation = [&](int index) {
    DensityMatrix tau = random_density(P.rank, derive_seed(seed,
                                       static_cast<std::uint64_t>(index)));
    DensityMatrix sigma{basis * tau.matrix * basis.adjoint()};
    DensityMatrix out = apply(recovery.channel, apply(ch, sigma));
    return (out.matrix - sigma.matrix).norm();
  };

  double worst = 0.0;
  if (exec == Exec::serial) {
    for (int i = 0; i < n_samples; ++i) {
      worst = std::max(worst, sample_deviation(i));
    }
    return worst;
  }
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (int i = 0; i < n_samples; ++i) {
    worst = std::max(worst, sample_deviation(i));
  }
  return worst;
}

}  // namespace rankrange
