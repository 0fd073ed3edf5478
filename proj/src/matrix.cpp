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

#include "rankrange/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rankrange {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_square(const Matrix& A, const char* who) {
  if (A.rows() != A.cols() || A.rows() == 0) {
    fail(errc::dimension_mismatch,
         std::string(who) + ": expected a non-empty square matrix");
  }
}

bool exactly_diagonal(const Matrix& A) {
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      if (i != j && A(i, j) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

// Rotate each column so its largest-magnitude entry is real positive. A
// permutation-like basis stays bit-exact; generic bases become reproducible
// up to the solver's own determinism.
void canonicalize_phases(Matrix& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      double a = std::abs(vectors(i, j));
      if (a > best) {
        best = a;
        imax = i;
      }
    }
    Complex pivot = vectors(imax, j);
    if (best > 0.0 && (pivot.imag() != 0.0 || pivot.real() < 0.0)) {
      vectors.col(j) *= std::conj(pivot) / best;
    }
  }
}

Spectrum sorted_spectrum(Vector values, Matrix vectors,
                         EigenvalueOrdering ordering) {
  const Eigen::Index n = values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  auto key_real = [&](Eigen::Index i, Eigen::Index j) {
    if (values[i].real() != values[j].real())
      return values[i].real() < values[j].real();
    return values[i].imag() < values[j].imag();
  };
  auto key_arg = [&](Eigen::Index i, Eigen::Index j) {
    double ai = principal_argument(values[i]);
    double aj = principal_argument(values[j]);
    if (ai != aj) return ai < aj;
    return std::abs(values[i]) < std::abs(values[j]);
  };
  if (ordering == EigenvalueOrdering::ascending_real) {
    std::stable_sort(order.begin(), order.end(), key_real);
  } else {
    std::stable_sort(order.begin(), order.end(), key_arg);
  }
  Spectrum out;
  out.values.resize(n);
  out.vectors.resize(vectors.rows(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values[j] = values[order[static_cast<std::size_t>(j)]];
    out.vectors.col(j) = vectors.col(order[static_cast<std::size_t>(j)]);
  }
  out.ordering = ordering;
  canonicalize_phases(out.vectors);
  return out;
}

}  // namespace

double frobenius(const Matrix& A) { return A.norm(); }

double principal_argument(Complex z) {
  double a = std::arg(z);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

double hermiticity_residual(const Matrix& A) {
  return (A - A.adjoint()).norm();
}

double normality_residual(const Matrix& A) {
  return (A * A.adjoint() - A.adjoint() * A).norm();
}

double unitarity_residual(const Matrix& U) {
  return (U.adjoint() * U - Matrix::Identity(U.rows(), U.cols())).norm();
}

bool is_hermitian(const Matrix& A, double eps) {
  return hermiticity_residual(A) <= eps * std::max(1.0, A.norm());
}

bool is_normal(const Matrix& A, double eps) {
  double n = A.norm();
  return normality_residual(A) <= eps * std::max(1.0, n * n);
}

bool is_unitary(const Matrix& U, double eps) {
  if (U.rows() != U.cols()) return false;
  return unitarity_residual(U) <= eps * std::max(1.0, U.norm());
}

Spectrum hermitian_eigendecomposition(const Matrix& H,
                                      const ToleranceConfig& tol) {
  require_square(H, "hermitian_eigendecomposition");
  if (hermiticity_residual(H) > tol.eps_proj * H.norm() &&
      hermiticity_residual(H) > tol.eps_proj) {
    fail(errc::not_hermitian,
         "hermitian_eigendecomposition: input is not Hermitian");
  }
  const Eigen::Index n = H.rows();
  if (exactly_diagonal(H)) {
    Vector values(n);
    for (Eigen::Index j = 0; j < n; ++j) values[j] = Complex(H(j, j).real());
    return sorted_spectrum(values, Matrix::Identity(n, n),
                           EigenvalueOrdering::ascending_real);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver((H + H.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success) {
    fail(errc::numerical_failure,
         "hermitian_eigendecomposition: iteration failed to converge");
  }
  Vector values = solver.eigenvalues().cast<Complex>();
  return sorted_spectrum(values, solver.eigenvectors(),
                         EigenvalueOrdering::ascending_real);
}

Spectrum normal_eigendecomposition(const Matrix& A,
                                   const ToleranceConfig& tol) {
  require_square(A, "normal_eigendecomposition");
  const double n2 = A.norm() * A.norm();
  if (normality_residual(A) > tol.eps_proj * n2 &&
      normality_residual(A) > tol.eps_proj) {
    fail(errc::not_normal, "normal_eigendecomposition: input is not normal");
  }
  if (hermiticity_residual(A) <= tol.eps_proj * std::max(1.0, A.norm())) {
    return hermitian_eigendecomposition(A, tol);
  }
  const Eigen::Index n = A.rows();
  if (exactly_diagonal(A)) {
    return sorted_spectrum(A.diagonal(), Matrix::Identity(n, n),
                           EigenvalueOrdering::ascending_argument);
  }
  // The Schur basis of a normal matrix is an orthonormal eigenbasis: the
  // triangular factor is diagonal up to round-off, so degenerate eigenspaces
  // come out orthonormal for free.
  Eigen::ComplexSchur<Matrix> schur(A, /*computeU=*/true);
  if (schur.info() != Eigen::Success) {
    fail(errc::numerical_failure,
         "normal_eigendecomposition: Schur iteration failed to converge");
  }
  return sorted_spectrum(schur.matrixT().diagonal(), schur.matrixU(),
                         EigenvalueOrdering::ascending_argument);
}

std::optional<Complex> scalar_compression_check(const Matrix& A,
                                                const Projection& P,
                                                double tol) {
  if (A.rows() != P.matrix.rows() || A.cols() != P.matrix.cols()) {
    fail(errc::dimension_mismatch,
         "scalar_compression_check: operator and projection dimensions "
         "differ");
  }
  Matrix pap = P.matrix * A * P.matrix;
  Complex lambda = pap.trace() / static_cast<double>(P.rank);
  double residual = (pap - lambda * P.matrix).norm();
  if (residual <= tol * std::max(1.0, A.norm())) return lambda;
  return std::nullopt;
}

Projection projection_from_vectors(const std::vector<Vector>& vectors,
                                   const ToleranceConfig& tol) {
  if (vectors.empty()) {
    fail(errc::degenerate_input, "projection_from_vectors: no vectors given");
  }
  const Eigen::Index dim = vectors.front().size();
  Matrix V(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != dim) {
      fail(errc::dimension_mismatch,
           "projection_from_vectors: mixed vector dimensions");
    }
    double norm = vectors[j].norm();
    if (norm <= tol.eps_ortho) {
      fail(errc::degenerate_input,
           "projection_from_vectors: zero-length vector");
    }
    V.col(static_cast<Eigen::Index>(j)) = vectors[j] / norm;
  }
  Matrix gram = V.adjoint() * V;
  Eigen::SelfAdjointEigenSolver<Matrix> gev(gram);
  if (gev.eigenvalues().minCoeff() < tol.eps_ortho) {
    fail(errc::degenerate_input,
         "projection_from_vectors: vectors are numerically dependent");
  }
  Eigen::HouseholderQR<Matrix> qr(V);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, V.cols());
  Projection p;
  p.matrix = q * q.adjoint();
  p.rank = static_cast<int>(vectors.size());
  return p;
}

std::vector<EigenvalueCluster> cluster_eigenvalues(const Spectrum& spec,
                                                   double tol) {
  const int n = static_cast<int>(spec.size());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x)
      x = parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(
              parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(spec.values[i] - spec.values[j]) < tol) {
        int ri = find(i), rj = find(j);
        if (ri != rj) parent[static_cast<std::size_t>(std::max(ri, rj))] =
            std::min(ri, rj);
      }
    }
  }
  std::vector<EigenvalueCluster> clusters;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<int>(clusters.size());
      clusters.push_back({});
    }
    EigenvalueCluster& c = clusters[static_cast<std::size_t>(
        slot[static_cast<std::size_t>(r)])];
    c.members.push_back(i);
    c.multiplicity += 1;
  }
  for (EigenvalueCluster& c : clusters) {
    Complex sum = 0.0;
    for (int i : c.members) sum += spec.values[i];
    c.value = sum / static_cast<double>(c.multiplicity);
  }
  return clusters;
}

}  // namespace rankrange
