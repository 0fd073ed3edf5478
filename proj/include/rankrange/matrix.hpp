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

#pragma once

#include <optional>
#include <vector>

#include "rankrange/types.hpp"

namespace rankrange {

enum class EigenvalueOrdering { ascending_real, ascending_argument };

/// Ordered eigenpairs of a Hermitian or normal operator. Columns of
/// `vectors` form an orthonormal basis; `values[j]` belongs to column j.
struct Spectrum {
  Vector values;
  Matrix vectors;
  EigenvalueOrdering ordering = EigenvalueOrdering::ascending_real;

  Eigen::Index size() const { return values.size(); }
};

/// Orthogonal projection of known rank. `matrix` is Hermitian and
/// idempotent within the working tolerances; trace(matrix) == rank.
struct Projection {
  Matrix matrix;
  int rank = 0;
};

struct EigenvalueCluster {
  Complex value;               // arithmetic mean of the members
  int multiplicity = 0;
  std::vector<int> members;    // indices into the source Spectrum
};

/// Frobenius norm shorthand used throughout the residual tests.
double frobenius(const Matrix& A);

/// Principal argument mapped to [0, 2*pi).
double principal_argument(Complex z);

double hermiticity_residual(const Matrix& A);
double normality_residual(const Matrix& A);
double unitarity_residual(const Matrix& U);

bool is_hermitian(const Matrix& A, double eps);
bool is_normal(const Matrix& A, double eps);
bool is_unitary(const Matrix& U, double eps);

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending by real
/// part, orthonormal eigenbasis. Throws NotHermitian when the relative
/// hermiticity residual exceeds tol.eps_proj.
Spectrum hermitian_eigendecomposition(const Matrix& H,
                                      const ToleranceConfig& tol = {});

/// Eigendecomposition of a normal matrix. Hermitian inputs are ordered by
/// ascending real part; all others (unitaries in particular) by ascending
/// principal argument in [0, 2*pi). The eigenbasis is orthonormal even
/// across degenerate eigenspaces.
Spectrum normal_eigendecomposition(const Matrix& A,
                                   const ToleranceConfig& tol = {});

/// Tests whether P compresses A to a scalar: PAP == lambda*P. Returns the
/// least-squares estimate lambda = trace(PAP)/rank(P) when the residual
/// ||PAP - lambda P||_F stays below tol * max(1, ||A||_F), absent otherwise.
std::optional<Complex> scalar_compression_check(const Matrix& A,
                                                const Projection& P,
                                                double tol);

/// Orthogonal projection onto the span of the given vectors (rank = count).
/// Throws DegenerateInput when the normalized Gram matrix has an eigenvalue
/// below tol.eps_ortho.
Projection projection_from_vectors(const std::vector<Vector>& vectors,
                                   const ToleranceConfig& tol = {});

/// Groups eigenvalues by the transitive closure of pairwise distance < tol.
/// Clusters are reported in order of first appearance; multiplicities sum
/// to the spectrum size.
std::vector<EigenvalueCluster> cluster_eigenvalues(const Spectrum& spec,
                                                   double tol);

}  // namespace rankrange
