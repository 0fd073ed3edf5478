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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rankrange/channel.hpp"
#include "rankrange/numrange.hpp"
#include "rankrange/qec.hpp"

namespace rankrange {

/// A code subspace together with the scalar compression values of the error
/// pair products it realizes. The (a, b) entry of `compression_values`
/// covers the product of errors a and b in the operator basis of the
/// function that produced the code (weights folded in where the source was
/// a weighted channel, unweighted operators for the Pauli-demo builders).
struct CodeProjection {
  Projection projection;
  Matrix compression_values;
};

struct CodeFamily {
  std::string channel_fingerprint;
  std::vector<std::pair<CodeProjection, LambdaMatrix>> codes;
  bool exhaustive = false;
  std::string notes;
};

/// Angle parameterization of a generic two-qubit code vector: coefficients
/// in the eigenbasis are
///   a_k = cos(alpha_k) cos(beta_k)
///   b_k = e^{i theta_k2} sin(alpha_k) cos(gamma_k)
///   c_k = e^{i theta_k3} cos(alpha_k) sin(beta_k)
///   d_k = e^{i theta_k4} sin(alpha_k) sin(gamma_k)
struct TwoQubitCodeParams {
  std::array<double, 2> alpha{};
  std::array<double, 2> beta{};
  std::array<double, 2> gamma{};
  std::array<std::array<double, 3>, 2> theta{};  // theta[k][j-2], j = 2,3,4

  Eigen::Vector4cd coefficients(int k) const;
};

struct SweepSpec {
  long points = 10000;
  Exec exec = Exec::parallel;
};

struct SearchSpec {
  long trials = 100000;
  Exec exec = Exec::parallel;
};

struct FindCodesOptions {
  int grid = 11;           // lambda samples across a segment-valued range
  long sweep_points = 24;  // extra generic-case family samples (0 disables)
  Exec exec = Exec::parallel;
};

struct MultiSearchResult {
  std::optional<CodeProjection> code;
  bool proven_empty = false;
  long trials_used = 0;
};

/// Correctable rank-2 codes for the bi-unitary channel {V, W} at weight p,
/// found through the rank-2 range of V^dag W: the pairing projection for
/// each compression-value, plus sampled members of the continuous solution
/// family in the generic case. Every emitted code is re-verified against
/// the weighted channel.
CodeFamily find_codes_buc4(const Matrix& V, const Matrix& W, double p,
                           std::uint64_t seed, const FindCodesOptions& opts = {},
                           const ToleranceConfig& tol = {});

/// The interpolating code family for the error model {1, ZZ}:
/// psi1 = sqrt(a)|00> + sqrt(1-a)|01>, psi2 = sqrt(a)|11> + sqrt(1-a)|10>,
/// with compression value 2a - 1.
CodeProjection zz_code(double a, const ToleranceConfig& tol = {});

/// A rank-2 code for {1, Z1} at compression value 0, built from an
/// orthonormal pair in each Z1 eigenspace: the code is spanned by
/// psi_plus + psi_minus and phi_plus + phi_minus.
CodeProjection z1_code(const Vector& psi_plus, const Vector& phi_plus,
                       const Vector& psi_minus, const Vector& phi_minus,
                       const ToleranceConfig& tol = {});

/// Samples the full solution family of PUP = lambda*P for a 4x4 unitary
/// with non-degenerate spectrum (lambda the unique compression-value):
/// each sweep point draws a first code vector from the angle
/// parameterization, completes it through the orthocomplement of
/// {xi1, U'xi1, U'^dag xi1}, and keeps the pair when the completion also
/// compresses to zero.
std::vector<CodeProjection> twoqubit_generic_solve(
    const Matrix& U, const SweepSpec& sweep, std::uint64_t seed,
    const ToleranceConfig& tol = {});

/// One deterministic point of the generic-case family: the codes reachable
/// from the first-vector angles (alpha, theta2, theta3, theta4). The beta
/// and gamma angles are fixed by the shifted spectrum; alpha = 0 recovers
/// the eigenvalue-pairing construction.
std::vector<CodeProjection> twoqubit_codes_at_point(
    const Matrix& U, double alpha, double theta2, double theta3, double theta4,
    const ToleranceConfig& tol = {});

/// Best-effort search for one rank-k projection compressing every pairwise
/// product U_i^dag U_j to a scalar (checked through the Hermitian family
/// reduction). Absence is a search outcome unless the forced singleton
/// compression-values are provably incompatible, in which case
/// `proven_empty` is set.
MultiSearchResult multi_unitary_common_code(
    const std::vector<Matrix>& unitaries, int k, const SearchSpec& budget,
    std::uint64_t seed, const ToleranceConfig& tol = {});

/// FNV-1a digest of a channel's dimension and operator entries, used to tie
/// a CodeFamily to the channel it was computed for.
std::string channel_fingerprint(const KrausChannel& ch);

}  // namespace rankrange
