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

#include "rankrange/channel.hpp"
#include "rankrange/matrix.hpp"
#include "rankrange/types.hpp"

namespace rankrange {

/// The scalar matrix of the correctability condition
/// P E_a^dag E_b P = lambda_ab P. For a trace-preserving channel and a
/// nonzero code it is a density matrix.
struct LambdaMatrix {
  Matrix entries;

  int size() const { return static_cast<int>(entries.rows()); }
};

struct VerificationReport {
  bool correctable = false;
  std::optional<LambdaMatrix> lambda;  // present iff correctable
  // Least-squares lambda estimates regardless of the verdict; equals
  // lambda->entries when correctable.
  Matrix lambda_estimate;
  double max_residual = 0.0;
  Eigen::MatrixXd per_pair_residuals;
};

struct DensityCheckResult {
  bool ok = false;
  double hermiticity_residual = 0.0;
  double min_eigenvalue = 0.0;
  double trace_deviation = 0.0;
};

struct BlockPositivityResult {
  Matrix block;            // the mN x mN matrix with blocks E_i^dag E_j
  double min_eigenvalue = 0.0;
  double residual = 0.0;   // || Ptilde E Ptilde - Lambda (x) P ||_F
};

struct RecoveryChannel {
  KrausChannel channel;
  Projection code;
};

/// Tests the correctability condition for every Kraus pair and reports the
/// residuals; the code is declared correctable when the worst residual
/// stays below tol.eps_scalar.
VerificationReport kl_verify(const KrausChannel& ch, const Projection& P,
                             const ToleranceConfig& tol = {});

/// Hermitian / positive / unit-trace test for a Lambda matrix.
DensityCheckResult lambda_density_check(const LambdaMatrix& lambda,
                                        const ToleranceConfig& tol = {});

/// The Hermitian operators {E_a^dag E_a} plus, for a < b,
/// E_a^dag E_b + E_b^dag E_a and i(E_a^dag E_b - E_b^dag E_a). A projection
/// satisfies the correctability condition iff it compresses every member
/// of this family to a scalar.
std::vector<Matrix> hermitian_family(const KrausChannel& ch);

/// Builds the positive block matrix E = [E_i^dag E_j] and measures how far
/// the block-diagonal compression differs from Lambda (x) P.
BlockPositivityResult block_e_positivity(const KrausChannel& ch,
                                         const Projection& P,
                                         const ToleranceConfig& tol = {});

/// Synthesizes a recovery channel for a verified code: diagonalize Lambda,
/// rotate the errors into mutually orthogonal isometries on the code, and
/// invert each isometry on its range (completing with the projection onto
/// the unreachable subspace).
RecoveryChannel build_recovery(const KrausChannel& ch, const Projection& P,
                               const ToleranceConfig& tol = {});

/// Worst-case Frobenius deviation || R(E(sigma)) - sigma || over seeded
/// random code-supported states.
double verify_recovery(const KrausChannel& ch, const RecoveryChannel& recovery,
                       const Projection& P, int n_samples, std::uint64_t seed,
                       Exec exec = Exec::parallel);

}  // namespace rankrange
