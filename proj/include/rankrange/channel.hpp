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

#include <cstdint>
#include <vector>

#include "rankrange/matrix.hpp"
#include "rankrange/types.hpp"

namespace rankrange {

/// Trace-preserving channel in operator-sum form. Probability weights are
/// folded into the operators, so sum_a E_a^dag E_a == identity.
struct KrausChannel {
  int dimension = 0;
  std::vector<Matrix> kraus_ops;
};

/// Mixture of two unitary conjugations with weights p and 1-p.
struct BiUnitaryChannel {
  Matrix V, W;
  double p = 0.5;

  KrausChannel kraus() const;
};

struct DensityMatrix {
  Matrix matrix;
};

/// Validates trace preservation and wraps the operators as a channel.
KrausChannel make_kraus_channel(std::vector<Matrix> ops,
                                const ToleranceConfig& tol = {});

/// Uniformly weighted randomized-unitary channel from a unitary list.
KrausChannel mixed_unitary_channel(const std::vector<Matrix>& unitaries,
                                   const ToleranceConfig& tol = {});

BiUnitaryChannel make_buc(const Matrix& V, const Matrix& W, double p,
                          const ToleranceConfig& tol = {});

/// Reduces a bi-unitary channel to the single unitary V^dag W whose
/// correctable codes coincide with the channel's.
Matrix buc_reduce(const BiUnitaryChannel& ch);

DensityMatrix make_density(const Matrix& rho, const ToleranceConfig& tol = {});

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

Matrix kron(const Matrix& A, const Matrix& B);

Matrix pauli_z();
/// Z on the first of n qubits: Z tensor identity on the rest.
Matrix z1_operator(int n_qubits);
Matrix zz_operator();

/// Haar-distributed unitary, reproducible from the seed alone (the Gaussian
/// source is hand-rolled so the stream does not depend on the standard
/// library's distribution internals).
Matrix random_unitary(int N, std::uint64_t seed);

/// Seeded density matrix supported on all of C^N.
DensityMatrix random_density(int N, std::uint64_t seed);

/// Derives an independent per-item seed from a base seed, for parallel
/// sampling loops that must not depend on iteration order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace rankrange
