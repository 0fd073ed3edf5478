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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rankrange {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Error categories surfaced by the library. The CLI maps these onto its
/// documented exit codes, so every throw site picks the category that
/// describes what the caller got wrong (or what broke internally).
enum class errc {
  not_hermitian,
  not_normal,
  not_unitary,
  numerical_failure,
  dimension_mismatch,
  degenerate_input,
  bad_rank,
  value_outside_range,
  degenerate_chords,
  combinatorial_blowup,
  wrong_dimension,
  bad_probability,
  not_correctable,
  rank_deficiency,
  bad_parameter,
  bad_support,
  not_orthonormal,
  degenerate_spectrum,
  empty_sweep,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw Error(code, what);
}

/// Working tolerances. Every epsilon is a decision of this artifact, not a
/// claim of the underlying theory; defaults are sized for dimensions <= 64
/// in double precision.
struct ToleranceConfig {
  double eps_scalar = 1e-9;      // scalar-compression residuals
  double eps_degenerate = 1e-8;  // eigenvalue clustering
  double eps_recon = 1e-10;      // spectral reconstruction
  double eps_proj = 1e-10;       // projection / hermiticity / unitarity
  double eps_ortho = 1e-10;      // orthonormality
  double eps_tp = 1e-10;         // trace preservation

  void validate() const {
    const double* eps[] = {&eps_scalar, &eps_degenerate, &eps_recon,
                           &eps_proj,   &eps_ortho,      &eps_tp};
    for (const double* e : eps) {
      if (!(*e > 0.0) || !(*e < 1e-3)) {
        fail(errc::bad_parameter,
             "tolerances must lie strictly inside (0, 1e-3)");
      }
    }
  }
};

/// Selects between the serial reference implementation of a search kernel
/// and its OpenMP version. Both produce identical results; the serial one
/// is kept as the oracle for the parallel one.
enum class Exec { serial, parallel };

}  // namespace rankrange
