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
#include <optional>
#include <utility>
#include <vector>

#include "rankrange/matrix.hpp"
#include "rankrange/types.hpp"

namespace rankrange {

enum class RangeKind { empty, point, real_interval, segment };

/// The rank-k numerical range of the operators handled here is always one
/// of: empty, a single point, a real interval, or a complex line segment.
/// For 4x4 unitaries, `case_label` records which branch of the case
/// analysis ('a'..'e') classified the spectrum.
struct RangeResult {
  RangeKind kind = RangeKind::empty;
  Complex point{};
  double lo = 0.0, hi = 0.0;
  std::array<Complex, 2> endpoints{};
  std::optional<char> case_label;

  static RangeResult make_empty();
  static RangeResult make_point(Complex z);
  static RangeResult make_interval(double lo, double hi);
  static RangeResult make_segment(Complex a, Complex b);

  /// Membership within an absolute distance tolerance.
  bool contains(Complex z, double tol) const;
};

struct RangeShapeConstraints {
  enum class Kind { unconstrained, empty_or_singleton, scalar_only };
  Kind kind = Kind::unconstrained;
  // Lower bound on the geometric multiplicity any compression-value must
  // have as an eigenvalue (0 when unconstrained).
  int min_geometric_multiplicity = 0;
};

struct HullOptions {
  std::size_t subset_cap = 1000000;
  Exec exec = Exec::parallel;
};

/// Rank-k numerical range of a Hermitian operator: the interval between the
/// k-th smallest and k-th largest eigenvalues, collapsing to a point or to
/// the empty set as those cross.
RangeResult hermitian_range(const Matrix& H, int k,
                            const ToleranceConfig& tol = {});

/// Rank-k projection P with PHP = lambda*P, built by pairing eigenvectors
/// of low and high eigenvalues so each pair's Rayleigh quotient hits
/// lambda. Requires lambda inside hermitian_range(H, k).
Projection hermitian_range_projection(const Matrix& H, int k, double lambda,
                                      const ToleranceConfig& tol = {});

/// Intersection of the chord z1--z3 with the chord z2--z4 for four
/// distinct unimodular points in strictly increasing argument order. The
/// interleaving guarantees the chords cross.
Complex chord_intersection(Complex z1, Complex z2, Complex z3, Complex z4,
                           const ToleranceConfig& tol = {});

/// Rank-2 numerical range of a 4x4 unitary, classified by the degeneracy
/// structure of its spectrum (cases 'a' through 'e').
RangeResult unitary4_rank2_range(const Matrix& U,
                                 const ToleranceConfig& tol = {});

/// Rank-2 projection achieving PUP = lambda*P for lambda in the rank-2
/// range of a 4x4 unitary.
Projection unitary4_rank2_projection(const Matrix& U, Complex lambda,
                                     const ToleranceConfig& tol = {});

/// Structural constraints on the rank-k range implied by dimension alone.
RangeShapeConstraints range_shape_constraints(int N, int k);

/// Necessary-condition test for lambda in the rank-k range of a normal
/// operator: lambda must lie in the convex hull of every (N+1-k)-point
/// multisubset of the spectrum. Returning false proves non-membership;
/// returning true does not prove membership.
bool normal_hull_membership(const Matrix& A, int k, Complex lambda,
                            const ToleranceConfig& tol = {},
                            const HullOptions& opts = {});

/// A compression-value of rank 2 together with its realizing projection,
/// for a unitary of any dimension >= 4. Uses a degenerate eigenspace when
/// one exists, otherwise the chord pairing over a chosen eigenvalue
/// quadruple.
std::pair<Complex, Projection> unitary_rank2_any_dim(
    const Matrix& U, const ToleranceConfig& tol = {});

/// Geometry handed to the CLI for plotting: spectrum points, the chords
/// used by the construction (when any), and the computed range.
struct RangePlotData {
  std::vector<Complex> spectrum;
  std::vector<std::pair<Complex, Complex>> chords;
  RangeResult range;
  bool unit_circle = false;
};

RangePlotData unitary4_plot_data(const Matrix& U,
                                 const ToleranceConfig& tol = {});
RangePlotData hermitian_plot_data(const Matrix& H, int k,
                                  const ToleranceConfig& tol = {});

namespace geometry {
/// Signed distance from q to the convex hull of pts: positive inside,
/// negative outside, zero on the boundary. Degenerate hulls (collinear or
/// coincident points) are handled as segments or points.
double signed_distance_in_hull(const std::vector<Complex>& pts, Complex q);

double distance_to_segment(Complex q, Complex a, Complex b);
}  // namespace geometry

}  // namespace rankrange
