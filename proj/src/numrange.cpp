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

#include "rankrange/numrange.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>

namespace rankrange {

namespace geometry {

namespace {

double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

// Andrew's monotone chain; returns the hull in counter-clockwise order,
// collinear points dropped.
std::vector<Complex> convex_hull(std::vector<Complex> pts) {
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<Complex> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

double distance_to_segment(Complex q, Complex a, Complex b) {
  Complex d = b - a;
  double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(q - a);
  double t = ((q - a).real() * d.real() + (q - a).imag() * d.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(q - (a + t * d));
}

double signed_distance_in_hull(const std::vector<Complex>& pts, Complex q) {
  std::vector<Complex> hull = convex_hull(pts);
  if (hull.empty()) return -std::numeric_limits<double>::infinity();
  if (hull.size() == 1) return -std::abs(q - hull[0]);
  if (hull.size() == 2) return -distance_to_segment(q, hull[0], hull[1]);
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    Complex a = hull[i];
    Complex b = hull[(i + 1) % hull.size()];
    double len = std::abs(b - a);
    // Interior lies to the left of each CCW edge.
    d = std::min(d, cross(a, b, q) / len);
  }
  return d;
}

}  // namespace geometry

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

struct UnitaryClusters {
  Spectrum spectrum;
  std::vector<EigenvalueCluster> clusters;  // sorted by principal argument
};

void require_unitary(const Matrix& U, const ToleranceConfig& tol,
                     const char* who) {
  if (U.rows() != U.cols() || U.rows() == 0) {
    fail(errc::wrong_dimension,
         std::string(who) + ": expected a square matrix");
  }
  if (!is_unitary(U, tol.eps_proj)) {
    fail(errc::not_unitary, std::string(who) + ": input is not unitary");
  }
}

UnitaryClusters cluster_unitary(const Matrix& U, const ToleranceConfig& tol) {
  UnitaryClusters out;
  out.spectrum = normal_eigendecomposition(U, tol);
  out.clusters = cluster_eigenvalues(out.spectrum, tol.eps_degenerate);
  std::stable_sort(out.clusters.begin(), out.clusters.end(),
                   [](const EigenvalueCluster& a, const EigenvalueCluster& b) {
                     return principal_argument(a.value) <
                            principal_argument(b.value);
                   });
  return out;
}

char classify_case(const std::vector<EigenvalueCluster>& clusters) {
  std::vector<int> sizes;
  for (const auto& c : clusters) sizes.push_back(c.multiplicity);
  std::sort(sizes.rbegin(), sizes.rend());
  if (sizes.size() == 4) return 'a';
  if (sizes.size() == 3) return 'b';
  if (sizes.size() == 2) return sizes[0] == 2 ? 'c' : 'd';
  return 'e';
}

Projection projection_from_columns(const Matrix& cols) {
  Projection p;
  p.matrix = cols * cols.adjoint();
  p.rank = static_cast<int>(cols.cols());
  return p;
}

// Solves lambda = a*z1 + (1-a)*z3 for the chord coefficient a in [0, 1].
// The ratio is real up to round-off because lambda lies on the chord;
// anything further off than tol.eps_scalar is a caller error.
double chord_coefficient(Complex lambda, Complex z1, Complex z3,
                         const ToleranceConfig& tol) {
  Complex ratio = (lambda - z3) / (z1 - z3);
  if (std::abs(ratio.imag()) * std::abs(z1 - z3) > tol.eps_scalar) {
    fail(errc::value_outside_range,
         "chord coefficient: value does not lie on the chord");
  }
  return std::clamp(ratio.real(), 0.0, 1.0);
}

// Binomial coefficients saturating at 2^63-1; plenty for N <= 64 subsets.
std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  const std::uint64_t cap = std::numeric_limits<std::int64_t>::max();
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    if (c > cap / num) return cap;
    c = c * num / static_cast<std::uint64_t>(i);
  }
  return c;
}

// Lexicographic unranking of the `rank`-th m-subset of {0..n-1}.
void unrank_combination(std::uint64_t rank, int n, int m, int* out) {
  int v = 0;
  for (int slot = 0; slot < m; ++slot) {
    while (true) {
      std::uint64_t block = binomial(n - v - 1, m - slot - 1);
      if (rank < block) break;
      rank -= block;
      ++v;
    }
    out[slot] = v++;
  }
}

}  // namespace

RangeResult RangeResult::make_empty() { return {}; }

RangeResult RangeResult::make_point(Complex z) {
  RangeResult r;
  r.kind = RangeKind::point;
  r.point = z;
  return r;
}

RangeResult RangeResult::make_interval(double lo, double hi) {
  RangeResult r;
  r.kind = RangeKind::real_interval;
  r.lo = lo;
  r.hi = hi;
  return r;
}

RangeResult RangeResult::make_segment(Complex a, Complex b) {
  RangeResult r;
  r.kind = RangeKind::segment;
  r.endpoints = {a, b};
  return r;
}

bool RangeResult::contains(Complex z, double tol) const {
  switch (kind) {
    case RangeKind::empty:
      return false;
    case RangeKind::point:
      return std::abs(z - point) <= tol;
    case RangeKind::real_interval:
      return std::abs(z.imag()) <= tol && z.real() >= lo - tol &&
             z.real() <= hi + tol;
    case RangeKind::segment:
      return geometry::distance_to_segment(z, endpoints[0], endpoints[1]) <=
             tol;
  }
  return false;
}

RangeResult hermitian_range(const Matrix& H, int k,
                            const ToleranceConfig& tol) {
  const int n = static_cast<int>(H.rows());
  if (k < 1 || k > n) {
    fail(errc::bad_rank, "hermitian_range: k must lie in [1, N]");
  }
  Spectrum spec = hermitian_eigendecomposition(H, tol);
  double lo = spec.values[k - 1].real();
  double hi = spec.values[n - k].real();
  if (std::abs(hi - lo) <= tol.eps_degenerate) {
    return RangeResult::make_point(Complex((lo + hi) / 2.0));
  }
  if (lo < hi) return RangeResult::make_interval(lo, hi);
  return RangeResult::make_empty();
}

Projection hermitian_range_projection(const Matrix& H, int k, double lambda,
                                      const ToleranceConfig& tol) {
  const int n = static_cast<int>(H.rows());
  if (k < 1 || k > n) {
    fail(errc::bad_rank, "hermitian_range_projection: k must lie in [1, N]");
  }
  RangeResult range = hermitian_range(H, k, tol);
  if (!range.contains(Complex(lambda), tol.eps_scalar)) {
    if (2 * k > n) {
      fail(errc::bad_rank,
           "hermitian_range_projection: 2k > N admits at most a singleton "
           "range and lambda is not it");
    }
    fail(errc::value_outside_range,
         "hermitian_range_projection: lambda outside the rank-k range");
  }
  Spectrum spec = hermitian_eigendecomposition(H, tol);
  const int pairs = std::min(k, n - k);
  const int high_base = std::max(k, n - k);
  Matrix cols(n, k);
  int col = 0;
  for (int j = 0; j < pairs; ++j, ++col) {
    double a_lo = spec.values[j].real();
    double a_hi = spec.values[high_base + j].real();
    double t = 0.0;  // sin^2 of the mixing angle
    if (a_hi - a_lo > 0.0) {
      t = std::clamp((lambda - a_lo) / (a_hi - a_lo), 0.0, 1.0);
    }
    cols.col(col) = std::sqrt(1.0 - t) * spec.vectors.col(j) +
                    std::sqrt(t) * spec.vectors.col(high_base + j);
  }
  // 2k > N: the middle eigenvectors all carry the singleton value.
  for (int j = n - k; j < k; ++j, ++col) cols.col(col) = spec.vectors.col(j);
  return projection_from_columns(cols);
}

Complex chord_intersection(Complex z1, Complex z2, Complex z3, Complex z4,
                           const ToleranceConfig& tol) {
  const Complex zs[4] = {z1, z2, z3, z4};
  double prev = -1.0;
  for (const Complex& z : zs) {
    if (std::abs(std::abs(z) - 1.0) > 1e-6) {
      fail(errc::degenerate_chords,
           "chord_intersection: points must be unimodular");
    }
    double a = principal_argument(z);
    if (a <= prev) {
      fail(errc::degenerate_chords,
           "chord_intersection: arguments must be strictly increasing");
    }
    prev = a;
  }
  // z1 + t(z3 - z1) = z2 + s(z4 - z2), solved as a 2x2 real system.
  Complex d13 = z3 - z1;
  Complex d24 = z4 - z2;
  double det = -d13.real() * d24.imag() + d13.imag() * d24.real();
  if (std::abs(det) <= tol.eps_scalar) {
    fail(errc::numerical_failure, "chord_intersection: chords are parallel");
  }
  Complex rhs = z2 - z1;
  double t = (-rhs.real() * d24.imag() + rhs.imag() * d24.real()) / det;
  return z1 + t * d13;
}

RangeResult unitary4_rank2_range(const Matrix& U, const ToleranceConfig& tol) {
  if (U.rows() != 4 || U.cols() != 4) {
    fail(errc::wrong_dimension, "unitary4_rank2_range: expected 4x4");
  }
  require_unitary(U, tol, "unitary4_rank2_range");
  UnitaryClusters uc = cluster_unitary(U, tol);
  char label = classify_case(uc.clusters);
  RangeResult result;
  switch (label) {
    case 'a':
      result = RangeResult::make_point(
          chord_intersection(uc.clusters[0].value, uc.clusters[1].value,
                             uc.clusters[2].value, uc.clusters[3].value, tol));
      break;
    case 'b': {
      for (const auto& c : uc.clusters) {
        if (c.multiplicity == 2) result = RangeResult::make_point(c.value);
      }
      break;
    }
    case 'c':
      result = RangeResult::make_segment(uc.clusters[0].value,
                                         uc.clusters[1].value);
      break;
    case 'd': {
      for (const auto& c : uc.clusters) {
        if (c.multiplicity == 3) result = RangeResult::make_point(c.value);
      }
      break;
    }
    case 'e':
      result = RangeResult::make_point(uc.clusters[0].value);
      break;
  }
  result.case_label = label;
  return result;
}

Projection unitary4_rank2_projection(const Matrix& U, Complex lambda,
                                     const ToleranceConfig& tol) {
  if (U.rows() != 4 || U.cols() != 4) {
    fail(errc::wrong_dimension, "unitary4_rank2_projection: expected 4x4");
  }
  require_unitary(U, tol, "unitary4_rank2_projection");
  UnitaryClusters uc = cluster_unitary(U, tol);
  char label = classify_case(uc.clusters);
  RangeResult range = unitary4_rank2_range(U, tol);
  if (!range.contains(lambda, tol.eps_scalar)) {
    fail(errc::value_outside_range,
         "unitary4_rank2_projection: lambda outside the rank-2 range");
  }
  const Matrix& vecs = uc.spectrum.vectors;
  Matrix cols(4, 2);
  switch (label) {
    case 'a': {
      double a = chord_coefficient(lambda, uc.clusters[0].value,
                                   uc.clusters[2].value, tol);
      double c = chord_coefficient(lambda, uc.clusters[1].value,
                                   uc.clusters[3].value, tol);
      cols.col(0) = std::sqrt(a) * vecs.col(uc.clusters[0].members[0]) +
                    std::sqrt(1.0 - a) * vecs.col(uc.clusters[2].members[0]);
      cols.col(1) = std::sqrt(c) * vecs.col(uc.clusters[1].members[0]) +
                    std::sqrt(1.0 - c) * vecs.col(uc.clusters[3].members[0]);
      break;
    }
    case 'b': {
      for (const auto& c : uc.clusters) {
        if (c.multiplicity == 2) {
          cols.col(0) = vecs.col(c.members[0]);
          cols.col(1) = vecs.col(c.members[1]);
        }
      }
      break;
    }
    case 'c': {
      const EigenvalueCluster& z = uc.clusters[0];
      const EigenvalueCluster& w = uc.clusters[1];
      double a = chord_coefficient(lambda, z.value, w.value, tol);
      cols.col(0) = std::sqrt(a) * vecs.col(z.members[0]) +
                    std::sqrt(1.0 - a) * vecs.col(w.members[0]);
      cols.col(1) = std::sqrt(a) * vecs.col(z.members[1]) +
                    std::sqrt(1.0 - a) * vecs.col(w.members[1]);
      break;
    }
    case 'd': {
      for (const auto& c : uc.clusters) {
        if (c.multiplicity == 3) {
          cols.col(0) = vecs.col(c.members[0]);
          cols.col(1) = vecs.col(c.members[1]);
        }
      }
      break;
    }
    case 'e':
      cols.col(0) = vecs.col(0);
      cols.col(1) = vecs.col(1);
      break;
  }
  return projection_from_columns(cols);
}

RangeShapeConstraints range_shape_constraints(int N, int k) {
  if (N < 1 || k < 1 || k > N) {
    fail(errc::bad_rank, "range_shape_constraints: k must lie in [1, N]");
  }
  RangeShapeConstraints out;
  if (k == N) {
    out.kind = RangeShapeConstraints::Kind::scalar_only;
    out.min_geometric_multiplicity = N;
  } else if (2 * k > N) {
    out.kind = RangeShapeConstraints::Kind::empty_or_singleton;
    out.min_geometric_multiplicity = 2 * k - N;
  }
  return out;
}

bool normal_hull_membership(const Matrix& A, int k, Complex lambda,
                            const ToleranceConfig& tol,
                            const HullOptions& opts) {
  const int n = static_cast<int>(A.rows());
  if (k < 1 || k > n) {
    fail(errc::bad_rank, "normal_hull_membership: k must lie in [1, N]");
  }
  Spectrum spec = normal_eigendecomposition(A, tol);
  const int m = n + 1 - k;  // subset size
  const std::uint64_t count = binomial(n, m);
  if (count > opts.subset_cap) {
    fail(errc::combinatorial_blowup,
         "normal_hull_membership: C(N, k-1) exceeds the configured cap");
  }
  std::vector<Complex> values(spec.values.data(), spec.values.data() + n);
  const double eps = tol.eps_scalar;

  auto subset_ok = [&](std::uint64_t rank, int* scratch) {
    unrank_combination(rank, n, m, scratch);
    std::vector<Complex> pts(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
      pts[static_cast<std::size_t>(i)] = values[scratch[i]];
    return geometry::signed_distance_in_hull(pts, lambda) >= -eps;
  };

  if (opts.exec == Exec::serial) {
    std::vector<int> scratch(static_cast<std::size_t>(m));
    for (std::uint64_t r = 0; r < count; ++r) {
      if (!subset_ok(r, scratch.data())) return false;
    }
    return true;
  }

  std::atomic<bool> violated{false};
  const std::int64_t total = static_cast<std::int64_t>(count);
#pragma omp parallel
  {
    std::vector<int> scratch(static_cast<std::size_t>(m));
#pragma omp for schedule(static)
    for (std::int64_t r = 0; r < total; ++r) {
      if (violated.load(std::memory_order_relaxed)) continue;
      if (!subset_ok(static_cast<std::uint64_t>(r), scratch.data())) {
        violated.store(true, std::memory_order_relaxed);
      }
    }
  }
  return !violated.load();
}

std::pair<Complex, Projection> unitary_rank2_any_dim(
    const Matrix& U, const ToleranceConfig& tol) {
  const int n = static_cast<int>(U.rows());
  if (n < 4) {
    fail(errc::wrong_dimension, "unitary_rank2_any_dim: dimension must be >= 4");
  }
  require_unitary(U, tol, "unitary_rank2_any_dim");
  UnitaryClusters uc = cluster_unitary(U, tol);
  const Matrix& vecs = uc.spectrum.vectors;

  // Degeneracy shortcut: a repeated eigenvalue is itself a compression-value
  // via any rank-2 sub-projection of its eigenspace.
  for (const auto& c : uc.clusters) {
    if (c.multiplicity >= 2) {
      Matrix cols(n, 2);
      cols.col(0) = vecs.col(c.members[0]);
      cols.col(1) = vecs.col(c.members[1]);
      return {c.value, projection_from_columns(cols)};
    }
  }

  // Nondegenerate: pick the eigenvalue quadruple whose chords cross at the
  // widest angle, then pair within its 4-dimensional invariant subspace.
  const int m = static_cast<int>(uc.clusters.size());
  std::array<int, 4> best{0, 1, 2, 3};
  auto chord_angle = [&](int i, int j, int l, int r) {
    Complex d13 = uc.clusters[l].value - uc.clusters[i].value;
    Complex d24 = uc.clusters[r].value - uc.clusters[j].value;
    double cr = d13.real() * d24.imag() - d13.imag() * d24.real();
    return std::abs(cr) / (std::abs(d13) * std::abs(d24));
  };
  if (m <= 12) {
    double best_score = -1.0;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        for (int c = b + 1; c < m; ++c)
          for (int d = c + 1; d < m; ++d) {
            double s = chord_angle(a, b, c, d);
            if (s > best_score) {
              best_score = s;
              best = {a, b, c, d};
            }
          }
  } else {
    // Four clusters nearest the quadrant-center arguments.
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    std::array<int, 4> pick{};
    for (int t = 0; t < 4; ++t) {
      double target = (2.0 * t + 1.0) * kPi / 4.0;
      int arg_best = -1;
      double dist_best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < m; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        double a = principal_argument(uc.clusters[static_cast<std::size_t>(j)]
                                          .value);
        double d = std::abs(a - target);
        d = std::min(d, 2.0 * kPi - d);
        if (d < dist_best) {
          dist_best = d;
          arg_best = j;
        }
      }
      used[static_cast<std::size_t>(arg_best)] = true;
      pick[static_cast<std::size_t>(t)] = arg_best;
    }
    std::sort(pick.begin(), pick.end());
    best = pick;
  }

  Complex z1 = uc.clusters[best[0]].value;
  Complex z2 = uc.clusters[best[1]].value;
  Complex z3 = uc.clusters[best[2]].value;
  Complex z4 = uc.clusters[best[3]].value;
  Complex lambda = chord_intersection(z1, z2, z3, z4, tol);
  double a = chord_coefficient(lambda, z1, z3, tol);
  double c = chord_coefficient(lambda, z2, z4, tol);
  Matrix cols(n, 2);
  cols.col(0) = std::sqrt(a) * vecs.col(uc.clusters[best[0]].members[0]) +
                std::sqrt(1.0 - a) * vecs.col(uc.clusters[best[2]].members[0]);
  cols.col(1) = std::sqrt(c) * vecs.col(uc.clusters[best[1]].members[0]) +
                std::sqrt(1.0 - c) * vecs.col(uc.clusters[best[3]].members[0]);
  return {lambda, projection_from_columns(cols)};
}

RangePlotData unitary4_plot_data(const Matrix& U, const ToleranceConfig& tol) {
  RangePlotData data;
  data.unit_circle = true;
  UnitaryClusters uc = cluster_unitary(U, tol);
  for (Eigen::Index j = 0; j < uc.spectrum.size(); ++j) {
    data.spectrum.push_back(uc.spectrum.values[j]);
  }
  data.range = unitary4_rank2_range(U, tol);
  if (data.range.case_label == 'a') {
    data.chords.push_back({uc.clusters[0].value, uc.clusters[2].value});
    data.chords.push_back({uc.clusters[1].value, uc.clusters[3].value});
  } else if (data.range.case_label == 'c') {
    data.chords.push_back({uc.clusters[0].value, uc.clusters[1].value});
  }
  return data;
}

RangePlotData hermitian_plot_data(const Matrix& H, int k,
                                  const ToleranceConfig& tol) {
  RangePlotData data;
  data.unit_circle = false;
  Spectrum spec = hermitian_eigendecomposition(H, tol);
  for (Eigen::Index j = 0; j < spec.size(); ++j) {
    data.spectrum.push_back(spec.values[j]);
  }
  data.range = hermitian_range(H, k, tol);
  return data;
}

}  // namespace rankrange
