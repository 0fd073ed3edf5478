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

#include <doctest.h>

#include <cmath>

#include "rankrange/channel.hpp"
#include "rankrange/numrange.hpp"
#include "test_util.hpp"

using namespace rankrange;
using testutil::basis_vector;
using testutil::random_hermitian;

namespace {

Matrix diag(std::vector<Complex> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) m(j, j) = entries[j];
  return m;
}

const Complex kI(0.0, 1.0);

}  // namespace

TEST_SUITE("numrange") {

TEST_CASE("hermitian range of diag(1,2,3,4)") {
  Matrix h = diag({1.0, 2.0, 3.0, 4.0});
  RangeResult r1 = hermitian_range(h, 1);
  CHECK(r1.kind == RangeKind::real_interval);
  CHECK(r1.lo == 1.0);
  CHECK(r1.hi == 4.0);
  RangeResult r2 = hermitian_range(h, 2);
  CHECK(r2.kind == RangeKind::real_interval);
  CHECK(r2.lo == 2.0);
  CHECK(r2.hi == 3.0);
  CHECK(hermitian_range(h, 3).kind == RangeKind::empty);
  CHECK(hermitian_range(h, 4).kind == RangeKind::empty);
  CHECK_THROWS_AS(hermitian_range(h, 0), Error);
  CHECK_THROWS_AS(hermitian_range(h, 5), Error);
}

TEST_CASE("hermitian range of the Pauli operators") {
  RangeResult z1 = hermitian_range(pauli_z(), 1);
  CHECK(z1.kind == RangeKind::real_interval);
  CHECK(z1.lo == -1.0);
  CHECK(z1.hi == 1.0);
  CHECK(hermitian_range(pauli_z(), 2).kind == RangeKind::empty);

  for (int n : {2, 3}) {
    Matrix zfirst = z1_operator(n);
    int half = 1 << (n - 1);
    for (int k = 1; k <= 2 * half; ++k) {
      RangeResult r = hermitian_range(zfirst, k);
      if (k <= half) {
        CHECK(r.kind == RangeKind::real_interval);
        CHECK(r.lo == -1.0);
        CHECK(r.hi == 1.0);
      } else {
        CHECK(r.kind == RangeKind::empty);
      }
    }
  }
}

TEST_CASE("hermitian range projection hits the target value") {
  Matrix h = diag({1.0, 2.0, 3.0, 4.0});
  Projection p = hermitian_range_projection(h, 2, 2.5);
  CHECK(p.rank == 2);
  auto lambda = scalar_compression_check(h, p, 1e-9);
  REQUIRE(lambda.has_value());
  CHECK(std::abs(*lambda - Complex(2.5)) <= 1e-9);
  CHECK((p.matrix * h * p.matrix - 2.5 * p.matrix).norm() <= 1e-9);
}

TEST_CASE("Z1 pairing code at lambda = 0 mixes the eigenspaces evenly") {
  Matrix z1 = z1_operator(2);
  Projection p = hermitian_range_projection(z1, 2, 0.0);
  CHECK((p.matrix * z1 * p.matrix).norm() <= 1e-9);
  // Each code vector splits half-and-half between the two eigenspaces.
  Matrix plus = Matrix::Zero(4, 4);
  plus(0, 0) = plus(1, 1) = 1.0;
  Matrix minus = Matrix::Identity(4, 4) - plus;
  Eigen::SelfAdjointEigenSolver<Matrix> es(p.matrix);
  for (int j = 2; j < 4; ++j) {  // range eigenvectors
    Vector v = es.eigenvectors().col(j);
    CHECK(std::abs((plus * v).squaredNorm() - 0.5) <= 1e-9);
    CHECK(std::abs((minus * v).squaredNorm() - 0.5) <= 1e-9);
  }
}

TEST_CASE("projection request outside the range fails") {
  Matrix h = diag({1.0, 2.0, 3.0, 4.0});
  CHECK_THROWS_AS(hermitian_range_projection(h, 2, 3.5), Error);
}

TEST_CASE("singleton range with 2k > N") {
  Matrix h = diag({1.0, 2.0, 2.0, 2.0, 3.0});
  RangeResult r = hermitian_range(h, 3);
  REQUIRE(r.kind == RangeKind::point);
  CHECK(std::abs(r.point - Complex(2.0)) <= 1e-12);
  Projection p = hermitian_range_projection(h, 3, 2.0);
  CHECK(p.rank == 3);
  CHECK((p.matrix * h * p.matrix - 2.0 * p.matrix).norm() <= 1e-9);
  CHECK_THROWS_AS(hermitian_range_projection(h, 3, 1.0), Error);
}

TEST_CASE("endpoint projections are achievable") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Matrix h = random_hermitian(6, seed);
    Spectrum spec = hermitian_eigendecomposition(h);
    for (int k = 1; 2 * k <= 6; ++k) {
      RangeResult r = hermitian_range(h, k);
      if (r.kind != RangeKind::real_interval) continue;
      for (double lambda : {r.lo, r.hi}) {
        Projection p = hermitian_range_projection(h, k, lambda);
        CHECK((p.matrix * h * p.matrix - lambda * p.matrix).norm() <=
              1e-9 * std::max(1.0, h.norm()));
      }
    }
  }
}

TEST_CASE("inclusion chain of hermitian ranges") {
  for (std::uint64_t seed : {11u, 12u}) {
    Matrix h = random_hermitian(7, seed);
    RangeResult prev = hermitian_range(h, 1);
    for (int k = 2; k <= 3; ++k) {
      RangeResult cur = hermitian_range(h, k);
      if (cur.kind == RangeKind::empty) break;
      REQUIRE(prev.kind == RangeKind::real_interval);
      double lo = cur.kind == RangeKind::point ? cur.point.real() : cur.lo;
      double hi = cur.kind == RangeKind::point ? cur.point.real() : cur.hi;
      CHECK(lo >= prev.lo - 1e-12);
      CHECK(hi <= prev.hi + 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("affine covariance of hermitian ranges") {
  Matrix h = random_hermitian(5, 23);
  RangeResult r = hermitian_range(h, 2);
  REQUIRE(r.kind == RangeKind::real_interval);
  const double alpha = -2.5, beta = 0.75;
  RangeResult s =
      hermitian_range(alpha * h + beta * Matrix::Identity(5, 5), 2);
  REQUIRE(s.kind == RangeKind::real_interval);
  CHECK(std::abs(s.lo - (alpha * r.hi + beta)) <= 1e-10);
  CHECK(std::abs(s.hi - (alpha * r.lo + beta)) <= 1e-10);
}

TEST_CASE("chord intersection") {
  SUBCASE("perpendicular diameters cross at the origin") {
    Complex z = chord_intersection(1.0, kI, -1.0, -kI);
    CHECK(std::abs(z) <= 1e-12);
  }
  SUBCASE("skew chords") {
    Complex z =
        chord_intersection(1.0, kI, -1.0, std::polar(1.0, 5.0 * M_PI / 4.0));
    CHECK(std::abs(z - Complex(1.0 - std::sqrt(2.0))) <= 1e-12);
    CHECK(std::abs(z.imag()) <= 1e-12);
  }
  SUBCASE("the intersection lies on both chords") {
    Matrix u = random_unitary(4, 99);
    Spectrum spec = normal_eigendecomposition(u);
    Complex z1 = spec.values[0], z2 = spec.values[1], z3 = spec.values[2],
            z4 = spec.values[3];
    Complex x = chord_intersection(z1, z2, z3, z4);
    CHECK(geometry::distance_to_segment(x, z1, z3) <= 1e-10);
    CHECK(geometry::distance_to_segment(x, z2, z4) <= 1e-10);
  }
  SUBCASE("repeated points are rejected") {
    CHECK_THROWS_AS(chord_intersection(1.0, 1.0, kI, -1.0), Error);
  }
  SUBCASE("unordered points are rejected") {
    CHECK_THROWS_AS(chord_intersection(kI, Complex(1.0), -1.0, -kI), Error);
  }
}

TEST_CASE("rank-2 range of 4x4 unitaries by case") {
  SUBCASE("case a: four distinct eigenvalues") {
    RangeResult r = unitary4_rank2_range(diag({1.0, kI, -1.0, -kI}));
    REQUIRE(r.kind == RangeKind::point);
    CHECK(std::abs(r.point) <= 1e-12);
    CHECK(r.case_label == 'a');
  }
  SUBCASE("case b: one double eigenvalue") {
    RangeResult r = unitary4_rank2_range(diag({1.0, 1.0, kI, -1.0}));
    REQUIRE(r.kind == RangeKind::point);
    CHECK(std::abs(r.point - Complex(1.0)) <= 1e-12);
    CHECK(r.case_label == 'b');
  }
  SUBCASE("case c: two double eigenvalues") {
    RangeResult r = unitary4_rank2_range(diag({1.0, 1.0, kI, kI}));
    REQUIRE(r.kind == RangeKind::segment);
    CHECK(std::abs(r.endpoints[0] - Complex(1.0)) <= 1e-12);
    CHECK(std::abs(r.endpoints[1] - kI) <= 1e-12);
    CHECK(r.case_label == 'c');
  }
  SUBCASE("case d: triple eigenvalue") {
    RangeResult r = unitary4_rank2_range(diag({1.0, 1.0, 1.0, kI}));
    REQUIRE(r.kind == RangeKind::point);
    CHECK(std::abs(r.point - Complex(1.0)) <= 1e-12);
    CHECK(r.case_label == 'd');
  }
  SUBCASE("case e: scalar operator") {
    Complex z = std::polar(1.0, M_PI / 3.0);
    RangeResult r = unitary4_rank2_range(z * Matrix::Identity(4, 4));
    REQUIRE(r.kind == RangeKind::point);
    CHECK(std::abs(r.point - z) <= 1e-12);
    CHECK(r.case_label == 'e');
  }
  SUBCASE("non-unitary input is rejected") {
    CHECK_THROWS_AS(unitary4_rank2_range(diag({1.0, 2.0, 3.0, 4.0})), Error);
  }
  SUBCASE("wrong dimension is rejected") {
    CHECK_THROWS_AS(unitary4_rank2_range(Matrix::Identity(3, 3)), Error);
  }
}

TEST_CASE("rank-2 projection for 4x4 unitaries") {
  SUBCASE("case a at the origin") {
    Matrix u = diag({1.0, kI, -1.0, -kI});
    Projection p = unitary4_rank2_projection(u, 0.0);
    CHECK((p.matrix * u * p.matrix).norm() <= 1e-9);
    // phi1 = (e1 + e3)/sqrt(2), phi2 = (e2 + e4)/sqrt(2).
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = expected(2, 2) = expected(0, 2) = expected(2, 0) = 0.5;
    expected(1, 1) = expected(3, 3) = expected(1, 3) = expected(3, 1) = 0.5;
    CHECK((p.matrix - expected).norm() <= 1e-12);
  }
  SUBCASE("case b picks the degenerate eigenspace") {
    Matrix u = diag({1.0, 1.0, kI, -1.0});
    Projection p = unitary4_rank2_projection(u, 1.0);
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = expected(1, 1) = 1.0;
    CHECK((p.matrix - expected).norm() <= 1e-12);
  }
  SUBCASE("values outside the range are rejected") {
    Matrix u = diag({1.0, kI, -1.0, -kI});
    CHECK_THROWS_AS(unitary4_rank2_projection(u, 0.5), Error);
  }
  SUBCASE("random unitaries across the segment in case c") {
    Matrix basis = random_unitary(4, 5);
    Matrix u = basis *
               diag({std::polar(1.0, 0.3), std::polar(1.0, 0.3),
                     std::polar(1.0, 2.1), std::polar(1.0, 2.1)}) *
               basis.adjoint();
    RangeResult r = unitary4_rank2_range(u);
    REQUIRE(r.kind == RangeKind::segment);
    for (double t : {0.0, 0.25, 0.5, 1.0}) {
      Complex lambda = r.endpoints[0] + t * (r.endpoints[1] - r.endpoints[0]);
      Projection p = unitary4_rank2_projection(u, lambda);
      CHECK((p.matrix * u * p.matrix - lambda * p.matrix).norm() <= 1e-9);
    }
  }
}

TEST_CASE("unimodular covariance in the generic case") {
  Matrix u = random_unitary(4, 31);
  RangeResult r = unitary4_rank2_range(u);
  REQUIRE(r.kind == RangeKind::point);
  for (double phase : {0.37, 2.9}) {  // second one wraps the ordering
    Complex c = std::polar(1.0, phase);
    RangeResult s = unitary4_rank2_range(c * u);
    REQUIRE(s.kind == RangeKind::point);
    CHECK(std::abs(s.point - c * r.point) <= 1e-9);
  }
}

TEST_CASE("range shape constraints") {
  RangeShapeConstraints c1 = range_shape_constraints(4, 3);
  CHECK(c1.kind == RangeShapeConstraints::Kind::empty_or_singleton);
  CHECK(c1.min_geometric_multiplicity == 2);
  RangeShapeConstraints c2 = range_shape_constraints(4, 4);
  CHECK(c2.kind == RangeShapeConstraints::Kind::scalar_only);
  RangeShapeConstraints c3 = range_shape_constraints(6, 3);
  CHECK(c3.kind == RangeShapeConstraints::Kind::unconstrained);
  CHECK_THROWS_AS(range_shape_constraints(4, 5), Error);
}

TEST_CASE("hull membership for normal operators") {
  Matrix u = diag({1.0, kI, -1.0, -kI});
  SUBCASE("the chord crossing is in every 3-point hull") {
    CHECK(normal_hull_membership(u, 2, 0.0));
  }
  SUBCASE("off-center points are excluded") {
    CHECK_FALSE(normal_hull_membership(u, 2, 0.9));
  }
  SUBCASE("k = 1 reduces to the full spectral hull") {
    CHECK(normal_hull_membership(u, 1, Complex(0.3, 0.3)));
    CHECK_FALSE(normal_hull_membership(u, 1, Complex(1.0, 1.0)));
  }
  SUBCASE("subset cap triggers the combinatorial guard") {
    Matrix big = random_unitary(40, 2);
    CHECK_THROWS_AS(normal_hull_membership(big, 21, 0.0), Error);
  }
  SUBCASE("agrees with the location-depth oracle") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      int n = 4 + static_cast<int>(seed % 5);
      Matrix w = random_unitary(n, 100 + seed);
      Spectrum spec = normal_eigendecomposition(w);
      std::vector<Complex> values(spec.values.data(),
                                  spec.values.data() + n);
      detail::Rng rng(seed * 77 + 5);
      Complex lambda(rng.next_unit() * 1.6 - 0.8,
                     rng.next_unit() * 1.6 - 0.8);
      int k = 1 + static_cast<int>(rng.next_u64() % n);
      bool mine = normal_hull_membership(w, k, lambda);
      bool oracle = testutil::depth_membership(values, k, lambda);
      CHECK(mine == oracle);
    }
  }
}

TEST_CASE("rank-2 compression values in any dimension") {
  SUBCASE("degeneracy shortcut") {
    Matrix u = diag({1.0, 1.0, kI, -1.0, -kI});
    auto [lambda, p] = unitary_rank2_any_dim(u);
    CHECK(std::abs(lambda - Complex(1.0)) <= 1e-12);
    Matrix expected = Matrix::Zero(5, 5);
    expected(0, 0) = expected(1, 1) = 1.0;
    CHECK((p.matrix - expected).norm() <= 1e-12);
  }
  SUBCASE("nondegenerate pairing") {
    Matrix u = diag({1.0, std::polar(1.0, M_PI / 4.0), kI, -1.0, -kI});
    auto [lambda, p] = unitary_rank2_any_dim(u);
    CHECK((p.matrix * u * p.matrix - lambda * p.matrix).norm() <= 1e-9);
    CHECK(normal_hull_membership(u, 2, lambda));
  }
  SUBCASE("consistent with the 4x4 analysis") {
    Matrix u = random_unitary(4, 55);
    RangeResult r = unitary4_rank2_range(u);
    REQUIRE(r.kind == RangeKind::point);
    auto [lambda, p] = unitary_rank2_any_dim(u);
    CHECK(std::abs(lambda - r.point) <= 1e-10);
    Projection q = unitary4_rank2_projection(u, r.point);
    CHECK((p.matrix - q.matrix).norm() <= 1e-9);
  }
  SUBCASE("dimension below four is rejected") {
    CHECK_THROWS_AS(unitary_rank2_any_dim(Matrix::Identity(3, 3)), Error);
  }
}

TEST_CASE("plot data carries spectrum, chords, and range") {
  Matrix u = random_unitary(4, 8);
  RangePlotData data = unitary4_plot_data(u);
  CHECK(data.unit_circle);
  CHECK(data.spectrum.size() == 4);
  CHECK(data.chords.size() == 2);
  CHECK(data.range.kind == RangeKind::point);

  Matrix h = diag({1.0, 2.0, 3.0, 4.0});
  RangePlotData hd = hermitian_plot_data(h, 2);
  CHECK_FALSE(hd.unit_circle);
  CHECK(hd.spectrum.size() == 4);
  CHECK(hd.range.kind == RangeKind::real_interval);
}

}  // TEST_SUITE
