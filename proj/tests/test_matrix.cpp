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

#include <algorithm>

#include "rankrange/channel.hpp"
#include "rankrange/matrix.hpp"
#include "test_util.hpp"

using namespace rankrange;
using testutil::basis_vector;
using testutil::random_gaussian;
using testutil::random_hermitian;

namespace {

Matrix diag4(Complex a, Complex b, Complex c, Complex d) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

double reconstruction_residual(const Spectrum& spec, const Matrix& a) {
  Matrix rebuilt = Matrix::Zero(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < spec.size(); ++j) {
    rebuilt += spec.values[j] * spec.vectors.col(j) *
               spec.vectors.col(j).adjoint();
  }
  return (rebuilt - a).norm();
}

double gram_residual(const Spectrum& spec) {
  Matrix gram = spec.vectors.adjoint() * spec.vectors;
  return (gram - Matrix::Identity(spec.size(), spec.size())).norm();
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("hermitian eigendecomposition of a diagonal matrix") {
  Matrix h = Matrix::Zero(3, 3);
  h(0, 0) = 3.0;
  h(1, 1) = 1.0;
  h(2, 2) = 2.0;
  Spectrum spec = hermitian_eigendecomposition(h);
  REQUIRE(spec.size() == 3);
  CHECK(spec.values[0] == Complex(1.0));
  CHECK(spec.values[1] == Complex(2.0));
  CHECK(spec.values[2] == Complex(3.0));
  CHECK(spec.ordering == EigenvalueOrdering::ascending_real);
  // Permuted standard basis, exactly.
  CHECK(testutil::exact_equal(spec.vectors.col(0), basis_vector(3, 1)));
  CHECK(testutil::exact_equal(spec.vectors.col(1), basis_vector(3, 2)));
  CHECK(testutil::exact_equal(spec.vectors.col(2), basis_vector(3, 0)));
}

TEST_CASE("pauli Z eigenpairs") {
  Spectrum spec = hermitian_eigendecomposition(pauli_z());
  CHECK(spec.values[0] == Complex(-1.0));
  CHECK(spec.values[1] == Complex(1.0));
  CHECK(testutil::exact_equal(spec.vectors.col(0), basis_vector(2, 1)));
  CHECK(testutil::exact_equal(spec.vectors.col(1), basis_vector(2, 0)));
}

TEST_CASE("random hermitian reconstruction") {
  Matrix h = random_hermitian(8, 17);
  Spectrum spec = hermitian_eigendecomposition(h);
  CHECK(reconstruction_residual(spec, h) <= 1e-10 * h.norm());
  CHECK(gram_residual(spec) <= 1e-10);
  for (Eigen::Index j = 0; j < spec.size(); ++j) {
    CHECK(std::abs(spec.values[j].imag()) <= 1e-10);
    if (j > 0) CHECK(spec.values[j].real() >= spec.values[j - 1].real());
  }
}

TEST_CASE("non-hermitian input is rejected") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_WITH_AS(hermitian_eigendecomposition(a),
                       doctest::Contains("not Hermitian"), Error);
}

TEST_CASE("normal eigendecomposition orders unitary spectra by argument") {
  Complex i(0, 1);
  Spectrum spec = normal_eigendecomposition(diag4(1.0, i, -1.0, -i));
  CHECK(spec.ordering == EigenvalueOrdering::ascending_argument);
  CHECK(spec.values[0] == Complex(1.0));
  CHECK(spec.values[1] == i);
  CHECK(spec.values[2] == Complex(-1.0));
  CHECK(spec.values[3] == -i);
  for (int j = 0; j < 4; ++j) {
    CHECK(testutil::exact_equal(spec.vectors.col(j), basis_vector(4, j)));
  }
}

TEST_CASE("ZZ goes through the hermitian path") {
  Spectrum spec = normal_eigendecomposition(zz_operator());
  std::vector<double> values;
  for (int j = 0; j < 4; ++j) values.push_back(spec.values[j].real());
  std::vector<double> expected = {-1.0, -1.0, 1.0, 1.0};
  CHECK(values == expected);
  CHECK(gram_residual(spec) == 0.0);
}

TEST_CASE("haar unitary spectra are unimodular with orthonormal basis") {
  Matrix u = random_unitary(4, 7);
  Spectrum spec = normal_eigendecomposition(u);
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(std::abs(spec.values[j]) - 1.0) <= 1e-10);
  }
  CHECK(gram_residual(spec) <= 1e-10);
  CHECK(reconstruction_residual(spec, u) <= 1e-10 * u.norm());
}

TEST_CASE("non-normal input is rejected") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(normal_eigendecomposition(a), Error);
}

TEST_CASE("scalar compression of the identity") {
  Projection p = projection_from_vectors(
      {basis_vector(4, 0), basis_vector(4, 2)});
  auto lambda = scalar_compression_check(Matrix::Identity(4, 4), p, 1e-9);
  REQUIRE(lambda.has_value());
  CHECK(std::abs(*lambda - Complex(1.0)) <= 1e-12);
}

TEST_CASE("ZZ compresses to +1 on the stabilizer code") {
  Projection p = projection_from_vectors(
      {basis_vector(4, 0), basis_vector(4, 3)});  // |00>, |11>
  auto lambda = scalar_compression_check(zz_operator(), p, 1e-9);
  REQUIRE(lambda.has_value());
  CHECK(std::abs(*lambda - Complex(1.0)) <= 1e-12);
}

TEST_CASE("Z1 has no scalar compression on span{|00>,|10>}") {
  Projection p = projection_from_vectors(
      {basis_vector(4, 0), basis_vector(4, 2)});
  // The compression is diag(+1, -1).
  CHECK_FALSE(scalar_compression_check(z1_operator(2), p, 1e-9).has_value());
}

TEST_CASE("scalar compression rejects mismatched dimensions") {
  Projection p = projection_from_vectors({basis_vector(2, 0)});
  CHECK_THROWS_AS(scalar_compression_check(Matrix::Identity(4, 4), p, 1e-9),
                  Error);
}

TEST_CASE("affine covariance of the compression value") {
  Matrix h = random_hermitian(6, 3);
  Spectrum spec = hermitian_eigendecomposition(h);
  // A projection built from two eigenvectors compresses to a scalar only if
  // the eigenvalues agree, so pair one eigenvector with itself instead.
  Projection p = projection_from_vectors({spec.vectors.col(1)});
  auto lambda = scalar_compression_check(h, p, 1e-9);
  REQUIRE(lambda.has_value());
  const double alpha = -1.7, beta = 0.45;
  Matrix shifted = alpha * h + beta * Matrix::Identity(6, 6);
  auto shifted_lambda = scalar_compression_check(shifted, p, 1e-9);
  REQUIRE(shifted_lambda.has_value());
  CHECK(std::abs(*shifted_lambda - (alpha * *lambda + beta)) <= 1e-9);
}

TEST_CASE("projection from vectors") {
  SUBCASE("two basis vectors") {
    Projection p = projection_from_vectors(
        {basis_vector(4, 0), basis_vector(4, 3)});
    CHECK(p.rank == 2);
    CHECK(std::abs(p.matrix.trace() - Complex(2.0)) <= 1e-12);
    CHECK((p.matrix - p.matrix.adjoint()).norm() <= 1e-12);
    CHECK((p.matrix * p.matrix - p.matrix).norm() <= 1e-12);
  }
  SUBCASE("single normalized vector") {
    Vector v(2);
    v << 1.0, 1.0;
    Projection p = projection_from_vectors({v / std::sqrt(2.0)});
    CHECK(p.rank == 1);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        CHECK(std::abs(p.matrix(i, j) - Complex(0.5)) <= 1e-12);
      }
    }
  }
  SUBCASE("dependent vectors are rejected") {
    Vector v = basis_vector(3, 1);
    CHECK_THROWS_AS(projection_from_vectors({v, 2.0 * v}), Error);
  }
  SUBCASE("invariant under unitary remixing of the span") {
    Matrix g = random_gaussian(5, 21);
    std::vector<Vector> vecs = {g.col(0), g.col(1), g.col(2)};
    Projection p = projection_from_vectors(vecs);
    Matrix mix = random_unitary(3, 4);
    Matrix stacked(5, 3);
    for (int j = 0; j < 3; ++j) stacked.col(j) = vecs[j];
    Matrix mixed = stacked * mix;
    Projection q = projection_from_vectors(
        {mixed.col(0), mixed.col(1), mixed.col(2)});
    CHECK((p.matrix - q.matrix).norm() <= 1e-10);
  }
}

TEST_CASE("eigenvalue clustering") {
  SUBCASE("nearby values merge transitively") {
    Spectrum spec;
    spec.values.resize(3);
    spec.values << Complex(1.0), Complex(1.0 + 1e-12), Complex(2.0);
    spec.vectors = Matrix::Identity(3, 3);
    auto clusters = cluster_eigenvalues(spec, 1e-8);
    REQUIRE(clusters.size() == 2);
    CHECK(clusters[0].multiplicity == 2);
    CHECK(std::abs(clusters[0].value - Complex(1.0)) <= 1e-12);
    CHECK(clusters[1].multiplicity == 1);
    CHECK(clusters[1].value == Complex(2.0));
  }
  SUBCASE("distinct unimodular values stay separate") {
    Complex i(0, 1);
    Spectrum spec = normal_eigendecomposition(diag4(1.0, i, -1.0, -i));
    auto clusters = cluster_eigenvalues(spec, 1e-8);
    CHECK(clusters.size() == 4);
    for (const auto& c : clusters) CHECK(c.multiplicity == 1);
  }
  SUBCASE("ZZ splits into two double clusters") {
    Spectrum spec = normal_eigendecomposition(zz_operator());
    auto clusters = cluster_eigenvalues(spec, 1e-8);
    REQUIRE(clusters.size() == 2);
    CHECK(clusters[0].multiplicity == 2);
    CHECK(clusters[1].multiplicity == 2);
  }
  SUBCASE("permutation invariance") {
    Spectrum spec;
    spec.values.resize(4);
    spec.values << Complex(2.0), Complex(1.0), Complex(1.0 + 5e-9),
        Complex(0.5);
    spec.vectors = Matrix::Identity(4, 4);
    auto clusters = cluster_eigenvalues(spec, 1e-8);
    Spectrum shuffled;
    shuffled.values.resize(4);
    shuffled.values << Complex(1.0 + 5e-9), Complex(0.5), Complex(2.0),
        Complex(1.0);
    shuffled.vectors = Matrix::Identity(4, 4);
    auto clusters2 = cluster_eigenvalues(shuffled, 1e-8);
    auto key = [](const EigenvalueCluster& c) {
      return std::make_pair(c.value.real(), c.multiplicity);
    };
    std::vector<std::pair<double, int>> a, b;
    for (const auto& c : clusters) a.push_back(key(c));
    for (const auto& c : clusters2) b.push_back(key(c));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].second == b[i].second);
      CHECK(std::abs(a[i].first - b[i].first) <= 1e-8);
    }
  }
}

}  // TEST_SUITE
