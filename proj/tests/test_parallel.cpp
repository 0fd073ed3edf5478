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

// The OpenMP kernels must produce exactly the results of their serial
// reference implementations: identical booleans, identical code lists in
// identical order, identical deviations.

#include <doctest.h>

#include "rankrange/channel.hpp"
#include "rankrange/codesearch.hpp"
#include "rankrange/numrange.hpp"
#include "rankrange/qec.hpp"
#include "test_util.hpp"

using namespace rankrange;

TEST_SUITE("parallel") {

TEST_CASE("hull membership agrees between serial and openmp") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    int n = 5 + static_cast<int>(seed % 6);
    Matrix u = random_unitary(n, 10 + seed);
    detail::Rng rng(seed);
    Complex lambda(rng.next_unit() * 1.4 - 0.7, rng.next_unit() * 1.4 - 0.7);
    int k = 1 + static_cast<int>(rng.next_u64() % n);
    bool serial = normal_hull_membership(u, k, lambda, {},
                                         {1000000, Exec::serial});
    bool parallel = normal_hull_membership(u, k, lambda, {},
                                           {1000000, Exec::parallel});
    CHECK(serial == parallel);
  }
}

TEST_CASE("generic sweep produces identical code lists") {
  Matrix u = random_unitary(4, 77);
  auto serial = twoqubit_generic_solve(u, {128, Exec::serial}, 5);
  auto parallel = twoqubit_generic_solve(u, {128, Exec::parallel}, 5);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(testutil::exact_equal(serial[i].projection.matrix,
                                parallel[i].projection.matrix));
    CHECK(testutil::exact_equal(serial[i].compression_values,
                                parallel[i].compression_values));
  }
}

TEST_CASE("multi-unitary search picks the same trial either way") {
  SUBCASE("search with a hit") {
    Matrix u = random_unitary(4, 31);
    std::vector<Matrix> ops = {Matrix::Identity(4, 4), u};
    MultiSearchResult serial =
        multi_unitary_common_code(ops, 2, {4000, Exec::serial}, 9);
    MultiSearchResult parallel =
        multi_unitary_common_code(ops, 2, {4000, Exec::parallel}, 9);
    REQUIRE(serial.code.has_value());
    REQUIRE(parallel.code.has_value());
    CHECK(serial.trials_used == parallel.trials_used);
    CHECK(testutil::exact_equal(serial.code->projection.matrix,
                                parallel.code->projection.matrix));
  }
  SUBCASE("search that stays empty") {
    std::vector<Matrix> ops = {Matrix::Identity(4, 4), z1_operator(2),
                               zz_operator()};
    MultiSearchResult serial =
        multi_unitary_common_code(ops, 2, {500, Exec::serial}, 3);
    MultiSearchResult parallel =
        multi_unitary_common_code(ops, 2, {500, Exec::parallel}, 3);
    CHECK_FALSE(serial.code.has_value());
    CHECK_FALSE(parallel.code.has_value());
    CHECK(serial.proven_empty == parallel.proven_empty);
  }
}

TEST_CASE("recovery verification reduces identically") {
  Matrix u = random_unitary(4, 51);
  KrausChannel ch = make_buc(Matrix::Identity(4, 4), u, 0.44).kraus();
  auto [lambda, code] = unitary_rank2_any_dim(u);
  RecoveryChannel rec = build_recovery(ch, code);
  double serial = verify_recovery(ch, rec, code, 64, 8, Exec::serial);
  double parallel = verify_recovery(ch, rec, code, 64, 8, Exec::parallel);
  CHECK(serial == parallel);
}

}  // TEST_SUITE
