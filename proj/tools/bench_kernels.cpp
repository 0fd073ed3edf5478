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

// Times the search kernels that carry OpenMP inner loops against their
// serial reference implementations on representative workloads.

#include <chrono>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "rankrange/channel.hpp"
#include "rankrange/codesearch.hpp"
#include "rankrange/numrange.hpp"
#include "rankrange/qec.hpp"

namespace {

using namespace rankrange;

double time_ms(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp",
              "speedup");

  {
    // Hull enumeration: C(22, 11) = 705432 subsets.
    Matrix u = random_unitary(22, 42);
    HullOptions serial{1u << 21, Exec::serial};
    HullOptions parallel{1u << 21, Exec::parallel};
    volatile bool sink = false;
    double ts = time_ms([&] {
      sink = normal_hull_membership(u, 12, Complex(0.05, 0.02), {}, serial);
    });
    double tp = time_ms([&] {
      sink = normal_hull_membership(u, 12, Complex(0.05, 0.02), {}, parallel);
    });
    (void)sink;
    report("hull_membership", ts, tp);
  }

  {
    Matrix u = random_unitary(4, 7);
    volatile std::size_t sink = 0;
    double ts = time_ms([&] {
      sink = twoqubit_generic_solve(u, {20000, Exec::serial}, 3).size();
    });
    double tp = time_ms([&] {
      sink = twoqubit_generic_solve(u, {20000, Exec::parallel}, 3).size();
    });
    (void)sink;
    report("twoqubit_generic_solve", ts, tp);
  }

  {
    std::vector<Matrix> triple = {Matrix::Identity(4, 4), random_unitary(4, 1),
                                  random_unitary(4, 2)};
    volatile long sink = 0;
    double ts = time_ms([&] {
      sink = multi_unitary_common_code(triple, 2, {100000, Exec::serial}, 5)
                 .trials_used;
    });
    double tp = time_ms([&] {
      sink = multi_unitary_common_code(triple, 2, {100000, Exec::parallel}, 5)
                 .trials_used;
    });
    (void)sink;
    report("multi_unitary_common_code", ts, tp);
  }

  {
    Matrix u = random_unitary(4, 11);
    auto [lambda, code] = unitary_rank2_any_dim(u);
    BiUnitaryChannel buc = make_buc(Matrix::Identity(4, 4), u, 0.4);
    KrausChannel ch = buc.kraus();
    RecoveryChannel rec = build_recovery(ch, code);
    volatile double sink = 0;
    double ts = time_ms(
        [&] { sink = verify_recovery(ch, rec, code, 20000, 9, Exec::serial); });
    double tp = time_ms([&] {
      sink = verify_recovery(ch, rec, code, 20000, 9, Exec::parallel);
    });
    (void)sink;
    report("verify_recovery", ts, tp);
  }

  return 0;
}
