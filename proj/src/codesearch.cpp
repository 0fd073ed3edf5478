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

#include "rankrange/codesearch.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <sstream>

#include "rankrange/detail/rng.hpp"

namespace rankrange {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

using detail::Rng;

// Scalar compression values of every pairwise product of the given
// operators, estimated on the code subspace.
Matrix product_compressions(const std::vector<Matrix>& ops,
                            const Projection& P) {
  const int m = static_cast<int>(ops.size());
  Matrix out(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      out(a, b) = (P.matrix * ops[a].adjoint() * ops[b] * P.matrix).trace() /
                  static_cast<double>(P.rank);
    }
  }
  return out;
}

void gauge_fix(Vector& v, const Matrix& basis) {
  Vector coeff = basis.adjoint() * v;
  for (Eigen::Index i = 0; i < coeff.size(); ++i) {
    double a = std::abs(coeff[i]);
    if (a > 1e-9) {
      v *= std::conj(coeff[i]) / a;
      return;
    }
  }
}

// Eigen-structure of a nondegenerate quadruple of unitary eigenvalues,
// restricted to their invariant 4-dimensional subspace. The compression
// problem is solved entirely in these coordinates.
struct GenericFrame {
  Matrix basis;                    // N x 4, argument-ordered eigenvectors
  std::array<Complex, 4> values;   // matching eigenvalues
  Complex lambda;                  // chord intersection = the compression-value
  Eigen::Matrix4cd shifted;        // diag(values) - lambda
  double cos2_beta = 0.0;          // |z3'| / (|z1'| + |z3'|)
  double cos2_gamma = 0.0;         // |z4'| / (|z2'| + |z4'|)
};

GenericFrame make_frame(const Matrix& eigvecs,
                        const std::array<Complex, 4>& values,
                        const std::array<int, 4>& columns,
                        const ToleranceConfig& tol) {
  GenericFrame f;
  f.basis.resize(eigvecs.rows(), 4);
  for (int j = 0; j < 4; ++j) f.basis.col(j) = eigvecs.col(columns[j]);
  f.values = values;
  f.lambda =
      chord_intersection(values[0], values[1], values[2], values[3], tol);
  f.shifted.setZero();
  for (int j = 0; j < 4; ++j) f.shifted(j, j) = values[j] - f.lambda;
  double m1 = std::abs(f.shifted(0, 0)), m3 = std::abs(f.shifted(2, 2));
  double m2 = std::abs(f.shifted(1, 1)), m4 = std::abs(f.shifted(3, 3));
  f.cos2_beta = m3 / (m1 + m3);
  f.cos2_gamma = m4 / (m2 + m4);
  return f;
}

Eigen::Vector4cd angle_coefficients(double alpha, double cos2b, double cos2g,
                                    double t2, double t3, double t4) {
  double ca = std::cos(alpha), sa = std::sin(alpha);
  double cb = std::sqrt(cos2b), sb = std::sqrt(1.0 - cos2b);
  double cg = std::sqrt(cos2g), sg = std::sqrt(1.0 - cos2g);
  Eigen::Vector4cd c;
  c[0] = ca * cb;
  c[1] = std::polar(sa * cg, t2);
  c[2] = std::polar(ca * sb, t3);
  c[3] = std::polar(sa * sg, t4);
  return c;
}

// Unit vectors v in the span of the columns of `comp` with <v|A|v> = 0,
// where A2 is the compression of the shifted operator to that span. The
// 1-dimensional case is a pure candidate test; the 2-dimensional case is
// solved exactly by eigenvalue pairing on the Hermitian part followed by a
// trigonometric zero of the skew part.
// Relative phase aligning the dominant coordinates of the two lifted basis
// vectors; used when a whole circle of completions is valid, so the choice
// matches the eigenvalue-pairing convention of real non-negative weights.
double aligning_phase(const Vector& w1, const Vector& w2) {
  Eigen::Index j = 0, k = 0;
  w1.cwiseAbs().maxCoeff(&j);
  w2.cwiseAbs().maxCoeff(&k);
  return std::arg(w1[j]) - std::arg(w2[k]);
}

std::vector<Vector> zero_compression_vectors(const Eigen::Matrix4cd& A,
                                             const Matrix& comp) {
  std::vector<Vector> out;
  if (comp.cols() == 1) {
    out.push_back(comp.col(0));
    return out;
  }
  Matrix A2 = comp.adjoint() * A * comp;
  Matrix H = (A2 + A2.adjoint()) / 2.0;
  Matrix K = (A2 - A2.adjoint()) / Complex(0.0, 2.0);
  Eigen::SelfAdjointEigenSolver<Matrix> eh(H);
  double h1 = eh.eigenvalues()[0], h2 = eh.eigenvalues()[1];
  if (h1 > 1e-12 || h2 < -1e-12) return out;

  auto push_mix = [&](const Matrix& basis, double c2, double t) {
    double ct = std::sqrt(std::clamp(c2, 0.0, 1.0));
    double st = std::sqrt(std::clamp(1.0 - c2, 0.0, 1.0));
    Vector local = ct * basis.col(0) + std::polar(st, t) * basis.col(1);
    out.push_back(comp * local);
  };

  if (h2 - h1 <= 1e-12) {
    // Hermitian part vanishes on the whole complement; pair on the skew
    // part instead. Its quadratic form ignores the relative phase, which is
    // therefore fixed by the pairing convention.
    Eigen::SelfAdjointEigenSolver<Matrix> ek(K);
    double k1 = ek.eigenvalues()[0], k2 = ek.eigenvalues()[1];
    if (k1 > 1e-12 || k2 < -1e-12) return out;
    double c2 = k2 - k1 > 1e-12 ? k2 / (k2 - k1) : 1.0;
    Vector w1 = comp * ek.eigenvectors().col(0);
    Vector w2 = comp * ek.eigenvectors().col(1);
    push_mix(ek.eigenvectors(), c2, aligning_phase(w1, w2));
    return out;
  }

  double c2 = h2 / (h2 - h1);
  double ct = std::sqrt(std::clamp(c2, 0.0, 1.0));
  double st = std::sqrt(std::clamp(1.0 - c2, 0.0, 1.0));
  Matrix u = eh.eigenvectors();
  Matrix kp = u.adjoint() * K * u;
  double base = c2 * kp(0, 0).real() + (1.0 - c2) * kp(1, 1).real();
  double radius = 2.0 * ct * st * std::abs(kp(0, 1));
  if (radius < 1e-15) {
    if (std::abs(base) < 1e-12) {
      // Every relative phase solves the system; pick the pairing-aligned one.
      Vector w1 = comp * u.col(0);
      Vector w2 = comp * u.col(1);
      push_mix(u, c2, aligning_phase(w1, w2));
    }
    return out;
  }
  if (std::abs(base) > radius) return out;
  double phi0 = std::arg(kp(0, 1));
  double t0 = std::acos(std::clamp(-base / radius, -1.0, 1.0));
  push_mix(u, c2, t0 - phi0);
  if (t0 > 1e-9 && t0 < kTwoPi / 2.0 - 1e-9) push_mix(u, c2, -t0 - phi0);
  return out;
}

// All rank-2 codes reachable from one sweep point of the angle
// parameterization: xi1 from the angles, xi2 from the orthocomplement of
// {xi1, A xi1, A^dag xi1}, kept when the completion also compresses to
// zero. Everything happens in frame coordinates.
std::vector<std::pair<Vector, Vector>> codes_from_sweep_point(
    const GenericFrame& f, double alpha, double t2, double t3, double t4,
    const ToleranceConfig& tol) {
  std::vector<std::pair<Vector, Vector>> out;
  Eigen::Vector4cd xi1 =
      angle_coefficients(alpha, f.cos2_beta, f.cos2_gamma, t2, t3, t4);
  Eigen::Vector4cd img = f.shifted * xi1;
  Eigen::Vector4cd imgAdj = f.shifted.adjoint() * xi1;
  Matrix span(4, 3);
  span.col(0) = xi1;
  span.col(1) = img;
  span.col(2) = imgAdj;
  Eigen::JacobiSVD<Matrix> svd(span, Eigen::ComputeFullU);
  double smax = svd.singularValues()[0];
  int rank = 0;
  for (int i = 0; i < 3; ++i) {
    if (svd.singularValues()[i] > 1e-8 * std::max(smax, 1.0)) ++rank;
  }
  Matrix comp = svd.matrixU().rightCols(4 - rank);
  for (const Vector& xi2 : zero_compression_vectors(f.shifted, comp)) {
    Complex residual = (xi2.adjoint() * f.shifted * xi2).value();
    if (std::abs(residual) > tol.eps_scalar) continue;
    Vector v1 = f.basis * xi1;
    Vector v2 = f.basis * xi2;
    gauge_fix(v1, f.basis);
    gauge_fix(v2, f.basis);
    out.push_back({v1, v2});
  }
  return out;
}

Projection projection_from_pair(const Vector& v1, const Vector& v2) {
  Projection p;
  p.matrix = v1 * v1.adjoint() + v2 * v2.adjoint();
  p.rank = 2;
  return p;
}

std::uint64_t fnv1a(const unsigned char* data, std::size_t len,
                    std::uint64_t h) {
  for (std::size_t i = 0; i < len; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Eigen::Vector4cd TwoQubitCodeParams::coefficients(int k) const {
  double ca = std::cos(alpha[k]), sa = std::sin(alpha[k]);
  double cb = std::cos(beta[k]), sb = std::sin(beta[k]);
  double cg = std::cos(gamma[k]), sg = std::sin(gamma[k]);
  Eigen::Vector4cd c;
  c[0] = ca * cb;
  c[1] = std::polar(sa * cg, theta[k][0]);
  c[2] = std::polar(ca * sb, theta[k][1]);
  c[3] = std::polar(sa * sg, theta[k][2]);
  return c;
}

std::string channel_fingerprint(const KrausChannel& ch) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::int64_t dim = ch.dimension;
  h = fnv1a(reinterpret_cast<const unsigned char*>(&dim), sizeof(dim), h);
  for (const Matrix& e : ch.kraus_ops) {
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
      for (Eigen::Index j = 0; j < e.cols(); ++j) {
        double re = e(i, j).real(), im = e(i, j).imag();
        h = fnv1a(reinterpret_cast<const unsigned char*>(&re), sizeof(re), h);
        h = fnv1a(reinterpret_cast<const unsigned char*>(&im), sizeof(im), h);
      }
    }
  }
  std::ostringstream os;
  os << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) os << ((h >> shift) & 0xF);
  return os.str();
}

CodeProjection zz_code(double a, const ToleranceConfig& tol) {
  if (!(a >= 0.0) || !(a <= 1.0)) {
    fail(errc::bad_parameter, "zz_code: parameter must lie in [0, 1]");
  }
  Vector psi1 = Vector::Zero(4);
  Vector psi2 = Vector::Zero(4);
  psi1[0] = std::sqrt(a);
  psi1[1] = std::sqrt(1.0 - a);
  psi2[3] = std::sqrt(a);
  psi2[2] = std::sqrt(1.0 - a);
  CodeProjection code;
  code.projection = projection_from_pair(psi1, psi2);
  code.compression_values =
      product_compressions({Matrix::Identity(4, 4), zz_operator()},
                           code.projection);
  (void)tol;
  return code;
}

CodeProjection z1_code(const Vector& psi_plus, const Vector& phi_plus,
                       const Vector& psi_minus, const Vector& phi_minus,
                       const ToleranceConfig& tol) {
  const Vector* vecs[4] = {&psi_plus, &phi_plus, &psi_minus, &phi_minus};
  for (const Vector* v : vecs) {
    if (v->size() != 4) {
      fail(errc::dimension_mismatch, "z1_code: vectors must be 4-dimensional");
    }
  }
  // Plus pair supported on span{|00>,|01>}, minus pair on span{|10>,|11>}.
  auto leakage = [](const Vector& v, int lo) {
    return std::hypot(std::abs(v[lo]), std::abs(v[lo + 1]));
  };
  if (leakage(psi_plus, 2) > tol.eps_ortho ||
      leakage(phi_plus, 2) > tol.eps_ortho) {
    fail(errc::bad_support, "z1_code: plus pair leaks outside span{|00>,|01>}");
  }
  if (leakage(psi_minus, 0) > tol.eps_ortho ||
      leakage(phi_minus, 0) > tol.eps_ortho) {
    fail(errc::bad_support,
         "z1_code: minus pair leaks outside span{|10>,|11>}");
  }
  for (const Vector* v : vecs) {
    if (std::abs(v->norm() - 1.0) > tol.eps_ortho) {
      fail(errc::not_orthonormal, "z1_code: vectors must be unit length");
    }
  }
  if (std::abs(psi_plus.dot(phi_plus)) > tol.eps_ortho ||
      std::abs(psi_minus.dot(phi_minus)) > tol.eps_ortho) {
    fail(errc::not_orthonormal, "z1_code: each pair must be orthonormal");
  }
  Vector u1 = psi_plus + psi_minus;
  Vector u2 = phi_plus + phi_minus;
  u1 /= u1.norm();
  u2 /= u2.norm();
  CodeProjection code;
  code.projection = projection_from_pair(u1, u2);
  code.compression_values =
      product_compressions({Matrix::Identity(4, 4), z1_operator(2)},
                           code.projection);
  return code;
}

namespace {

GenericFrame generic_frame_for(const Matrix& U, const char* who,
                               const ToleranceConfig& tol) {
  if (U.rows() != 4 || U.cols() != 4) {
    fail(errc::wrong_dimension, std::string(who) + ": expected 4x4");
  }
  if (!is_unitary(U, tol.eps_proj)) {
    fail(errc::not_unitary, std::string(who) + ": input is not unitary");
  }
  Spectrum spec = normal_eigendecomposition(U, tol);
  std::vector<EigenvalueCluster> clusters =
      cluster_eigenvalues(spec, tol.eps_degenerate);
  if (clusters.size() != 4) {
    fail(errc::degenerate_spectrum,
         std::string(who) +
             ": spectrum is degenerate; use the case handling of "
             "find_codes_buc4");
  }
  std::stable_sort(clusters.begin(), clusters.end(),
                   [](const EigenvalueCluster& a, const EigenvalueCluster& b) {
                     return principal_argument(a.value) <
                            principal_argument(b.value);
                   });
  return make_frame(
      spec.vectors,
      {clusters[0].value, clusters[1].value, clusters[2].value,
       clusters[3].value},
      {clusters[0].members[0], clusters[1].members[0], clusters[2].members[0],
       clusters[3].members[0]},
      tol);
}

}  // namespace

std::vector<CodeProjection> twoqubit_codes_at_point(
    const Matrix& U, double alpha, double theta2, double theta3, double theta4,
    const ToleranceConfig& tol) {
  GenericFrame frame = generic_frame_for(U, "twoqubit_codes_at_point", tol);
  const std::vector<Matrix> ops = {Matrix::Identity(4, 4), U};
  std::vector<CodeProjection> out;
  for (auto& [v1, v2] :
       codes_from_sweep_point(frame, alpha, theta2, theta3, theta4, tol)) {
    Projection p = projection_from_pair(v1, v2);
    if (!scalar_compression_check(U, p, tol.eps_scalar)) continue;
    out.push_back({p, product_compressions(ops, p)});
  }
  return out;
}

std::vector<CodeProjection> twoqubit_generic_solve(const Matrix& U,
                                                   const SweepSpec& sweep,
                                                   std::uint64_t seed,
                                                   const ToleranceConfig& tol) {
  if (sweep.points < 1) {
    fail(errc::empty_sweep, "twoqubit_generic_solve: sweep has no points");
  }
  GenericFrame frame = generic_frame_for(U, "twoqubit_generic_solve", tol);

  const std::vector<Matrix> ops = {Matrix::Identity(4, 4), U};
  std::vector<std::vector<CodeProjection>> slots(
      static_cast<std::size_t>(sweep.points));
  auto run_point = [&](long i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    double alpha = rng.next_unit() * kTwoPi / 4.0;
    double t2 = rng.next_unit() * kTwoPi;
    double t3 = rng.next_unit() * kTwoPi;
    double t4 = rng.next_unit() * kTwoPi;
    for (auto& [v1, v2] : codes_from_sweep_point(frame, alpha, t2, t3, t4,
                                                 tol)) {
      Projection p = projection_from_pair(v1, v2);
      if (!scalar_compression_check(U, p, tol.eps_scalar)) continue;
      slots[static_cast<std::size_t>(i)].push_back(
          {p, product_compressions(ops, p)});
    }
  };

  if (sweep.exec == Exec::serial) {
    for (long i = 0; i < sweep.points; ++i) run_point(i);
  } else {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < sweep.points; ++i) run_point(i);
  }

  std::vector<CodeProjection> merged;
  for (auto& s : slots) {
    for (auto& c : s) merged.push_back(std::move(c));
  }
  return merged;
}

CodeFamily find_codes_buc4(const Matrix& V, const Matrix& W, double p,
                           std::uint64_t seed, const FindCodesOptions& opts,
                           const ToleranceConfig& tol) {
  if (V.rows() != 4 || V.cols() != 4 || W.rows() != 4 || W.cols() != 4) {
    fail(errc::wrong_dimension, "find_codes_buc4: expected 4x4 unitaries");
  }
  BiUnitaryChannel buc = make_buc(V, W, p, tol);
  KrausChannel channel = buc.kraus();
  Matrix U = buc_reduce(buc);
  RangeResult range = unitary4_rank2_range(U, tol);
  const char label = *range.case_label;

  std::vector<Complex> values;
  if (range.kind == RangeKind::point) {
    values.push_back(range.point);
  } else {
    const int g = std::max(2, opts.grid);
    for (int i = 0; i < g; ++i) {
      double t = static_cast<double>(i) / (g - 1);
      values.push_back(range.endpoints[0] +
                       t * (range.endpoints[1] - range.endpoints[0]));
    }
  }

  std::vector<Projection> candidates;
  for (Complex lambda : values) {
    candidates.push_back(unitary4_rank2_projection(U, lambda, tol));
  }
  if (label == 'a' && opts.sweep_points > 0) {
    for (CodeProjection& c : twoqubit_generic_solve(
             U, SweepSpec{opts.sweep_points, opts.exec}, seed, tol)) {
      candidates.push_back(std::move(c.projection));
    }
  }

  CodeFamily family;
  family.channel_fingerprint = channel_fingerprint(channel);
  for (Projection& cand : candidates) {
    VerificationReport report = kl_verify(channel, cand, tol);
    if (!report.correctable) continue;
    CodeProjection code;
    code.projection = std::move(cand);
    code.compression_values = report.lambda_estimate;
    family.codes.push_back({std::move(code), *report.lambda});
  }

  switch (label) {
    case 'a':
      family.notes =
          "non-degenerate spectrum: unique compression-value at the chord "
          "intersection; pairing code plus sampled members of the continuous "
          "solution family";
      break;
    case 'b':
      family.notes =
          "doubly degenerate eigenvalue: compression-value is the repeated "
          "eigenvalue, realized by its eigenspace";
      break;
    case 'c':
      family.notes =
          "two doubly degenerate eigenvalues: segment-valued range sampled "
          "on a grid including both endpoints";
      break;
    case 'd':
      family.exhaustive = true;
      family.notes =
          "triply degenerate eigenvalue: exactly the rank-2 sub-projections "
          "of its eigenspace are correctable";
      break;
    case 'e':
      family.exhaustive = true;
      family.notes = "scalar channel: all rank-2 subspaces correctable";
      break;
  }
  return family;
}

namespace {

struct ProductEntry {
  int i = 0, j = 0;
  Matrix op;        // U_i^dag U_j
  Matrix herm_sum;  // op + op^dag
  Matrix herm_diff; // i(op - op^dag)
};

bool near_scalar(const Matrix& A, double eps) {
  Complex mean = A.trace() / static_cast<double>(A.rows());
  return (A - mean * Matrix::Identity(A.rows(), A.cols())).norm() <=
         eps * std::max(1.0, A.norm());
}

bool passes_all_products(const std::vector<ProductEntry>& products,
                         const Projection& P, double eps) {
  for (const ProductEntry& e : products) {
    if (!scalar_compression_check(e.herm_sum, P, eps)) return false;
    if (!scalar_compression_check(e.herm_diff, P, eps)) return false;
  }
  return true;
}

}  // namespace

MultiSearchResult multi_unitary_common_code(
    const std::vector<Matrix>& unitaries, int k, const SearchSpec& budget,
    std::uint64_t seed, const ToleranceConfig& tol) {
  if (unitaries.empty()) {
    fail(errc::dimension_mismatch,
         "multi_unitary_common_code: empty unitary list");
  }
  const Eigen::Index n = unitaries.front().rows();
  for (const Matrix& u : unitaries) {
    if (u.rows() != n || u.cols() != n) {
      fail(errc::dimension_mismatch,
           "multi_unitary_common_code: mixed dimensions");
    }
    if (!is_unitary(u, tol.eps_proj)) {
      fail(errc::not_unitary,
           "multi_unitary_common_code: operators must be unitary");
    }
  }
  const int N = static_cast<int>(n);
  if (k < 2 || k > N) {
    fail(errc::bad_rank, "multi_unitary_common_code: k must lie in [2, N]");
  }

  std::vector<ProductEntry> products;
  const Complex i_unit(0.0, 1.0);
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    for (std::size_t j = i + 1; j < unitaries.size(); ++j) {
      Matrix op = unitaries[i].adjoint() * unitaries[j];
      if (near_scalar(op, tol.eps_scalar)) continue;
      ProductEntry e;
      e.i = static_cast<int>(i);
      e.j = static_cast<int>(j);
      e.herm_sum = op + op.adjoint();
      e.herm_diff = i_unit * (op - op.adjoint());
      e.op = std::move(op);
      products.push_back(std::move(e));
    }
  }

  MultiSearchResult result;
  auto emit = [&](const Projection& P) {
    CodeProjection code;
    code.projection = P;
    code.compression_values = product_compressions(unitaries, P);
    result.code = std::move(code);
  };

  // Every pairwise product is scalar: any k-dimensional subspace works.
  if (products.empty()) {
    Matrix cols = Matrix::Identity(n, n).leftCols(k);
    Projection p{cols * cols.adjoint(), k};
    emit(p);
    return result;
  }

  // Rigorous emptiness tests. Each Hermitian combination of products with
  // forced singleton compression-values must admit the forced value in its
  // rank-k range; a single violation proves no common code exists.
  const double margin = 1e-7;
  for (const ProductEntry& e : products) {
    if (hermitian_range(e.herm_sum, k, tol).kind == RangeKind::empty ||
        hermitian_range(e.herm_diff, k, tol).kind == RangeKind::empty) {
      result.proven_empty = true;
      return result;
    }
  }
  std::vector<std::pair<std::size_t, Complex>> forced;
  if (N == 4 && k == 2) {
    for (std::size_t l = 0; l < products.size(); ++l) {
      RangeResult r = unitary4_rank2_range(products[l].op, tol);
      if (r.kind == RangeKind::point) forced.push_back({l, r.point});
    }
    for (std::size_t a = 0; a < forced.size() && !result.proven_empty; ++a) {
      for (std::size_t b = a + 1; b < forced.size() && !result.proven_empty;
           ++b) {
        const ProductEntry& ea = products[forced[a].first];
        const ProductEntry& eb = products[forced[b].first];
        const Matrix* parts_a[2] = {&ea.herm_sum, &ea.herm_diff};
        const Matrix* parts_b[2] = {&eb.herm_sum, &eb.herm_diff};
        double vals_a[2] = {2.0 * forced[a].second.real(),
                            -2.0 * forced[a].second.imag()};
        double vals_b[2] = {2.0 * forced[b].second.real(),
                            -2.0 * forced[b].second.imag()};
        for (int sa = 0; sa < 2 && !result.proven_empty; ++sa) {
          for (int sb = 0; sb < 2 && !result.proven_empty; ++sb) {
            Matrix combo = *parts_a[sa] + *parts_b[sb];
            RangeResult r = hermitian_range(combo, k, tol);
            if (!r.contains(Complex(vals_a[sa] + vals_b[sb]), margin)) {
              result.proven_empty = true;
            }
          }
        }
      }
    }
  }
  if (result.proven_empty) return result;

  // Precompute the sampling strategy for the first nontrivial product.
  const Matrix& base = products.front().op;
  Spectrum spec = normal_eigendecomposition(base, tol);
  std::vector<EigenvalueCluster> clusters =
      cluster_eigenvalues(spec, tol.eps_degenerate);
  std::stable_sort(clusters.begin(), clusters.end(),
                   [](const EigenvalueCluster& a, const EigenvalueCluster& b) {
                     return principal_argument(a.value) <
                            principal_argument(b.value);
                   });
  enum class Strategy { two_clusters, eigenspace, generic4, hermitian };
  Strategy strategy = Strategy::hermitian;
  int eigenspace_index = -1;
  if (clusters.size() == 2 && k == 2 && clusters[0].multiplicity >= 2 &&
      clusters[1].multiplicity >= 2) {
    strategy = Strategy::two_clusters;
  } else {
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (clusters[c].multiplicity >= k) {
        strategy = Strategy::eigenspace;
        eigenspace_index = static_cast<int>(c);
        break;
      }
    }
    if (strategy == Strategy::hermitian && k == 2 && clusters.size() >= 4) {
      strategy = Strategy::generic4;
    }
  }
  RangeResult herm_range;
  if (strategy == Strategy::hermitian) {
    herm_range = hermitian_range(products.front().herm_sum, k, tol);
    if (herm_range.kind == RangeKind::empty) {
      result.proven_empty = true;
      return result;
    }
  }

  auto eigenspace_columns = [&](const EigenvalueCluster& c) {
    Matrix cols(n, c.multiplicity);
    for (int j = 0; j < c.multiplicity; ++j) {
      cols.col(j) = spec.vectors.col(c.members[static_cast<std::size_t>(j)]);
    }
    return cols;
  };

  // Candidate codes for one trial, drawn from the solution family of the
  // base product so only the remaining constraints need luck.
  auto trial_candidates = [&](std::uint64_t trial_seed) {
    std::vector<Projection> cands;
    Rng rng(trial_seed);
    switch (strategy) {
      case Strategy::two_clusters: {
        Matrix vz = eigenspace_columns(clusters[0]) *
                    random_unitary(clusters[0].multiplicity, rng.next_u64());
        Matrix vw = eigenspace_columns(clusters[1]) *
                    random_unitary(clusters[1].multiplicity, rng.next_u64());
        double a = rng.next_unit();
        Matrix cols(n, 2);
        cols.col(0) =
            std::sqrt(a) * vz.col(0) + std::sqrt(1.0 - a) * vw.col(0);
        cols.col(1) =
            std::sqrt(a) * vz.col(1) + std::sqrt(1.0 - a) * vw.col(1);
        cands.push_back({cols * cols.adjoint(), 2});
        break;
      }
      case Strategy::eigenspace: {
        const EigenvalueCluster& c =
            clusters[static_cast<std::size_t>(eigenspace_index)];
        Matrix cols = (eigenspace_columns(c) *
                       random_unitary(c.multiplicity, rng.next_u64()))
                          .leftCols(k);
        cands.push_back({cols * cols.adjoint(), k});
        break;
      }
      case Strategy::generic4: {
        // Random interleaved quadruple of distinct eigenvalues.
        const int m = static_cast<int>(clusters.size());
        std::array<int, 4> pick{};
        std::vector<int> pool(static_cast<std::size_t>(m));
        std::iota(pool.begin(), pool.end(), 0);
        for (int t = 0; t < 4; ++t) {
          std::size_t r = static_cast<std::size_t>(rng.next_u64() %
                                                   pool.size());
          pick[static_cast<std::size_t>(t)] = pool[r];
          pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(r));
        }
        std::sort(pick.begin(), pick.end());
        try {
          GenericFrame frame = make_frame(
              spec.vectors,
              {clusters[pick[0]].value, clusters[pick[1]].value,
               clusters[pick[2]].value, clusters[pick[3]].value},
              {clusters[pick[0]].members[0], clusters[pick[1]].members[0],
               clusters[pick[2]].members[0], clusters[pick[3]].members[0]},
              tol);
          double alpha = rng.next_unit() * kTwoPi / 4.0;
          double t2 = rng.next_unit() * kTwoPi;
          double t3 = rng.next_unit() * kTwoPi;
          double t4 = rng.next_unit() * kTwoPi;
          for (auto& [v1, v2] :
               codes_from_sweep_point(frame, alpha, t2, t3, t4, tol)) {
            cands.push_back(projection_from_pair(v1, v2));
          }
        } catch (const Error&) {
          // Ill-conditioned chord geometry for this quadruple; skip.
        }
        break;
      }
      case Strategy::hermitian: {
        double lambda = herm_range.kind == RangeKind::point
                            ? herm_range.point.real()
                            : herm_range.lo + rng.next_unit() *
                                                  (herm_range.hi -
                                                   herm_range.lo);
        try {
          cands.push_back(hermitian_range_projection(products.front().herm_sum,
                                                     k, lambda, tol));
        } catch (const Error&) {
        }
        break;
      }
    }
    return cands;
  };

  const long trials = std::max<long>(budget.trials, 1);
  std::vector<std::optional<Projection>> hits(
      static_cast<std::size_t>(trials));
  std::atomic<long> best{std::numeric_limits<long>::max()};

  auto run_trial = [&](long t) {
    for (Projection& p :
         trial_candidates(derive_seed(seed, static_cast<std::uint64_t>(t)))) {
      if (passes_all_products(products, p, tol.eps_scalar)) {
        hits[static_cast<std::size_t>(t)] = std::move(p);
        long cur = best.load(std::memory_order_relaxed);
        while (t < cur &&
               !best.compare_exchange_weak(cur, t, std::memory_order_relaxed)) {
        }
        return;
      }
    }
  };

  if (budget.exec == Exec::serial) {
    for (long t = 0; t < trials; ++t) {
      run_trial(t);
      if (hits[static_cast<std::size_t>(t)]) break;
    }
  } else {
#pragma omp parallel for schedule(static)
    for (long t = 0; t < trials; ++t) {
      if (t > best.load(std::memory_order_relaxed)) continue;
      run_trial(t);
    }
  }

  long found = best.load();
  if (found != std::numeric_limits<long>::max()) {
    emit(*hits[static_cast<std::size_t>(found)]);
    result.trials_used = found + 1;
  } else {
    result.trials_used = trials;
  }
  return result;
}

}  // namespace rankrange
