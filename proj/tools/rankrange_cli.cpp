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

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rankrange/codesearch.hpp"
#include "rankrange/io.hpp"
#include "rankrange/numrange.hpp"
#include "rankrange/qec.hpp"
#include "rankrange/svg.hpp"

namespace {

using namespace rankrange;

// Exit codes: 0 success/correctable, 1 verified-negative, 2 parse error,
// 3 precondition violation, 4 internal contract breach.
constexpr int kExitNegative = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitInternal = 4;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case errc::not_correctable:
      return kExitNegative;
    case errc::numerical_failure:
    case errc::rank_deficiency:
      return kExitInternal;
    default:
      return kExitPrecondition;
  }
}

std::string tolerances_json(const ToleranceConfig& tol) {
  std::ostringstream os;
  os << "{\"eps_degenerate\":" << io::format_double(tol.eps_degenerate)
     << ",\"eps_ortho\":" << io::format_double(tol.eps_ortho)
     << ",\"eps_proj\":" << io::format_double(tol.eps_proj)
     << ",\"eps_recon\":" << io::format_double(tol.eps_recon)
     << ",\"eps_scalar\":" << io::format_double(tol.eps_scalar)
     << ",\"eps_tp\":" << io::format_double(tol.eps_tp) << "}";
  return os.str();
}

std::string report_json(const std::string& command, const std::string& digest,
                        const std::string& result,
                        const ToleranceConfig& tol) {
  std::ostringstream os;
  os << "{\"command\":\"" << command << "\",\"inputs_digest\":\"" << digest
     << "\",\"result\":" << result
     << ",\"tolerances\":" << tolerances_json(tol) << "}";
  return os.str();
}

std::string range_result_json(const RangeResult& r) {
  std::ostringstream os;
  switch (r.kind) {
    case RangeKind::empty:
      os << "{\"kind\":\"empty\"";
      break;
    case RangeKind::point:
      os << "{\"kind\":\"point\",\"value\":" << io::format_complex(r.point);
      break;
    case RangeKind::real_interval:
      os << "{\"kind\":\"interval\",\"lo\":" << io::format_double(r.lo)
         << ",\"hi\":" << io::format_double(r.hi);
      break;
    case RangeKind::segment:
      os << "{\"kind\":\"segment\",\"endpoints\":["
         << io::format_complex(r.endpoints[0]) << ","
         << io::format_complex(r.endpoints[1]) << "]";
      break;
  }
  if (r.case_label) os << ",\"case\":\"" << *r.case_label << "\"";
  os << "}";
  return os.str();
}

std::string matrix_json(const Matrix& m) {
  return io::to_json(io::matrix_document(m));
}

std::string verification_json(const VerificationReport& report,
                              const DensityCheckResult* density,
                              const BlockPositivityResult* block) {
  std::ostringstream os;
  os << "{";
  if (block) {
    os << "\"block_positivity\":{\"min_eigenvalue\":"
       << io::format_double(block->min_eigenvalue)
       << ",\"residual\":" << io::format_double(block->residual) << "},";
  }
  os << "\"correctable\":" << (report.correctable ? "true" : "false");
  if (report.lambda) {
    os << ",\"lambda\":" << matrix_json(report.lambda->entries);
  }
  if (density) {
    os << ",\"lambda_density\":{\"hermiticity_residual\":"
       << io::format_double(density->hermiticity_residual)
       << ",\"min_eigenvalue\":" << io::format_double(density->min_eigenvalue)
       << ",\"ok\":" << (density->ok ? "true" : "false")
       << ",\"trace_deviation\":"
       << io::format_double(density->trace_deviation) << "}";
  }
  os << ",\"max_residual\":" << io::format_double(report.max_residual)
     << ",\"per_pair_residuals\":[";
  for (Eigen::Index i = 0; i < report.per_pair_residuals.rows(); ++i) {
    if (i) os << ",";
    os << "[";
    for (Eigen::Index j = 0; j < report.per_pair_residuals.cols(); ++j) {
      if (j) os << ",";
      os << io::format_double(report.per_pair_residuals(i, j));
    }
    os << "]";
  }
  os << "]}";
  return os.str();
}

struct RangeArgs {
  std::string input;
  int k = 1;
  std::string kind = "hermitian";
  std::vector<double> lambda;
  std::string plot;
};

int cmd_range(const RangeArgs& args, const ToleranceConfig& tol) {
  std::string text = io::read_file(args.input);
  Matrix m = io::to_matrix(io::parse_matrix_document(text));
  std::ostringstream cfg;
  cfg << "range k=" << args.k << " kind=" << args.kind;
  std::string digest = io::inputs_digest({text, cfg.str()});

  std::string result;
  std::string plot_payload;
  if (args.kind == "hermitian") {
    RangeResult r = hermitian_range(m, args.k, tol);
    result = range_result_json(r);
    if (!args.plot.empty()) {
      plot_payload = svg::render_plot(hermitian_plot_data(m, args.k, tol));
    }
  } else if (args.kind == "unitary") {
    if (args.k != 2) {
      fail(errc::bad_rank, "range: unitary kind supports k = 2 only");
    }
    RangeResult r = unitary4_rank2_range(m, tol);
    result = range_result_json(r);
    if (!args.plot.empty()) {
      plot_payload = svg::render_plot(unitary4_plot_data(m, tol));
    }
  } else if (args.kind == "normal") {
    if (args.lambda.size() != 2) {
      fail(errc::bad_parameter,
           "range: normal kind requires --lambda RE IM to test membership");
    }
    if (!args.plot.empty()) {
      fail(errc::bad_parameter,
           "range: plots cover the hermitian and unitary kinds only");
    }
    Complex lambda(args.lambda[0], args.lambda[1]);
    bool member = normal_hull_membership(m, args.k, lambda, tol);
    std::ostringstream os;
    os << "{\"kind\":\"membership\",\"k\":" << args.k
       << ",\"lambda\":" << io::format_complex(lambda)
       << ",\"member\":" << (member ? "true" : "false") << "}";
    result = os.str();
  } else {
    fail(errc::bad_parameter, "range: unknown kind");
  }

  if (!plot_payload.empty()) io::write_file(args.plot, plot_payload);
  std::cout << report_json("range", digest, result, tol) << "\n";
  return 0;
}

struct FindCodesArgs {
  std::string channel;
  int grid = 11;
  long sweep = 24;
  std::uint64_t seed = 0;
};

int cmd_find_codes(const FindCodesArgs& args, const ToleranceConfig& tol) {
  std::string text = io::read_file(args.channel);
  io::ChannelDocument doc = io::parse_channel_document(text);
  std::ostringstream cfg;
  cfg << "find-codes grid=" << args.grid << " sweep=" << args.sweep
      << " seed=" << args.seed;
  std::string digest = io::inputs_digest({text, cfg.str()});

  Matrix V, W;
  double p = 0.0;
  if (doc.kind == io::ChannelDocument::Kind::buc) {
    V = io::to_matrix(doc.V);
    W = io::to_matrix(doc.W);
    p = doc.p;
  } else if (doc.kind == io::ChannelDocument::Kind::pauli_demo) {
    V = Matrix::Identity(4, 4);
    W = doc.model == "ZZ" ? zz_operator() : z1_operator(2);
    p = doc.p;
  } else {
    // A kraus-kind channel is searched only when it is a list of unitaries;
    // three or more generally admit no code (reported as an empty family).
    KrausChannel ch = io::to_channel(doc, tol);
    std::vector<Matrix> unitaries;
    for (const Matrix& e : ch.kraus_ops) {
      Matrix u = e * std::sqrt(static_cast<double>(ch.kraus_ops.size()));
      if (!is_unitary(u, 1e-6)) {
        fail(errc::not_unitary,
             "find-codes: kraus channels must be uniform unitary mixtures");
      }
      unitaries.push_back(u);
    }
    MultiSearchResult search =
        multi_unitary_common_code(unitaries, 2, SearchSpec{}, args.seed, tol);
    std::ostringstream os;
    os << "{\"channel_fingerprint\":\"" << channel_fingerprint(ch)
       << "\",\"codes\":[";
    if (search.code) {
      VerificationReport rep = kl_verify(ch, search.code->projection, tol);
      os << "{\"compression_values\":"
         << matrix_json(search.code->compression_values)
         << ",\"kl_residual\":" << io::format_double(rep.max_residual)
         << ",\"projection\":" << matrix_json(search.code->projection.matrix)
         << ",\"rank\":" << search.code->projection.rank << "}";
    }
    os << "],\"exhaustive\":false,\"notes\":\""
       << (search.code
               ? "common code found by randomized search"
               : (search.proven_empty
                      ? "no common code: singleton compression-values are "
                        "incompatible"
                      : "no common code found: channels with three or more "
                        "generic unitary errors admit correctable codes only "
                        "on a measure-zero set"))
       << "\"}";
    std::cout << report_json("find-codes", digest, os.str(), tol) << "\n";
    return search.code ? 0 : kExitNegative;
  }

  FindCodesOptions opts;
  opts.grid = args.grid;
  opts.sweep_points = args.sweep;
  CodeFamily family = find_codes_buc4(V, W, p, args.seed, opts, tol);
  if (family.codes.empty()) {
    fail(errc::numerical_failure,
         "find-codes: no codes found although existence is guaranteed");
  }
  KrausChannel ch = make_buc(V, W, p, tol).kraus();
  std::ostringstream os;
  os << "{\"channel_fingerprint\":\"" << family.channel_fingerprint
     << "\",\"codes\":[";
  for (std::size_t i = 0; i < family.codes.size(); ++i) {
    const CodeProjection& code = family.codes[i].first;
    VerificationReport rep = kl_verify(ch, code.projection, tol);
    if (i) os << ",";
    os << "{\"compression_values\":" << matrix_json(code.compression_values)
       << ",\"kl_residual\":" << io::format_double(rep.max_residual)
       << ",\"projection\":" << matrix_json(code.projection.matrix)
       << ",\"rank\":" << code.projection.rank << "}";
  }
  os << "],\"exhaustive\":" << (family.exhaustive ? "true" : "false")
     << ",\"notes\":\"" << family.notes << "\"}";
  std::cout << report_json("find-codes", digest, os.str(), tol) << "\n";
  return 0;
}

struct VerifyArgs {
  std::string channel;
  std::string projection;
};

Projection load_projection(const std::string& text, int dimension,
                           const ToleranceConfig& tol) {
  Matrix m = io::to_matrix(io::parse_matrix_document(text));
  if (m.rows() != m.cols()) {
    throw io::ParseError("projection: matrix must be square");
  }
  if (m.rows() != dimension) {
    fail(errc::dimension_mismatch,
         "projection dimension does not match the channel");
  }
  double tr = m.trace().real();
  int rank = static_cast<int>(std::lround(tr));
  if (rank < 1 || std::abs(tr - rank) > tol.eps_proj ||
      (m - m.adjoint()).norm() > tol.eps_proj ||
      (m * m - m).norm() > tol.eps_proj) {
    fail(errc::bad_parameter, "projection: matrix is not a projection");
  }
  return Projection{m, rank};
}

int cmd_verify(const VerifyArgs& args, const ToleranceConfig& tol) {
  std::string channel_text = io::read_file(args.channel);
  std::string proj_text = io::read_file(args.projection);
  KrausChannel ch = io::to_channel(io::parse_channel_document(channel_text),
                                   tol);
  Projection P = load_projection(proj_text, ch.dimension, tol);
  std::string digest = io::inputs_digest({channel_text, proj_text, "verify"});

  VerificationReport report = kl_verify(ch, P, tol);
  BlockPositivityResult block = block_e_positivity(ch, P, tol);
  DensityCheckResult density;
  const DensityCheckResult* density_ptr = nullptr;
  if (report.lambda) {
    density = lambda_density_check(*report.lambda, tol);
    density_ptr = &density;
  }
  std::cout << report_json("verify", digest,
                           verification_json(report, density_ptr, &block),
                           tol)
            << "\n";
  return report.correctable ? 0 : kExitNegative;
}

struct RecoverArgs {
  std::string channel;
  std::string projection;
  int samples = 20;
  std::uint64_t seed = 0;
};

int cmd_recover(const RecoverArgs& args, const ToleranceConfig& tol) {
  std::string channel_text = io::read_file(args.channel);
  std::string proj_text = io::read_file(args.projection);
  KrausChannel ch = io::to_channel(io::parse_channel_document(channel_text),
                                   tol);
  Projection P = load_projection(proj_text, ch.dimension, tol);
  std::ostringstream cfg;
  cfg << "recover samples=" << args.samples << " seed=" << args.seed;
  std::string digest =
      io::inputs_digest({channel_text, proj_text, cfg.str()});

  RecoveryChannel recovery = build_recovery(ch, P, tol);
  double deviation =
      verify_recovery(ch, recovery, P, args.samples, args.seed);
  std::ostringstream os;
  os << "{\"deviation\":" << io::format_double(deviation)
     << ",\"recovery_kraus\":[";
  for (std::size_t i = 0; i < recovery.channel.kraus_ops.size(); ++i) {
    if (i) os << ",";
    os << matrix_json(recovery.channel.kraus_ops[i]);
  }
  os << "],\"samples\":" << args.samples << "}";
  std::cout << report_json("recover", digest, os.str(), tol) << "\n";
  return deviation <= 1e-8 ? 0 : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Higher-rank numerical ranges and correctable codes for bi-unitary "
      "channels"};
  app.require_subcommand(1);

  ToleranceConfig tol;
  app.add_option("--tolerance-scalar", tol.eps_scalar,
                 "scalar-compression residual tolerance");
  app.add_option("--tolerance-degenerate", tol.eps_degenerate,
                 "eigenvalue clustering tolerance");

  RangeArgs range_args;
  CLI::App* range = app.add_subcommand("range", "compute a rank-k range");
  range->add_option("--input", range_args.input, "matrix JSON file")
      ->required();
  range->add_option("--k", range_args.k, "rank")->required();
  range->add_option("--kind", range_args.kind,
                    "hermitian | unitary | normal");
  range->add_option("--lambda", range_args.lambda,
                    "candidate value RE IM for normal-kind membership")
      ->expected(2);
  range->add_option("--plot", range_args.plot, "write an SVG plot here");

  FindCodesArgs fc_args;
  CLI::App* fc = app.add_subcommand("find-codes",
                                    "find correctable rank-2 codes");
  fc->add_option("--channel", fc_args.channel, "channel JSON file")
      ->required();
  fc->add_option("--grid", fc_args.grid, "segment grid size");
  fc->add_option("--sweep", fc_args.sweep, "generic-family sweep points");
  fc->add_option("--seed", fc_args.seed, "sweep seed")->required();

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify",
                                        "verify the correctability condition");
  verify->add_option("--channel", verify_args.channel, "channel JSON file")
      ->required();
  verify->add_option("--projection", verify_args.projection,
                     "projection JSON file")
      ->required();

  RecoverArgs recover_args;
  CLI::App* recover = app.add_subcommand("recover",
                                         "build and test a recovery channel");
  recover->add_option("--channel", recover_args.channel, "channel JSON file")
      ->required();
  recover->add_option("--projection", recover_args.projection,
                      "projection JSON file")
      ->required();
  recover->add_option("--samples", recover_args.samples,
                      "number of random code states");
  recover->add_option("--seed", recover_args.seed, "sampling seed")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, std::cout, std::cerr) == 0 ? 0 : kExitParse;
  }

  try {
    tol.validate();
    if (range->parsed()) return cmd_range(range_args, tol);
    if (fc->parsed()) return cmd_find_codes(fc_args, tol);
    if (verify->parsed()) return cmd_verify(verify_args, tol);
    if (recover->parsed()) return cmd_recover(recover_args, tol);
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
