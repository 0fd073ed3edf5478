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

#include "rankrange/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rankrange::io {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError("invalid JSON");
  return j;
}

double as_finite_double(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + ": expected number");
  double x = j.get<double>();
  if (!std::isfinite(x)) throw ParseError(std::string(what) + ": not finite");
  return x;
}

Complex as_complex(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError(std::string(what) + ": expected [re, im]");
  }
  return Complex(as_finite_double(j[0], what), as_finite_double(j[1], what));
}

MatrixDocument matrix_from_json(const json& j, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + ": expected object");
  MatrixDocument doc;
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw ParseError(std::string(what) + ": requires rows, cols, data");
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    throw ParseError(std::string(what) + ": rows/cols must be integers");
  }
  doc.rows = j["rows"].get<int>();
  doc.cols = j["cols"].get<int>();
  if (doc.rows <= 0 || doc.cols <= 0) {
    throw ParseError(std::string(what) + ": rows/cols must be positive");
  }
  const json& data = j["data"];
  if (!data.is_array() ||
      data.size() != static_cast<std::size_t>(doc.rows) *
                         static_cast<std::size_t>(doc.cols)) {
    throw ParseError(std::string(what) + ": data length must be rows*cols");
  }
  doc.data.reserve(data.size());
  for (const json& entry : data) doc.data.push_back(as_complex(entry, what));
  return doc;
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) return "0";  // normalize -0, which JSON cannot round-trip
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  return "[" + format_double(z.real()) + "," + format_double(z.imag()) + "]";
}

MatrixDocument matrix_document(const Matrix& m) {
  MatrixDocument doc;
  doc.rows = static_cast<int>(m.rows());
  doc.cols = static_cast<int>(m.cols());
  doc.data.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) doc.data.push_back(m(i, j));
  }
  return doc;
}

Matrix to_matrix(const MatrixDocument& doc) {
  Matrix m(doc.rows, doc.cols);
  std::size_t idx = 0;
  for (int i = 0; i < doc.rows; ++i) {
    for (int j = 0; j < doc.cols; ++j) m(i, j) = doc.data[idx++];
  }
  return m;
}

std::string to_json(const MatrixDocument& doc) {
  std::ostringstream os;
  os << "{\"cols\":" << doc.cols << ",\"data\":[";
  for (std::size_t i = 0; i < doc.data.size(); ++i) {
    if (i) os << ",";
    os << format_complex(doc.data[i]);
  }
  os << "],\"rows\":" << doc.rows << "}";
  return os.str();
}

std::string to_json(const ChannelDocument& doc) {
  std::ostringstream os;
  os << "{\"dimension\":" << doc.dimension << ",\"kind\":\"";
  switch (doc.kind) {
    case ChannelDocument::Kind::kraus: {
      os << "kraus\",\"kraus\":[";
      for (std::size_t i = 0; i < doc.kraus.size(); ++i) {
        if (i) os << ",";
        os << to_json(doc.kraus[i]);
      }
      os << "]}";
      break;
    }
    case ChannelDocument::Kind::buc:
      os << "buc\",\"V\":" << to_json(doc.V) << ",\"W\":" << to_json(doc.W)
         << ",\"p\":" << format_double(doc.p) << "}";
      break;
    case ChannelDocument::Kind::pauli_demo:
      os << "pauli-demo\",\"model\":\"" << doc.model
         << "\",\"p\":" << format_double(doc.p) << "}";
      break;
  }
  return os.str();
}

MatrixDocument parse_matrix_document(const std::string& text) {
  return matrix_from_json(parse_json(text), "matrix document");
}

ChannelDocument parse_channel_document(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object()) throw ParseError("channel document: expected object");
  if (!j.contains("dimension") || !j["dimension"].is_number_integer()) {
    throw ParseError("channel document: integer dimension required");
  }
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw ParseError("channel document: kind required");
  }
  ChannelDocument doc;
  doc.dimension = j["dimension"].get<int>();
  if (doc.dimension <= 0) {
    throw ParseError("channel document: dimension must be positive");
  }
  std::string kind = j["kind"].get<std::string>();
  if (kind == "kraus") {
    doc.kind = ChannelDocument::Kind::kraus;
    if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty()) {
      throw ParseError("channel document: kraus list required");
    }
    for (const json& entry : j["kraus"]) {
      doc.kraus.push_back(matrix_from_json(entry, "kraus operator"));
    }
  } else if (kind == "buc") {
    doc.kind = ChannelDocument::Kind::buc;
    if (!j.contains("V") || !j.contains("W") || !j.contains("p")) {
      throw ParseError("channel document: buc requires V, W, p");
    }
    doc.V = matrix_from_json(j["V"], "V");
    doc.W = matrix_from_json(j["W"], "W");
    doc.p = as_finite_double(j["p"], "p");
  } else if (kind == "pauli-demo") {
    doc.kind = ChannelDocument::Kind::pauli_demo;
    if (!j.contains("model") || !j["model"].is_string() || !j.contains("p")) {
      throw ParseError("channel document: pauli-demo requires model and p");
    }
    doc.model = j["model"].get<std::string>();
    if (doc.model != "ZZ" && doc.model != "Z1") {
      throw ParseError("channel document: model must be ZZ or Z1");
    }
    doc.p = as_finite_double(j["p"], "p");
  } else {
    throw ParseError("channel document: unknown kind");
  }
  return doc;
}

KrausChannel to_channel(const ChannelDocument& doc,
                        const ToleranceConfig& tol) {
  switch (doc.kind) {
    case ChannelDocument::Kind::kraus: {
      std::vector<Matrix> ops;
      for (const MatrixDocument& m : doc.kraus) {
        if (m.rows != doc.dimension || m.cols != doc.dimension) {
          throw ParseError("channel document: kraus dimensions disagree");
        }
        ops.push_back(to_matrix(m));
      }
      return make_kraus_channel(std::move(ops), tol);
    }
    case ChannelDocument::Kind::buc: {
      if (doc.V.rows != doc.dimension || doc.W.rows != doc.dimension) {
        throw ParseError("channel document: buc dimensions disagree");
      }
      return make_buc(to_matrix(doc.V), to_matrix(doc.W), doc.p, tol).kraus();
    }
    case ChannelDocument::Kind::pauli_demo: {
      if (doc.dimension != 4) {
        throw ParseError("channel document: pauli-demo is four-dimensional");
      }
      if (!(doc.p > 0.0) || !(doc.p < 1.0)) {
        fail(errc::bad_probability, "pauli-demo: p must lie in (0, 1)");
      }
      Matrix op = doc.model == "ZZ" ? zz_operator() : z1_operator(2);
      return make_buc(Matrix::Identity(4, 4), op, doc.p, tol).kraus();
    }
  }
  throw ParseError("channel document: unreachable kind");
}

std::string inputs_digest(const std::vector<std::string>& texts) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const std::string& t : texts) {
    for (unsigned char c : t) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) os << ((h >> shift) & 0xF);
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << contents;
}

}  // namespace rankrange::io
