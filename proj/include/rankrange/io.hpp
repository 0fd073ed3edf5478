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

#include <string>
#include <vector>

#include "rankrange/channel.hpp"
#include "rankrange/matrix.hpp"
#include "rankrange/types.hpp"

namespace rankrange::io {

/// Signals a malformed or schema-violating input document; the CLI maps it
/// to exit code 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense complex matrix on the wire: row-major entries, each a two-element
/// [re, im] array.
struct MatrixDocument {
  int rows = 0;
  int cols = 0;
  std::vector<Complex> data;  // row-major, length rows*cols
};

struct ChannelDocument {
  enum class Kind { kraus, buc, pauli_demo };
  int dimension = 0;
  Kind kind = Kind::kraus;
  std::vector<MatrixDocument> kraus;  // kraus kind
  MatrixDocument V, W;                // buc kind
  double p = 0.0;                     // buc and pauli-demo kinds
  std::string model;                  // pauli-demo kind: "ZZ" or "Z1"
};

MatrixDocument matrix_document(const Matrix& m);
Matrix to_matrix(const MatrixDocument& doc);

/// Serialization uses 17 significant digits so doubles survive the round
/// trip losslessly; serialize(parse(s)) is byte-identical to serialize of
/// the original document.
std::string to_json(const MatrixDocument& doc);
std::string to_json(const ChannelDocument& doc);

MatrixDocument parse_matrix_document(const std::string& text);
ChannelDocument parse_channel_document(const std::string& text);

/// Number formatting shared by every document writer.
std::string format_double(double x);
std::string format_complex(Complex z);

KrausChannel to_channel(const ChannelDocument& doc,
                        const ToleranceConfig& tol = {});

/// FNV-1a digest of the raw input texts, recorded in every report.
std::string inputs_digest(const std::vector<std::string>& texts);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace rankrange::io
