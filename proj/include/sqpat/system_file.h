// Copyright 2026 The sqpat Authors.
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

// Line-oriented system files:
//
//   # comment
//   field p=5 k=1
//   ambient projective 2
//   vars x0 x1 x2
//   poly f1 = x0^2 + x1^2 - x2^2
//   option C=4
//
// Expressions use + - * ^, parentheses, integer literals and implicit
// multiplication ("3x0x1"). The name g denotes the field generator when k > 1
// and may not be used as a variable. Without a vars line the variables are
// x1..xn (affine) or x0..xn (projective). Option keys: nu, C, seed, ceiling,
// workers, cC, cD.

#ifndef SQPAT_SYSTEM_FILE_H_
#define SQPAT_SYSTEM_FILE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqpat/counting.h"
#include "sqpat/error.h"
#include "sqpat/field.h"

namespace sqpat {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct SystemOptions {
  std::optional<Element> nu;
  std::optional<double> c_user;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> ceiling;
  std::optional<unsigned> workers;
  // Character-mode classification constants for the first two quadrics.
  std::optional<Element> class_c;
  std::optional<Element> class_d;

  friend bool operator==(const SystemOptions&, const SystemOptions&) = default;
};

struct SystemFile {
  PolySystem system;
  std::vector<std::string> vars;
  SystemOptions options;
};

// Throws ParseError (code kParse) for syntax problems, undeclared variables,
// zero polynomials and non-quadratic members of projective systems.
SystemFile ParseSystem(std::string_view text);

// Same text read over another field; literals are reduced in the new field
// and g is its generator.
SystemFile ParseSystemOver(std::string_view text, FieldPtr field);

SystemFile LoadSystem(const std::string& path);

std::string SerializeSystem(const SystemFile& file);

// Polynomial in the file syntax, using the given variable names.
std::string FormatPoly(const Poly& f, const std::vector<std::string>& vars);

bool SameSystem(const SystemFile& a, const SystemFile& b);

}  // namespace sqpat

#endif  // SQPAT_SYSTEM_FILE_H_
