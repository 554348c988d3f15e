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

#ifndef SQPAT_ERROR_H_
#define SQPAT_ERROR_H_

#include <stdexcept>
#include <string>

namespace sqpat {

enum class ErrorCode {
  kNonPrime,
  kEvenCharacteristic,
  kBadDegree,
  kCeilingExceeded,
  kDivisionByZero,
  kFieldMismatch,
  kIncompatibleFields,
  kDimensionMismatch,
  kRaggedMatrix,
  kNotHomogeneous,
  kZeroPolynomial,
  kSingular,
  kNotDistinct,
  kInconsistent,
  kParse,
  kUsage,
  kInvalidArgument,
};

const char* ErrorCodeName(ErrorCode code);

// Recoverable failure of a public operation. Broken internal invariants are
// reported with std::logic_error instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sqpat

#endif  // SQPAT_ERROR_H_
