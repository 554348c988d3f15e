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

// Subcommand drivers shared by the C API and the command-line tool.

#ifndef SQPAT_HARNESS_H_
#define SQPAT_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sqpat/system_file.h"

namespace sqpat {

inline constexpr double kExponentSlack = 0.1;

struct LoadedSystem {
  std::string text;
  SystemFile file;
};

LoadedSystem LoadFromText(std::string text);

struct HarnessOptions {
  std::string theorem;  // verify and sweep: thm1 thm2 thm3 cor1 cor2
  std::optional<std::string> pattern;
  std::optional<unsigned> ext;
  std::optional<std::pair<unsigned, unsigned>> tower;
  std::vector<std::uint64_t> q_list;
  // Command-line values; unset falls back to the file's options.
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::uint64_t> ceiling;
  std::optional<double> constant;
};

enum class Verdict { kPass, kFail, kUnverified };

const char* VerdictName(Verdict v);

struct Report {
  Verdict verdict = Verdict::kPass;
  std::string csv;
  std::string summary;

  bool passed() const { return verdict == Verdict::kPass; }
};

// fitted <= claimed + slack, or every error is zero.
bool ExponentPasses(const ErrorSeries& series, double claimed);

Report RunCount(const LoadedSystem& sys, const HarnessOptions& opts);
Report RunVerify(const LoadedSystem& sys, const HarnessOptions& opts);
Report RunSigma(const LoadedSystem& sys, const HarnessOptions& opts);
Report RunClassify(const LoadedSystem& sys, const HarnessOptions& opts);
Report RunWitness(const LoadedSystem& sys, const HarnessOptions& opts);
// Verification over the fields F_q for q in opts.q_list; theorem defaults to
// thm1 (affine) or cor1 (projective).
Report RunSweep(const LoadedSystem& sys, const HarnessOptions& opts);

// Largest e with F_{q^e} and the ambient space over it under the ceiling.
// Throws Error(kCeilingExceeded) when even e = 1 does not fit.
unsigned DefaultTopLevel(const PolySystem& system, std::uint64_t ceiling);

}  // namespace sqpat

#endif  // SQPAT_HARNESS_H_
