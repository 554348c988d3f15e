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

// Command-line front end. Exit codes: 0 pass, 1 verdict fail or unverified,
// 2 usage/parse/input error, 3 ceiling exceeded, 4 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sqpat/sqpat.h"

namespace {

struct Flags {
  std::string system;
  std::string theorem;
  std::string pattern;
  std::optional<unsigned> ext;
  std::string tower;
  std::string q_list;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::uint64_t> ceiling;
  std::optional<double> constant;
  std::string csv;
};

int ExitFor(sqpat_status s) {
  switch (s) {
    case SQPAT_OK: return 0;
    case SQPAT_ERR_PARSE:
    case SQPAT_ERR_USAGE:
    case SQPAT_ERR_INVALID: return 2;
    case SQPAT_ERR_CEILING: return 3;
    case SQPAT_ERR_INTERNAL: return 4;
  }
  return 4;
}

bool ParseTower(const std::string& text, unsigned& lo, unsigned& hi) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return false;
  try {
    std::size_t a = 0, b = 0;
    lo = static_cast<unsigned>(std::stoul(text.substr(0, dots), &a));
    hi = static_cast<unsigned>(std::stoul(text.substr(dots + 2), &b));
    return a == dots && b == text.size() - dots - 2 && lo >= 1 && hi >= lo;
  } catch (...) {
    return false;
  }
}

bool ParseQList(const std::string& text, std::vector<std::uint64_t>& out) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) return false;
    } catch (...) {
      return false;
    }
  }
  return !out.empty();
}

int Usage(const std::string& msg) {
  std::cerr << "sqpat: " << msg << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square-pattern point counts over finite fields"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&f](CLI::App* sub) {
    sub->add_option("--system", f.system, "System file")->required();
    sub->add_option("--pattern", f.pattern, "Pattern such as +-");
    sub->add_option("--ext", f.ext, "Extension degree E");
    sub->add_option("--tower", f.tower, "Tower range E1..E2");
    sub->add_option("--seed", f.seed, "Seed for randomized searches");
    sub->add_option("--workers", f.workers, "Worker threads");
    sub->add_option("--ceiling", f.ceiling, "Enumeration ceiling");
    sub->add_option("--constant", f.constant,
                    "Constant C of the explicit error bound");
    sub->add_option("--csv", f.csv, "Write CSV here ('-' for stdout)");
  };

  CLI::App* count = app.add_subcommand("count", "Count N_S over F_{q^e}");
  CLI::App* verify =
      app.add_subcommand("verify", "Compare counts with a claimed exponent");
  CLI::App* sigma = app.add_subcommand("sigma", "Singular-locus profile");
  CLI::App* classify =
      app.add_subcommand("classify", "External/internal point classes");
  CLI::App* witness =
      app.add_subcommand("witness", "Search for independence certificates");
  CLI::App* sweep = app.add_subcommand("sweep", "Verification over a q list");
  for (auto* sub : {count, verify, sigma, classify, witness, sweep}) {
    add_common(sub);
  }
  verify->add_option("theorem", f.theorem, "thm1 thm2 thm3 cor1 cor2")
      ->required();
  sweep->add_option("--theorem", f.theorem, "thm1 thm2 thm3 cor1 cor2");
  sweep->add_option("--q-list", f.q_list, "Comma-separated q values")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  sqpat_options opts;
  sqpat_options_init(&opts);
  std::vector<std::uint64_t> qs;
  if (!f.theorem.empty()) opts.theorem = f.theorem.c_str();
  if (!f.pattern.empty()) opts.pattern = f.pattern.c_str();
  if (f.ext) {
    if (*f.ext < 1) return Usage("--ext must be >= 1");
    opts.ext = *f.ext;
  }
  if (!f.tower.empty() &&
      !ParseTower(f.tower, opts.tower_lo, opts.tower_hi)) {
    return Usage("--tower expects E1..E2 with 1 <= E1 <= E2");
  }
  if (!f.q_list.empty()) {
    if (!ParseQList(f.q_list, qs)) return Usage("bad --q-list");
    opts.q_list = qs.data();
    opts.q_count = qs.size();
  }
  if (f.seed) {
    opts.has_seed = 1;
    opts.seed = *f.seed;
  }
  if (f.workers) {
    if (*f.workers < 1) return Usage("--workers must be >= 1");
    opts.workers = *f.workers;
  }
  if (f.ceiling) opts.ceiling = *f.ceiling;
  if (f.constant) {
    opts.has_constant = 1;
    opts.constant = *f.constant;
  }

  sqpat_system* sys = nullptr;
  sqpat_status st = sqpat_system_load(f.system.c_str(), &sys);
  if (st != SQPAT_OK) {
    std::cerr << "sqpat: " << sqpat_last_error() << "\n";
    return ExitFor(st);
  }

  sqpat_report* rep = nullptr;
  if (*count) {
    st = sqpat_count(sys, &opts, &rep);
  } else if (*verify) {
    st = sqpat_verify(sys, &opts, &rep);
  } else if (*sigma) {
    st = sqpat_sigma(sys, &opts, &rep);
  } else if (*classify) {
    st = sqpat_classify(sys, &opts, &rep);
  } else if (*witness) {
    st = sqpat_witness(sys, &opts, &rep);
  } else {
    st = sqpat_sweep(sys, &opts, &rep);
  }
  sqpat_system_free(sys);
  if (st != SQPAT_OK) {
    std::cerr << "sqpat: " << sqpat_last_error() << "\n";
    return ExitFor(st);
  }

  std::cout << sqpat_report_summary(rep);
  if (f.csv == "-") {
    std::cout << sqpat_report_csv(rep);
  } else if (!f.csv.empty()) {
    std::ofstream out(f.csv, std::ios::binary);
    out << sqpat_report_csv(rep);
    if (!out) {
      sqpat_report_free(rep);
      return Usage("cannot write " + f.csv);
    }
  }
  const int code = sqpat_report_passed(rep) ? 0 : 1;
  sqpat_report_free(rep);
  return code;
}
