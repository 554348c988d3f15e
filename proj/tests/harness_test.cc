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

#include "sqpat/harness.h"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "sqpat/error.h"

namespace sqpat {
namespace {

LoadedSystem Load(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return LoadFromText(ss.str());
}

const char kOneVar[] = "field p=5 k=1\nambient affine 1\npoly f1 = x1\n";

TEST(Harness, CountAffineExample) {
  HarnessOptions opt;
  opt.pattern = "+";
  const Report r = RunCount(LoadFromText(kOneVar), opt);
  EXPECT_TRUE(r.passed());
  EXPECT_NE(r.csv.find("\n5,1,1,+,2,5,2,0.5,"), std::string::npos) << r.csv;
}

TEST(Harness, CountConicPairUsesProfileForMainTerm) {
  HarnessOptions opt;
  opt.pattern = "+-";
  const Report r = RunCount(Load("tests/data/conic_pair_transverse.sys"), opt);
  // sigma = -1 gives l = 0, so the main term is pi_2(5)/4.
  EXPECT_NE(r.csv.find(",31,4,"), std::string::npos) << r.csv;
}

TEST(Harness, CountTowerHasOneRowPerLevel) {
  HarnessOptions opt;
  opt.pattern = "++";
  opt.tower = {{1, 3}};
  const Report r = RunCount(Load("tests/data/affine_thm1.sys"), opt);
  EXPECT_EQ(std::count(r.csv.begin(), r.csv.end(), '\n'), 4);
}

TEST(Harness, BadPatternIsUsageError) {
  HarnessOptions opt;
  opt.pattern = "+x";
  try {
    RunCount(Load("tests/data/conic_pair_transverse.sys"), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUsage);
  }
}

TEST(Harness, UnknownTheoremIsUsageError) {
  HarnessOptions opt;
  opt.theorem = "thm9";
  try {
    RunVerify(Load("tests/data/conic_pair_transverse.sys"), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUsage);
  }
}

TEST(Harness, Thm2OnTransversePairPasses) {
  HarnessOptions opt;
  opt.theorem = "thm2";
  opt.tower = {{1, 3}};
  const Report r = RunVerify(Load("tests/data/conic_pair_transverse.sys"), opt);
  EXPECT_EQ(r.verdict, Verdict::kPass) << r.summary;
  EXPECT_NE(r.summary.find("sigma=-1"), std::string::npos);
}

TEST(Harness, Thm1RejectsProjectiveInput) {
  HarnessOptions opt;
  opt.theorem = "thm1";
  EXPECT_THROW(RunVerify(Load("tests/data/conic_pair_transverse.sys"), opt),
               Error);
}

TEST(Harness, Thm1WithoutWitnessesIsUnverified) {
  HarnessOptions opt;
  opt.theorem = "thm1";
  opt.tower = {{1, 3}};
  const Report r = RunVerify(
      LoadFromText("field p=5 k=1\nambient affine 1\npoly f1 = x1^2\n"), opt);
  EXPECT_EQ(r.verdict, Verdict::kUnverified);
  EXPECT_FALSE(r.passed());
}

TEST(Harness, SigmaReport) {
  const Report t = RunSigma(Load("tests/data/conic_pair_tangent.sys"), {});
  EXPECT_NE(t.summary.find("sigma=0"), std::string::npos) << t.summary;
  const Report s = RunSigma(Load("tests/data/single_conic.sys"), {});
  EXPECT_NE(s.summary.find("sigma=-1"), std::string::npos) << s.summary;
}

TEST(Harness, ClassifyConic) {
  const Report r = RunClassify(Load("tests/data/single_conic.sys"), {});
  EXPECT_TRUE(r.passed());
  EXPECT_NE(r.summary.find("on=6 external=15 internal=10"), std::string::npos)
      << r.summary;
  EXPECT_EQ(r.csv.rfind("quadric,point,class\n", 0), 0u);
}

TEST(Harness, WitnessReport) {
  HarnessOptions opt;
  opt.ext = 2;
  const Report r = RunWitness(Load("tests/data/affine_linear.sys"), opt);
  EXPECT_TRUE(r.passed()) << r.summary;
}

TEST(Harness, SweepCor1) {
  HarnessOptions opt;
  opt.theorem = "cor1";
  opt.q_list = {5, 9, 13, 25};
  const Report r = RunSweep(Load("tests/data/conic_pair_transverse.sys"), opt);
  EXPECT_EQ(r.verdict, Verdict::kPass) << r.summary;
  opt.q_list = {5};
  EXPECT_THROW(RunSweep(Load("tests/data/conic_pair_transverse.sys"), opt),
               Error);
}

TEST(Harness, CommandLineOverridesFileOptions) {
  // The file pins workers=2 and C=12.5; both are overridable.
  HarnessOptions opt;
  opt.pattern = "+++";
  opt.workers = 1;
  const auto sys = Load("tests/data/options_all.sys");
  const Report a = RunCount(sys, opt);
  opt.workers = 4;
  const Report b = RunCount(sys, opt);
  EXPECT_EQ(a.csv, b.csv);
}

TEST(Harness, ExponentRule) {
  ErrorSeries s;
  s.fit_status = FitStatus::kExact;
  EXPECT_TRUE(ExponentPasses(s, 1.0));
  s.fit_status = FitStatus::kInsufficient;
  EXPECT_FALSE(ExponentPasses(s, 1.0));
  s.fit_status = FitStatus::kFitted;
  s.fitted_exponent = 1.1;
  EXPECT_TRUE(ExponentPasses(s, 1.0));
  s.fitted_exponent = 1.11;
  EXPECT_FALSE(ExponentPasses(s, 1.0));
}

TEST(Harness, DefaultTopLevel) {
  const auto sys = Load("tests/data/affine_thm1.sys").file.system;
  // 3^e points per coordinate, two coordinates: 9^e <= 2^21 -> e <= 6.
  EXPECT_EQ(DefaultTopLevel(sys, kDefaultCeiling), 6u);
}

}  // namespace
}  // namespace sqpat
