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

#include "sqpat/geometry.h"

#include <gtest/gtest.h>

#include <set>

#include "sqpat/enumerate.h"
#include "sqpat/error.h"
#include "test_util.h"

namespace sqpat {
namespace {

using testing::Affine;
using testing::P;
using testing::Projective;
using testing::Pt;

const std::size_t kFirst[] = {0};
const std::size_t kBoth[] = {0, 1};

PolySystem TangentPair(const FieldPtr& f) {
  return Projective(f, 2, {"x0^2 + x1^2 - x2^2", "x0^2 - x1^2 - x2^2"});
}

PolySystem TransversePair(const FieldPtr& f) {
  return Projective(f, 2, {"x0^2 + x1^2 - x2^2", "x0^2 + 2*x1^2 + x2^2"});
}

TEST(TLocus, SmoothConicHasNoSingularPoints) {
  auto f5 = Field::Make(5, 1);
  const auto sys = Projective(f5, 2, {"x0^2 + x1^2 - x2^2"});
  ProjectiveCursor cur(5, 2, 0);
  for (int i = 0; i < 31; ++i, cur.Next()) {
    EXPECT_FALSE(TMembership(sys, kFirst, cur.point()));
  }
  EXPECT_EQ(CountTPoints(sys, kFirst, 1), 0u);
  EXPECT_EQ(CountTPoints(sys, kFirst, 2), 0u);
}

TEST(TLocus, TangentPairExamples) {
  auto f5 = Field::Make(5, 1);
  const auto sys = TangentPair(f5);
  EXPECT_TRUE(TMembership(sys, kBoth, Pt({1, 0, 1})));
  EXPECT_TRUE(TMembership(sys, kBoth, Pt({1, 0, 4})));
  for (std::uint32_t x0 = 0; x0 < 5; ++x0) {
    for (std::uint32_t x2 = 0; x2 < 5; ++x2) {
      EXPECT_FALSE(TMembership(sys, kBoth, Pt({x0, 1, x2})));
    }
  }
  EXPECT_EQ(CountTPoints(sys, kBoth, 1), 2u);
}

TEST(TLocus, ScaleInvariance) {
  auto f7 = Field::Make(7, 1);
  const auto sys = TangentPair(f7);
  ProjectiveCursor cur(7, 2, 0);
  for (int i = 0; i < 57; ++i, cur.Next()) {
    const bool base = TMembership(sys, kBoth, cur.point());
    for (std::uint32_t c = 2; c < 7; ++c) {
      std::vector<Element> scaled;
      for (auto x : cur.point()) scaled.push_back(f7->Mul(x, Element{c}));
      EXPECT_EQ(TMembership(sys, kBoth, scaled), base);
    }
  }
}

TEST(TLocus, AgreesWithBruteForceRank) {
  // Independent check of the tangent-pair census: both forms vanish and the
  // 2x3 gradient matrix has proportional rows.
  for (auto q : {5u, 7u, 9u, 13u}) {
    auto f = Field::MakeOfSize(q);
    const auto sys = TangentPair(f);
    const auto g1 = Gradient(sys.polys()[0]);
    const auto g2 = Gradient(sys.polys()[1]);
    std::uint64_t want = 0;
    ProjectiveCursor cur(q, 2, 0);
    for (std::uint64_t i = 0; i < q * q + q + 1; ++i, cur.Next()) {
      const auto pt = cur.point();
      if (sys.polys()[0].Evaluate(pt).code || sys.polys()[1].Evaluate(pt).code) {
        continue;
      }
      bool proportional = true;
      for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
          const Element lhs = f->Mul(g1[a].Evaluate(pt), g2[b].Evaluate(pt));
          const Element rhs = f->Mul(g1[b].Evaluate(pt), g2[a].Evaluate(pt));
          proportional = proportional && lhs == rhs;
        }
      }
      want += proportional;
    }
    EXPECT_EQ(CountTPoints(sys, kBoth, 1 * 1, {}), want) << q;
  }
}

TEST(TLocus, RankOneLine) {
  auto f3 = Field::Make(3, 1);
  const auto sys = Projective(f3, 2, {"(x0 + x1)^2"});
  EXPECT_EQ(CountTPoints(sys, kFirst, 1), 4u);
  EXPECT_EQ(CountTPoints(sys, kFirst, 2), 10u);
}

TEST(TLocus, EmptySubsetRejected) {
  auto f5 = Field::Make(5, 1);
  const auto sys = TangentPair(f5);
  try {
    TMembership(sys, {}, Pt({1, 0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(EstimateDimension, Examples) {
  const LevelCount empty[] = {{1, 0}, {2, 0}};
  const auto e0 = EstimateDimension(5, empty);
  EXPECT_EQ(e0.dim, -1);
  EXPECT_EQ(e0.confidence, Confidence::kExact);
  const LevelCount points[] = {{1, 2}, {2, 2}};
  const auto e1 = EstimateDimension(5, points);
  EXPECT_EQ(e1.dim, 0);
  EXPECT_EQ(e1.confidence, Confidence::kExact);
  const LevelCount line[] = {{1, 4}, {2, 10}};
  const auto e2 = EstimateDimension(3, line);
  EXPECT_EQ(e2.dim, 1);
  EXPECT_EQ(e2.confidence, Confidence::kExact);
}

TEST(EstimateDimension, DisagreeingLevelsAreEstimated) {
  const LevelCount jumpy[] = {{1, 1}, {2, 600}};
  EXPECT_EQ(EstimateDimension(5, jumpy).confidence, Confidence::kEstimated);
}

TEST(Profile, Formulas) {
  EXPECT_EQ(LFromSigma(2, 2, -1), 0);
  EXPECT_EQ(LFromSigma(4, 2, -1), 2);
  EXPECT_EQ(LFromSigma(2, 2, 0), 0);
  EXPECT_DOUBLE_EQ(GammaFrom(2, -1, 0), 1.0);
  EXPECT_DOUBLE_EQ(GammaFrom(2, 0, 0), 1.5);
  EXPECT_DOUBLE_EQ(GammaFrom(4, -1, 2), 2.0);
}

TEST(Profile, TransversePair) {
  auto f5 = Field::Make(5, 1);
  const auto prof = ComputeSingularProfile(TransversePair(f5), 2);
  EXPECT_EQ(prof.sigma, -1);
  EXPECT_EQ(prof.l, 0);
  EXPECT_DOUBLE_EQ(prof.gamma, 1.0);
  EXPECT_TRUE(prof.all_exact());
  EXPECT_EQ(prof.per_subset.size(), 3u);
  EXPECT_NE(prof.Describe().find("sigma"), std::string::npos);
}

TEST(Profile, TangentPair) {
  auto f5 = Field::Make(5, 1);
  const auto prof = ComputeSingularProfile(TangentPair(f5), 2);
  EXPECT_EQ(prof.sigma, 0);
  EXPECT_TRUE(prof.all_exact());
}

TEST(Profile, SingleSmoothConic) {
  auto f7 = Field::Make(7, 1);
  const auto prof =
      ComputeSingularProfile(Projective(f7, 2, {"x0^2 + x1^2 - x2^2"}), 2);
  EXPECT_EQ(prof.sigma, -1);
}

TEST(Profile, DiagonalFamily) {
  // Diagonal pairs diag(1,1,-1) with diag(1,b,c): tangent exactly when the
  // two forms share a point with proportional gradients.
  auto f7 = Field::Make(7, 1);
  int tangent = 0, transverse = 0;
  for (std::uint32_t b = 1; b < 7; ++b) {
    for (std::uint32_t c = 1; c < 7; ++c) {
      if (b == 1 && c == 6) continue;  // same conic
      const auto sys =
          Projective(f7, 2, {"x0^2 + x1^2 - x2^2",
                             "x0^2 + " + std::to_string(b) + "*x1^2 + " +
                                 std::to_string(c) + "*x2^2"});
      const auto prof = ComputeSingularProfile(sys, 2);
      // Hand-derived: the pencil B - tA is singular at t = 1, b, -c, and
      // the pair is tangent iff two of these coincide. The tangency points
      // may only be defined over F_49, which level 2 covers.
      const bool hand_tangent = b == 1 || c == 6 || b + c == 7;
      EXPECT_EQ(prof.sigma, hand_tangent ? 0 : -1) << b << " " << c;
      (hand_tangent ? tangent : transverse)++;
    }
  }
  EXPECT_GT(tangent, 0);
  EXPECT_GT(transverse, 0);
}

TEST(Witness, CoordinateFunctions) {
  auto f5 = Field::Make(5, 1);
  const auto sys = Affine(f5, 2, {"x0", "x1"});
  const auto res = CheckConditionIii(sys);
  ASSERT_TRUE(res.complete());
  ASSERT_EQ(res.certificates.size(), 2u);
  for (const auto& c : res.certificates) {
    EXPECT_TRUE(VerifyCertificate(sys, c));
  }
  EXPECT_EQ(res.certificates[0].u, Pt({1, 1}));
  EXPECT_EQ(res.certificates[0].v, Pt({2, 1}));
}

TEST(Witness, PerfectSquareIsInconclusive) {
  for (auto q : {3u, 5u}) {
    auto f = Field::MakeOfSize(q);
    const auto sys = Affine(f, 1, {"x0^2"});
    const auto res = CheckConditionIii(sys);
    EXPECT_FALSE(res.complete());
    EXPECT_EQ(res.missing, (std::vector<std::size_t>{0}));
    EXPECT_NE(res.Describe(sys).find("inconclusive"), std::string::npos);
  }
}

TEST(Witness, AssociatePairIsInconclusive) {
  auto f5 = Field::Make(5, 1);
  const auto sys = Affine(f5, 1, {"x0", "2*x0"});
  const auto res = CheckConditionIii(sys);
  EXPECT_EQ(res.missing, (std::vector<std::size_t>{0, 1}));
}

TEST(Witness, ForgedCertificateRejected) {
  auto f5 = Field::Make(5, 1);
  const auto sys = Affine(f5, 2, {"x0", "x1"});
  WitnessCertificate c;
  c.index = 0;
  c.ext = 1;
  c.field = f5;
  c.u = Pt({1, 1});
  c.v = Pt({4, 1});  // 1 and 4 are both squares
  EXPECT_FALSE(VerifyCertificate(sys, c));
}

TEST(Witness, SeedIsDeterministic) {
  auto f = Field::MakeOfSize(27);
  const auto sys = Affine(f, 2, {"x0^2 + x1 + 1", "x0 + x1^2"});
  WitnessOptions opt;
  opt.exhaustive_pairs = 0;  // force sampling
  opt.seed = 42;
  const auto a = CheckConditionIii(sys, opt);
  const auto b = CheckConditionIii(sys, opt);
  ASSERT_TRUE(a.complete());
  EXPECT_EQ(a.Csv(), b.Csv());
}

TEST(PairCriterion, Examples) {
  auto f5 = Field::Make(5, 1);
  EXPECT_TRUE(CheckConditionIQuadraticPair(P(f5, 2, "x0^2 + x1^2"),
                                           P(f5, 2, "x0^2 - x1^2")));
  EXPECT_FALSE(CheckConditionIQuadraticPair(P(f5, 2, "(x0 + x1)^2"),
                                            P(f5, 2, "x0^2 - x1^2")));
  EXPECT_FALSE(CheckConditionIQuadraticPair(P(f5, 2, "x0^2 + x1^2"),
                                            P(f5, 2, "2*x0^2 + 2*x1^2")));
}

TEST(Classify, ConicOverF5) {
  auto f5 = Field::Make(5, 1);
  const Poly c = P(f5, 3, "x0^2 + x1^2 - x2^2");
  const ConicClassifier cls(c);
  EXPECT_EQ(cls.points().size(), 6u);
  EXPECT_EQ(cls.Classify(Pt({1, 0, 1})), PointClass::kOnQuadric);
  // [0:0:1]: polar line is x2 = 0, which meets the conic where x0^2 = -x1^2,
  // i.e. x0 = +-2 x1: two F_5-points, so two tangents.
  EXPECT_EQ(cls.TangentCount(Pt({0, 0, 1})), 2);
  EXPECT_EQ(cls.Classify(Pt({0, 0, 1})), PointClass::kExternal);
  const ClassTotals t = ClassifyAll(c, std::nullopt);
  EXPECT_EQ(t.on, 6u);
  EXPECT_EQ(t.external, 15u);
  EXPECT_EQ(t.internal, 10u);
  EXPECT_EQ(t.bad_tangent_counts, 0u);
}

TEST(Classify, TotalsAcrossFields) {
  for (auto q : {5u, 7u, 9u, 11u, 13u}) {
    auto f = Field::MakeOfSize(q);
    const Poly c = P(f, 3, "x0^2 + x1^2 - x2^2");
    const ClassTotals t = ClassifyAll(c, std::nullopt);
    EXPECT_EQ(t.on, q + 1);
    EXPECT_EQ(t.external, q * (q + 1) / 2);
    EXPECT_EQ(t.internal, q * (q - 1) / 2);
    EXPECT_EQ(t.bad_tangent_counts, 0u);
  }
}

TEST(Classify, CharacterAgreesAfterCalibration) {
  for (auto q : {5u, 9u, 13u}) {
    auto f = Field::MakeOfSize(q);
    for (const char* text : {"x0^2 + x1^2 - x2^2", "2*x0^2 + x1*x2",
                             "x0^2 + x0*x1 + 2*x2^2"}) {
      const Poly c = P(f, 3, text);
      const Calibration cal = CalibrateConstant(c);
      EXPECT_EQ(cal.agreement_points, q * q + q + 1 - (q + 1));
      const ConicClassifier cls(c);
      ProjectiveCursor cur(q, 2, 0);
      for (std::uint64_t i = 0; i < q * q + q + 1; ++i, cur.Next()) {
        EXPECT_EQ(ClassifyPointQuadricCharacter(c, cal.constant, cur.point()),
                  cls.Classify(cur.point()));
      }
    }
  }
}

TEST(Classify, ScalingTheConicMovesTheConstant) {
  // Scaling f by a non-square flips every character, so the calibrated
  // constant changes class while the geometric classes stay put.
  auto f5 = Field::Make(5, 1);
  const Poly c = P(f5, 3, "x0^2 + x1^2 - x2^2");
  const Poly scaled = c.Scale(f5->Nonsquare());
  const Element a = CalibrateConstant(c).constant;
  const Element b = CalibrateConstant(scaled).constant;
  EXPECT_NE(f5->Character(a), f5->Character(b));
  const auto t1 = ClassifyAll(c, std::nullopt);
  const auto t2 = ClassifyAll(scaled, std::nullopt);
  EXPECT_EQ(t1.external, t2.external);
}

TEST(Classify, FlippingConstantSwapsClasses) {
  auto f = Field::MakeOfSize(9);
  const Poly c = P(f, 3, "x0^2 + x1^2 - x2^2");
  const auto one = ClassifyAll(c, f->one());
  const auto nu = ClassifyAll(c, f->Nonsquare());
  EXPECT_EQ(one.external, nu.internal);
  EXPECT_EQ(one.internal, nu.external);
  EXPECT_EQ(one.on, nu.on);
}

TEST(Classify, OnQuadricRegardlessOfConstant) {
  auto f5 = Field::Make(5, 1);
  const Poly c = P(f5, 3, "x0^2 + x1^2 - x2^2");
  for (std::uint32_t k = 1; k < 5; ++k) {
    EXPECT_EQ(ClassifyPointQuadricCharacter(c, Element{k}, Pt({1, 0, 1})),
              PointClass::kOnQuadric);
  }
}

TEST(Classify, Errors) {
  auto f5 = Field::Make(5, 1);
  try {
    ConicClassifier cls(P(f5, 3, "x0^2"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingular);
  }
  try {
    ConicClassifier cls(P(f5, 4, "x0^2 + x1^2 + x2^2 + x3^2"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
  const ConicClassifier cls(P(f5, 3, "x0^2 + x1^2 - x2^2"));
  EXPECT_THROW(cls.Classify(Pt({0, 0, 0})), Error);
  EXPECT_THROW(cls.Classify(Pt({1, 0})), Error);
}

TEST(ClassifyPair, PartitionAndExample) {
  auto f5 = Field::Make(5, 1);
  const Poly c = P(f5, 3, "x0^2 + x1^2 - x2^2");
  const Poly d = P(f5, 3, "x0^2 - x1^2 - x2^2");
  const auto joint = ClassifyPair(c, d);
  std::uint64_t total = 0;
  for (const auto& row : joint.joint) {
    for (auto v : row) total += v;
  }
  EXPECT_EQ(total, 31u);
  // Brute force with the single-conic classifier.
  const ConicClassifier cc(c), dc(d);
  std::uint64_t want = 0;
  ProjectiveCursor cur(5, 2, 0);
  for (int i = 0; i < 31; ++i, cur.Next()) {
    want += cc.Classify(cur.point()) == PointClass::kExternal &&
            dc.Classify(cur.point()) == PointClass::kInternal;
  }
  EXPECT_EQ(joint.external_internal(), want);
  EXPECT_EQ(CountExternalInternal(c, d), want);
}

TEST(ClassifyPair, Errors) {
  auto f5 = Field::Make(5, 1);
  const Poly c = P(f5, 3, "x0^2 + x1^2 - x2^2");
  try {
    ClassifyPair(c, c.Scale(Element{2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotDistinct);
  }
  const Poly q4a = P(f5, 5, "x0^2 + x1^2 + x2^2 + x3^2 + x4^2");
  const Poly q4b = P(f5, 5, "x0^2 + 2*x1^2 + x2^2 + x3^2 + x4^2");
  EXPECT_THROW(ClassifyPair(q4a, q4b), Error);  // constants required
  PairClassOptions opt;
  opt.constant_c = f5->one();
  opt.constant_d = f5->one();
  const auto joint = ClassifyPair(q4a, q4b, opt);
  EXPECT_FALSE(joint.geometric);
  std::uint64_t total = 0;
  for (const auto& row : joint.joint) {
    for (auto v : row) total += v;
  }
  EXPECT_EQ(total, Pi(4, 5));
}

}  // namespace
}  // namespace sqpat
