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

// Singular-locus censuses, independence certificates and the
// external/internal classification of points relative to smooth quadrics.

#ifndef SQPAT_GEOMETRY_H_
#define SQPAT_GEOMETRY_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sqpat/counting.h"
#include "sqpat/field.h"
#include "sqpat/poly.h"

namespace sqpat {

// ---------------------------------------------------------------------------
// T loci: T(f_{i1..ir}) = { x in V(f_{i1..ir}) : rank Jac(f_{i1..ir})(x) < r }.

// Gradients of a projective system, evaluated at points of its own field.
class TLocusProbe {
 public:
  explicit TLocusProbe(const PolySystem& system);

  // Subset indices are 0-based. Throws Error(kInvalidArgument) when empty.
  bool Contains(std::span<const std::size_t> subset,
                std::span<const Element> point) const;

 private:
  PolySystem system_;
  std::vector<std::vector<Poly>> gradients_;
};

bool TMembership(const PolySystem& system, std::span<const std::size_t> subset,
                 std::span<const Element> point);

// #T(F_{q^e}) by sweeping P^n(F_{q^e}).
std::uint64_t CountTPoints(const PolySystem& system,
                           std::span<const std::size_t> subset, unsigned ext,
                           const CountOptions& options = {});

enum class Confidence { kExact, kEstimated };

struct DimensionEstimate {
  int dim = -1;
  Confidence confidence = Confidence::kExact;
};

struct LevelCount {
  unsigned ext = 1;
  std::uint64_t count = 0;
};

// Dimension from point counts over F_{q^e}. Throws Error(kInvalidArgument) on
// empty input.
DimensionEstimate EstimateDimension(std::uint64_t q,
                                    std::span<const LevelCount> counts);

struct SubsetProfile {
  std::vector<std::size_t> subset;
  std::vector<LevelCount> counts;
  DimensionEstimate estimate;
};

// V(f_j : j in others) not contained in V(f_target), witnessed by a point.
struct ContainmentCheck {
  std::vector<std::size_t> others;
  std::size_t target = 0;
  bool witnessed = false;
  unsigned ext = 0;
  std::vector<Element> point;
};

int LFromSigma(int n, int m, int sigma);
double GammaFrom(int n, int sigma, int l);

struct SingularProfile {
  int n = 0;
  int m = 0;
  std::uint64_t q = 0;
  unsigned max_level = 0;
  std::vector<SubsetProfile> per_subset;
  int sigma = -1;
  int l = 0;
  double gamma = 0;
  std::vector<ContainmentCheck> containment;

  bool all_exact() const;
  bool containment_verified() const;
  std::string Describe() const;
  std::string Csv() const;
};

SingularProfile ComputeSingularProfile(const PolySystem& system,
                                       unsigned max_level,
                                       const CountOptions& options = {});

// ---------------------------------------------------------------------------
// Independence certificates.

// chi(f_i(u) f_i(v)) = -1 and chi(f_j(u) f_j(v)) = +1 for j != i, over
// F_{q^ext}.
struct WitnessCertificate {
  std::size_t index = 0;
  unsigned ext = 1;
  FieldPtr field;
  std::vector<Element> u;
  std::vector<Element> v;
};

bool VerifyCertificate(const PolySystem& system, const WitnessCertificate& c);

struct WitnessOptions {
  unsigned max_extension = 2;
  std::uint64_t budget = 200000;
  std::uint64_t seed = 0;
  // Below this many (u, v) pairs a level is searched exhaustively.
  std::uint64_t exhaustive_pairs = 1000000;
  std::uint64_t ceiling = kDefaultCeiling;
};

struct WitnessResult {
  std::vector<WitnessCertificate> certificates;
  std::vector<std::size_t> missing;
  unsigned unified_ext = 0;

  bool complete() const { return missing.empty(); }
  std::string Describe(const PolySystem& system) const;
  std::string Csv() const;
};

WitnessResult CheckConditionIii(const PolySystem& system,
                                const WitnessOptions& options = {});

// Two quadratic forms: both Gram ranks >= 2 and the Gram matrices not
// proportional. Throws Error(kNotHomogeneous) for other degrees.
bool CheckConditionIQuadraticPair(const Poly& f1, const Poly& f2);

// ---------------------------------------------------------------------------
// External and internal points.

enum class PointClass { kExternal, kInternal, kOnQuadric };

const char* PointClassName(PointClass c);

// Tangent-line classifier for a smooth conic in P^2.
class ConicClassifier {
 public:
  // Throws Error(kSingular) unless the Gram matrix has rank 3, and
  // Error(kDimensionMismatch) unless the conic has 3 variables.
  explicit ConicClassifier(const Poly& conic);

  const Poly& conic() const { return conic_; }
  const std::vector<std::array<Element, 3>>& points() const { return points_; }

  // F_q-tangent lines through p: one per T in C(F_q) whose tangent (the polar
  // line M T) passes through p.
  int TangentCount(std::span<const Element> p) const;
  // Throws std::logic_error when an off-conic point has a count other than
  // 0 or 2.
  PointClass Classify(std::span<const Element> p) const;

 private:
  Poly conic_;
  GramMatrix gram_;
  std::vector<std::array<Element, 3>> points_;
};

PointClass ClassifyPointConic(const Poly& conic,
                              std::span<const Element> point);

// External iff chi(c f(P)) = +1. Throws Error(kInvalidArgument) for c = 0.
PointClass ClassifyPointQuadricCharacter(const Poly& quadric, Element c,
                                         std::span<const Element> point);

struct Calibration {
  Element constant;
  std::uint64_t agreement_points = 0;
};

// Picks c in {1, nu} matching the geometric class of the first off-conic
// point, then checks agreement on every off-conic point; a disagreement
// throws Error(kInconsistent).
Calibration CalibrateConstant(const Poly& conic,
                              const CountOptions& options = {});

struct ClassTotals {
  std::uint64_t on = 0;
  std::uint64_t external = 0;
  std::uint64_t internal = 0;
  // Off-conic points whose tangent count was neither 0 nor 2 (geometric mode).
  std::uint64_t bad_tangent_counts = 0;
};

// Geometric mode for conics; character mode when `constant` is given.
ClassTotals ClassifyAll(const Poly& quadric, std::optional<Element> constant,
                        const CountOptions& options = {});

struct PairClassOptions {
  std::optional<Element> constant_c;
  std::optional<Element> constant_d;
  CountOptions count;
};

// joint[a][b]: points with class a for C and class b for D (PointClass
// order).
struct JointClassCounts {
  std::array<std::array<std::uint64_t, 3>, 3> joint{};
  bool geometric = true;
  Element constant_c;
  Element constant_d;

  std::uint64_t external_internal() const { return joint[0][1]; }
};

// Throws Error(kSingular), Error(kNotDistinct), or Error(kInvalidArgument)
// for odd n or, when n > 2, missing constants.
JointClassCounts ClassifyPair(const Poly& c, const Poly& d,
                              const PairClassOptions& options = {});

std::uint64_t CountExternalInternal(const Poly& c, const Poly& d,
                                    const PairClassOptions& options = {});

}  // namespace sqpat

#endif  // SQPAT_GEOMETRY_H_
