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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sqpat/enumerate.h"
#include "sqpat/error.h"

namespace sqpat {

namespace {

FieldPtr ExtensionOf(const Field& base, unsigned ext, std::uint64_t ceiling) {
  if (ext < 1) throw Error(ErrorCode::kInvalidArgument, "extension degree < 1");
  return Field::Make(base.p(), base.k() * ext, ceiling);
}

std::string PointString(const Field& f, std::span<const Element> x,
                        bool projective) {
  std::string s = projective ? "[" : "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += projective ? ":" : ",";
    s += f.ToString(x[i]);
  }
  s += projective ? "]" : ")";
  return s;
}

std::string SubsetString(std::span<const std::size_t> subset) {
  std::string s = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(subset[i] + 1);
  }
  return s + "}";
}

std::vector<std::vector<std::size_t>> NonemptySubsets(std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < m; ++i) {
      if ((mask >> i) & 1) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() < b.size();
  });
  return out;
}

void RequireProjective(const PolySystem& system) {
  if (!system.ambient().projective()) {
    throw Error(ErrorCode::kInvalidArgument,
                "singular-locus probing needs a projective system");
  }
}

}  // namespace

TLocusProbe::TLocusProbe(const PolySystem& system) : system_(system) {
  RequireProjective(system);
  for (const auto& f : system.polys()) gradients_.push_back(Gradient(f));
}

bool TLocusProbe::Contains(std::span<const std::size_t> subset,
                           std::span<const Element> point) const {
  if (subset.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "T locus needs a nonempty subset");
  }
  for (auto i : subset) {
    if (system_.polys().at(i).Evaluate(point).code != 0) return false;
  }
  std::vector<std::vector<Element>> rows;
  for (auto i : subset) {
    std::vector<Element> row;
    for (const auto& d : gradients_[i]) row.push_back(d.Evaluate(point));
    rows.push_back(std::move(row));
  }
  return MatrixRank(*system_.field(), std::move(rows)) <
         static_cast<int>(subset.size());
}

bool TMembership(const PolySystem& system, std::span<const std::size_t> subset,
                 std::span<const Element> point) {
  return TLocusProbe(system).Contains(subset, point);
}

std::uint64_t CountTPoints(const PolySystem& system,
                           std::span<const std::size_t> subset, unsigned ext,
                           const CountOptions& options) {
  RequireProjective(system);
  if (subset.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "T locus needs a nonempty subset");
  }
  const FieldPtr field = ExtensionOf(*system.field(), ext, options.ceiling);
  const PolySystem sys = system.BaseChange(field);
  const std::uint64_t total =
      AmbientSize(sys.ambient(), field->q(), options.ceiling);
  const TLocusProbe probe(sys);
  std::vector<PolyEvaluator> prototype;
  for (auto i : subset) prototype.emplace_back(sys.polys().at(i));
  return ParallelReduce(
      total, options.workers, 1,
      [&](std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> acc) {
        auto evals = prototype;
        ProjectiveCursor cur(field->q(), sys.ambient().n, lo);
        for (std::uint64_t t = lo; t < hi; ++t, cur.Next()) {
          bool vanish = true;
          for (auto& e : evals) {
            if (e(cur.point()).code != 0) {
              vanish = false;
              break;
            }
          }
          if (vanish && probe.Contains(subset, cur.point())) ++acc[0];
        }
      })[0];
}

DimensionEstimate EstimateDimension(std::uint64_t q,
                                    std::span<const LevelCount> counts) {
  if (counts.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no tower levels to estimate from");
  }
  std::vector<LevelCount> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.ext < b.ext; });
  auto rounded = [&](const LevelCount& c) {
    const double size = std::pow(static_cast<double>(q), c.ext);
    return static_cast<int>(
        std::lround(std::log(static_cast<double>(c.count)) / std::log(size)));
  };
  // Largest level with points.
  int top = -1;
  for (int i = static_cast<int>(sorted.size()) - 1; i >= 0; --i) {
    if (sorted[i].count > 0) {
      top = i;
      break;
    }
  }
  if (top < 0) return {-1, Confidence::kExact};
  DimensionEstimate est{rounded(sorted[top]), Confidence::kEstimated};
  if (top >= 1 && sorted[top - 1].count > 0 &&
      sorted[top - 1].ext + 1 == sorted[top].ext &&
      rounded(sorted[top - 1]) == est.dim) {
    const double expected =
        std::pow(static_cast<double>(q), sorted[top].ext * est.dim);
    const double c = static_cast<double>(sorted[top].count);
    if (c <= 4 * expected && c * 4 >= expected) {
      est.confidence = Confidence::kExact;
    }
  }
  return est;
}

int LFromSigma(int n, int m, int sigma) { return std::max(n - m - sigma - 1, 0); }

double GammaFrom(int n, int sigma, int l) {
  return std::max((n + sigma + 1) / 2.0, static_cast<double>(n - l - 1));
}

bool SingularProfile::all_exact() const {
  return std::all_of(per_subset.begin(), per_subset.end(), [](const auto& s) {
    return s.estimate.confidence == Confidence::kExact;
  });
}

bool SingularProfile::containment_verified() const {
  return std::all_of(containment.begin(), containment.end(),
                     [](const auto& c) { return c.witnessed; });
}

std::string SingularProfile::Describe() const {
  std::ostringstream os;
  os << "singular profile over F_" << q << " (levels 1.." << max_level
     << "), n=" << n << " m=" << m << "\n";
  for (const auto& s : per_subset) {
    os << "  T" << SubsetString(s.subset) << ": counts";
    for (const auto& c : s.counts) os << " e" << c.ext << "=" << c.count;
    os << " -> dim " << s.estimate.dim << " ("
       << (s.estimate.confidence == Confidence::kExact ? "exact" : "estimated")
       << ")\n";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", gamma);
  os << "  sigma=" << sigma << " l=" << l << " gamma=" << buf << "\n";
  for (const auto& c : containment) {
    os << "  " << (c.others.empty() ? "P^" + std::to_string(n)
                                       : "V" + SubsetString(c.others))
       << " not in V{" << c.target + 1 << "}: "
       << (c.witnessed ? "witnessed at e=" + std::to_string(c.ext)
                       : std::string("UNVERIFIED"))
       << "\n";
  }
  return os.str();
}

std::string SingularProfile::Csv() const {
  std::ostringstream os;
  os << "subset,level,count,dim,confidence\n";
  for (const auto& s : per_subset) {
    for (const auto& c : s.counts) {
      os << '"' << SubsetString(s.subset) << '"' << "," << c.ext << ","
         << c.count << "," << s.estimate.dim << ","
         << (s.estimate.confidence == Confidence::kExact ? "exact"
                                                         : "estimated")
         << "\n";
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", gamma);
  os << "sigma," << sigma << ",l," << l << ",gamma," << buf << "\n";
  return os.str();
}

SingularProfile ComputeSingularProfile(const PolySystem& system,
                                       unsigned max_level,
                                       const CountOptions& options) {
  RequireProjective(system);
  if (max_level < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one tower level");
  }
  SingularProfile prof;
  prof.n = static_cast<int>(system.ambient().n);
  prof.m = static_cast<int>(system.m());
  prof.q = system.field()->q();
  prof.max_level = max_level;
  for (auto& subset : NonemptySubsets(system.m())) {
    SubsetProfile sp;
    sp.subset = subset;
    for (unsigned e = 1; e <= max_level; ++e) {
      sp.counts.push_back({e, CountTPoints(system, subset, e, options)});
    }
    sp.estimate = EstimateDimension(prof.q, sp.counts);
    prof.sigma = std::max(prof.sigma, sp.estimate.dim);
    prof.per_subset.push_back(std::move(sp));
  }
  prof.l = LFromSigma(prof.n, prof.m, prof.sigma);
  prof.gamma = GammaFrom(prof.n, prof.sigma, prof.l);

  // V(others) not contained in V(target), for subsets of size <= l + 1.
  const std::size_t rmax = std::min<std::size_t>(prof.l + 1, system.m());
  for (auto& subset : NonemptySubsets(system.m())) {
    if (subset.size() > rmax) continue;
    for (std::size_t t = 0; t < subset.size(); ++t) {
      ContainmentCheck check;
      check.target = subset[t];
      for (std::size_t j = 0; j < subset.size(); ++j) {
        if (j != t) check.others.push_back(subset[j]);
      }
      for (unsigned e = 1; e <= max_level && !check.witnessed; ++e) {
        const FieldPtr field =
            ExtensionOf(*system.field(), e, options.ceiling);
        const PolySystem sys = system.BaseChange(field);
        const std::uint64_t total =
            AmbientSize(sys.ambient(), field->q(), options.ceiling);
        ProjectiveCursor cur(field->q(), sys.ambient().n, 0);
        for (std::uint64_t i = 0; i < total; ++i, cur.Next()) {
          const auto x = cur.point();
          if (sys.polys()[check.target].Evaluate(x).code == 0) continue;
          bool in_others = true;
          for (auto j : check.others) {
            if (sys.polys()[j].Evaluate(x).code != 0) {
              in_others = false;
              break;
            }
          }
          if (in_others) {
            check.witnessed = true;
            check.ext = e;
            check.point.assign(x.begin(), x.end());
            break;
          }
        }
      }
      prof.containment.push_back(std::move(check));
    }
  }
  return prof;
}

bool VerifyCertificate(const PolySystem& system, const WitnessCertificate& c) {
  if (!c.field) return false;
  const PolySystem sys = system.BaseChange(c.field);
  const Field& f = *c.field;
  for (std::size_t j = 0; j < sys.m(); ++j) {
    const Element prod = f.Mul(sys.polys()[j].Evaluate(c.u),
                               sys.polys()[j].Evaluate(c.v));
    const int want = (j == c.index) ? -1 : 1;
    if (f.Character(prod) != want) return false;
  }
  return true;
}

std::string WitnessResult::Describe(const PolySystem& system) const {
  std::ostringstream os;
  for (const auto& c : certificates) {
    os << "  " << system.names()[c.index] << ": witnessed over F_"
       << c.field->q() << " by u=" << PointString(*c.field, c.u, false)
       << " v=" << PointString(*c.field, c.v, false) << "\n";
  }
  for (auto i : missing) {
    os << "  " << system.names()[i] << ": no witness found (inconclusive)\n";
  }
  if (complete()) {
    os << "  all certificates found; common extension degree " << unified_ext
       << "\n";
  }
  return os.str();
}

std::string WitnessResult::Csv() const {
  std::ostringstream os;
  os << "index,ext,q,u,v\n";
  for (const auto& c : certificates) {
    os << c.index + 1 << "," << c.ext << "," << c.field->q() << ",\""
       << PointString(*c.field, c.u, false) << "\",\""
       << PointString(*c.field, c.v, false) << "\"\n";
  }
  for (auto i : missing) os << i + 1 << ",,,,\n";
  return os.str();
}

WitnessResult CheckConditionIii(const PolySystem& system,
                                const WitnessOptions& options) {
  if (options.max_extension < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max extension must be >= 1");
  }
  const std::size_t m = system.m();
  const std::size_t nv = system.ambient().nvars();
  std::vector<std::optional<WitnessCertificate>> found(m);
  for (unsigned e = 1; e <= options.max_extension; ++e) {
    if (std::all_of(found.begin(), found.end(),
                    [](const auto& c) { return c.has_value(); })) {
      break;
    }
    const FieldPtr field = ExtensionOf(*system.field(), e, options.ceiling);
    const Field& f = *field;
    const PolySystem sys = system.BaseChange(field);
    std::vector<PolyEvaluator> evals;
    for (const auto& p : sys.polys()) evals.emplace_back(p);

    // Signature bit j set when chi(f_j) = -1; std::nullopt on a zero value.
    auto signature = [&](std::span<const Element> x)
        -> std::optional<std::uint64_t> {
      std::uint64_t sig = 0;
      for (std::size_t j = 0; j < m; ++j) {
        const int chi = f.Character(evals[j](x));
        if (chi == 0) return std::nullopt;
        if (chi < 0) sig |= std::uint64_t{1} << j;
      }
      return sig;
    };

    std::uint64_t points = 1;
    bool small = true;
    for (std::size_t i = 0; i < nv; ++i) {
      if (points > options.exhaustive_pairs / f.q() + 1) {
        small = false;
        break;
      }
      points *= f.q();
    }
    small = small && points <= options.exhaustive_pairs / points;

    if (small) {
      // First pair (u outer, v inner, both in odometer order).
      std::vector<std::optional<std::uint64_t>> sigs(points);
      std::map<std::uint64_t, std::uint64_t> first_with;
      AffineCursor cur(f.q(), nv, 0);
      for (std::uint64_t t = 0; t < points; ++t, cur.Next()) {
        sigs[t] = signature(cur.point());
        if (sigs[t]) first_with.emplace(*sigs[t], t);
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (found[i]) continue;
        for (std::uint64_t u = 0; u < points; ++u) {
          if (!sigs[u]) continue;
          auto it = first_with.find(*sigs[u] ^ (std::uint64_t{1} << i));
          if (it == first_with.end()) continue;
          WitnessCertificate c;
          c.index = i;
          c.ext = e;
          c.field = field;
          AffineCursor cu(f.q(), nv, u), cv(f.q(), nv, it->second);
          c.u.assign(cu.point().begin(), cu.point().end());
          c.v.assign(cv.point().begin(), cv.point().end());
          found[i] = std::move(c);
          break;
        }
      }
    } else {
      for (std::size_t i = 0; i < m; ++i) {
        if (found[i]) continue;
        std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                          static_cast<std::uint32_t>(options.seed >> 32),
                          static_cast<std::uint32_t>(i),
                          static_cast<std::uint32_t>(e)};
        std::mt19937_64 rng(seq);
        std::vector<Element> u(nv), v(nv);
        for (std::uint64_t trial = 0; trial < options.budget; ++trial) {
          for (auto& x : u) x.code = static_cast<std::uint32_t>(rng() % f.q());
          for (auto& x : v) x.code = static_cast<std::uint32_t>(rng() % f.q());
          const auto su = signature(u);
          if (!su) continue;
          const auto sv = signature(v);
          if (sv && (*su ^ *sv) == (std::uint64_t{1} << i)) {
            found[i] = WitnessCertificate{i, e, field, u, v};
            break;
          }
        }
      }
    }
  }
  WitnessResult result;
  for (std::size_t i = 0; i < m; ++i) {
    if (!found[i]) {
      result.missing.push_back(i);
      continue;
    }
    if (!VerifyCertificate(system, *found[i])) {
      throw std::logic_error("witness certificate failed verification");
    }
    result.unified_ext = std::max(result.unified_ext, found[i]->ext);
    result.certificates.push_back(std::move(*found[i]));
  }
  return result;
}

bool CheckConditionIQuadraticPair(const Poly& f1, const Poly& f2) {
  if (!IsHomogeneous(f1, 2) || !IsHomogeneous(f2, 2)) {
    throw Error(ErrorCode::kNotHomogeneous,
                "the pair criterion needs two quadratic forms");
  }
  const GramMatrix g1 = ComputeGram(f1);
  const GramMatrix g2 = ComputeGram(f2);
  if (MatrixRank(f1.field(), g1.Rows()) < 2) return false;
  if (MatrixRank(f2.field(), g2.Rows()) < 2) return false;
  return !g1.ProportionalTo(g2);
}

const char* PointClassName(PointClass c) {
  switch (c) {
    case PointClass::kExternal: return "external";
    case PointClass::kInternal: return "internal";
    case PointClass::kOnQuadric: return "on";
  }
  return "?";
}

namespace {

GramMatrix SmoothGram(const Poly& quadric) {
  if (!IsHomogeneous(quadric, 2)) {
    throw Error(ErrorCode::kNotHomogeneous, "not a quadratic form");
  }
  GramMatrix g = ComputeGram(quadric);
  if (MatrixRank(quadric.field(), g.Rows()) !=
      static_cast<int>(quadric.nvars())) {
    throw Error(ErrorCode::kSingular, "quadric is singular");
  }
  return g;
}

}  // namespace

ConicClassifier::ConicClassifier(const Poly& conic)
    : conic_(conic), gram_(conic.field_ptr(), 3) {
  if (conic.nvars() != 3) {
    throw Error(ErrorCode::kDimensionMismatch, "a conic has 3 variables");
  }
  gram_ = SmoothGram(conic);
  const Field& f = conic.field();
  const std::uint64_t total = Pi(2, f.q());
  ProjectiveCursor cur(f.q(), 2, 0);
  for (std::uint64_t t = 0; t < total; ++t, cur.Next()) {
    const auto x = cur.point();
    if (conic.Evaluate(x).code == 0) points_.push_back({x[0], x[1], x[2]});
  }
}

int ConicClassifier::TangentCount(std::span<const Element> p) const {
  const Field& f = conic_.field();
  std::array<Element, 3> mp;
  gram_.Apply(p, mp);
  int count = 0;
  for (const auto& t : points_) {
    Element dot = f.zero();
    for (int i = 0; i < 3; ++i) dot = f.Add(dot, f.Mul(t[i], mp[i]));
    if (dot.code == 0) ++count;
  }
  return count;
}

namespace {

void CheckPoint(const Poly& f, std::span<const Element> p) {
  if (p.size() != f.nvars()) {
    throw Error(ErrorCode::kDimensionMismatch, "point has the wrong length");
  }
  bool nonzero = false;
  for (const auto& x : p) {
    if (!f.field().IsValid(x)) {
      throw Error(ErrorCode::kInvalidArgument, "coordinate outside the field");
    }
    nonzero = nonzero || x.code != 0;
  }
  if (!nonzero) {
    throw Error(ErrorCode::kInvalidArgument, "the zero vector is not a point");
  }
}

}  // namespace

PointClass ConicClassifier::Classify(std::span<const Element> p) const {
  CheckPoint(conic_, p);
  if (conic_.Evaluate(p).code == 0) return PointClass::kOnQuadric;
  const int n = TangentCount(p);
  if (n == 2) return PointClass::kExternal;
  if (n == 0) return PointClass::kInternal;
  throw std::logic_error("off-conic point with " + std::to_string(n) +
                         " tangent lines");
}

PointClass ClassifyPointConic(const Poly& conic,
                              std::span<const Element> point) {
  return ConicClassifier(conic).Classify(point);
}

PointClass ClassifyPointQuadricCharacter(const Poly& quadric, Element c,
                                         std::span<const Element> point) {
  const Field& f = quadric.field();
  if (c.code == 0) {
    throw Error(ErrorCode::kInvalidArgument, "classification constant is 0");
  }
  CheckPoint(quadric, point);
  const int chi = f.Character(f.Mul(c, quadric.Evaluate(point)));
  if (chi == 0) return PointClass::kOnQuadric;
  return chi > 0 ? PointClass::kExternal : PointClass::kInternal;
}

Calibration CalibrateConstant(const Poly& conic, const CountOptions& options) {
  const ConicClassifier geo(conic);
  const Field& f = conic.field();
  const std::uint64_t total = AmbientSize(Ambient{AmbientKind::kProjective, 2},
                                          f.q(), options.ceiling);
  Calibration cal{f.one(), 0};
  bool picked = false;
  ProjectiveCursor cur(f.q(), 2, 0);
  for (std::uint64_t t = 0; t < total; ++t, cur.Next()) {
    const auto x = cur.point();
    const Element value = conic.Evaluate(x);
    if (value.code == 0) continue;
    const bool external = geo.Classify(x) == PointClass::kExternal;
    if (!picked) {
      const bool square = f.Character(value) > 0;
      cal.constant = (square == external) ? f.one() : f.Nonsquare();
      picked = true;
    }
    const bool char_external =
        ClassifyPointQuadricCharacter(conic, cal.constant, x) ==
        PointClass::kExternal;
    if (char_external != external) {
      throw Error(ErrorCode::kInconsistent,
                  "character and tangent classifiers disagree at " +
                      PointString(f, x, true));
    }
    ++cal.agreement_points;
  }
  if (!picked) {
    throw Error(ErrorCode::kInvalidArgument, "no point off the conic");
  }
  return cal;
}

ClassTotals ClassifyAll(const Poly& quadric, std::optional<Element> constant,
                        const CountOptions& options) {
  const Field& f = quadric.field();
  const Ambient amb{AmbientKind::kProjective, quadric.nvars() - 1};
  const std::uint64_t total = AmbientSize(amb, f.q(), options.ceiling);
  std::optional<ConicClassifier> geo;
  if (!constant) {
    geo.emplace(quadric);
  } else {
    SmoothGram(quadric);
  }
  const auto buckets = ParallelReduce(
      total, options.workers, 4,
      [&](std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> acc) {
        ProjectiveCursor cur(f.q(), amb.n, lo);
        for (std::uint64_t t = lo; t < hi; ++t, cur.Next()) {
          const auto x = cur.point();
          if (constant) {
            ++acc[static_cast<int>(
                ClassifyPointQuadricCharacter(quadric, *constant, x))];
            continue;
          }
          if (quadric.Evaluate(x).code == 0) {
            ++acc[static_cast<int>(PointClass::kOnQuadric)];
            continue;
          }
          const int n = geo->TangentCount(x);
          if (n == 2) {
            ++acc[static_cast<int>(PointClass::kExternal)];
          } else if (n == 0) {
            ++acc[static_cast<int>(PointClass::kInternal)];
          } else {
            ++acc[3];
          }
        }
      });
  ClassTotals out;
  out.external = buckets[static_cast<int>(PointClass::kExternal)];
  out.internal = buckets[static_cast<int>(PointClass::kInternal)];
  out.on = buckets[static_cast<int>(PointClass::kOnQuadric)];
  out.bad_tangent_counts = buckets[3];
  return out;
}

JointClassCounts ClassifyPair(const Poly& c, const Poly& d,
                              const PairClassOptions& options) {
  if (c.nvars() != d.nvars() || !c.field().SameAs(d.field())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "quadrics must live in the same space");
  }
  const std::size_t n = c.nvars() - 1;
  if (n % 2 != 0 || n < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "external/internal points need even n >= 2");
  }
  const GramMatrix gc = SmoothGram(c);
  const GramMatrix gd = SmoothGram(d);
  if (gc.ProportionalTo(gd)) {
    throw Error(ErrorCode::kNotDistinct, "the quadrics coincide");
  }
  JointClassCounts out;
  const bool have_constants = options.constant_c && options.constant_d;
  if (n > 2 && !have_constants) {
    throw Error(ErrorCode::kInvalidArgument,
                "quadrics in P^n with n > 2 need explicit classification "
                "constants");
  }
  out.geometric = !have_constants;
  const Field& f = c.field();
  std::optional<ConicClassifier> geo_c, geo_d;
  if (out.geometric) {
    geo_c.emplace(c);
    geo_d.emplace(d);
    out.constant_c = out.constant_d = f.zero();
  } else {
    out.constant_c = *options.constant_c;
    out.constant_d = *options.constant_d;
    if (out.constant_c.code == 0 || out.constant_d.code == 0) {
      throw Error(ErrorCode::kInvalidArgument, "classification constant is 0");
    }
  }
  const Ambient amb{AmbientKind::kProjective, n};
  const std::uint64_t total = AmbientSize(amb, f.q(), options.count.ceiling);
  const auto buckets = ParallelReduce(
      total, options.count.workers, 9,
      [&](std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> acc) {
        ProjectiveCursor cur(f.q(), n, lo);
        for (std::uint64_t t = lo; t < hi; ++t, cur.Next()) {
          const auto x = cur.point();
          PointClass a, b;
          if (out.geometric) {
            a = geo_c->Classify(x);
            b = geo_d->Classify(x);
          } else {
            a = ClassifyPointQuadricCharacter(c, out.constant_c, x);
            b = ClassifyPointQuadricCharacter(d, out.constant_d, x);
          }
          ++acc[static_cast<int>(a) * 3 + static_cast<int>(b)];
        }
      });
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) out.joint[a][b] = buckets[a * 3 + b];
  }
  return out;
}

std::uint64_t CountExternalInternal(const Poly& c, const Poly& d,
                                    const PairClassOptions& options) {
  return ClassifyPair(c, d, options).external_internal();
}

}  // namespace sqpat
