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

// Exact square-value pattern counts N_S, the auxiliary variety
//   X = { f_i - s_i^2 = 0 (i in S),  f_i - nu*s_i^2 = 0 (i not in S) }
// counted two independent ways, the main terms, and error series.

#ifndef SQPAT_COUNTING_H_
#define SQPAT_COUNTING_H_

#include <boost/rational.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sqpat/field.h"
#include "sqpat/poly.h"

namespace sqpat {

using Rational = boost::rational<std::int64_t>;

enum class AmbientKind { kAffine, kProjective };

struct Ambient {
  AmbientKind kind = AmbientKind::kAffine;
  std::size_t n = 0;

  std::size_t nvars() const {
    return kind == AmbientKind::kAffine ? n : n + 1;
  }
  bool projective() const { return kind == AmbientKind::kProjective; }
};

// (f_1, ..., f_m) over a common field and ambient space. Construction checks
// that m >= 1, every f_i is nonzero with the right variable count, and that
// projective members are quadratic forms.
class PolySystem {
 public:
  PolySystem(FieldPtr field, Ambient ambient, std::vector<Poly> polys,
             std::vector<std::string> names = {});

  const FieldPtr& field() const { return field_; }
  const Ambient& ambient() const { return ambient_; }
  const std::vector<Poly>& polys() const { return polys_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t m() const { return polys_.size(); }

  // max(deg f_i, 2) per polynomial.
  std::vector<int> BoundDegrees() const;

  PolySystem BaseChange(const FieldPtr& to) const;
  PolySystem Subsystem(std::span<const std::size_t> indices) const;

 private:
  FieldPtr field_;
  Ambient ambient_;
  std::vector<Poly> polys_;
  std::vector<std::string> names_;
};

// Subset S of {1..m}: '+' at position i means f_i must be a nonzero square,
// '-' a non-square.
class Pattern {
 public:
  explicit Pattern(std::vector<bool> squares) : squares_(std::move(squares)) {}

  // Accepts '+', '-' and U+2212; throws Error(kUsage) otherwise.
  static Pattern Parse(std::string_view text, std::size_t m);
  static std::vector<Pattern> All(std::size_t m);

  std::size_t m() const { return squares_.size(); }
  bool square(std::size_t i) const { return squares_[i]; }
  std::string ToString() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::vector<bool> squares_;
};

struct CountOptions {
  unsigned workers = 1;
  std::uint64_t ceiling = kDefaultCeiling;
};

// Number of points of the ambient space over the system's field.
std::uint64_t AmbientSize(const Ambient& ambient, std::uint64_t q,
                          std::uint64_t ceiling);

// Counts of character signatures: bucket sum_i (chi(f_i(x)) + 1) * 3^i.
std::vector<std::uint64_t> CharacterHistogram(const PolySystem& system,
                                              const CountOptions& options);
std::uint64_t PatternCount(std::span<const std::uint64_t> histogram,
                           const Pattern& pattern);
// Points where at least one f_i vanishes.
std::uint64_t VanishingCount(std::span<const std::uint64_t> histogram,
                             std::size_t m);

std::uint64_t CountPatternAffine(const PolySystem& system,
                                 const Pattern& pattern,
                                 const CountOptions& options = {});
std::uint64_t CountPatternProjective(const PolySystem& system,
                                     const Pattern& pattern,
                                     const CountOptions& options = {});
std::uint64_t CountPattern(const PolySystem& system, const Pattern& pattern,
                           const CountOptions& options = {});

class VarietyModel {
 public:
  // nu defaults to Field::Nonsquare(); an override must be a non-square.
  VarietyModel(PolySystem system, Pattern pattern,
               std::optional<Element> nu = std::nullopt);

  const PolySystem& system() const { return system_; }
  const Pattern& pattern() const { return pattern_; }
  Element nu() const { return nu_; }
  // g_i in nvars + m variables; s_i is variable nvars + i.
  const std::vector<Poly>& g() const { return g_; }

 private:
  PolySystem system_;
  Pattern pattern_;
  Element nu_;
  std::vector<Poly> g_;
};

// #X(F_q) by enumerating A^{n+m} or P^{n+m}.
std::uint64_t CountVarietyDirect(const VarietyModel& model,
                                 const CountOptions& options = {});
// sum_x prod_{i in S} (1 + chi(f_i(x))) prod_{i not in S} (1 - chi(f_i(x))).
std::uint64_t CountVarietyFiber(const VarietyModel& model,
                                const CountOptions& options = {});
// #(X minus the hyperplanes s_i = 0) / 2^m, by enumeration. An inexact
// division throws std::logic_error.
std::uint64_t PatternFromVariety(const VarietyModel& model,
                                 const CountOptions& options = {});

// #P^i(F_q); Pi(-1, q) = 0. Throws Error(kInvalidArgument) on overflow.
std::uint64_t Pi(int i, std::uint64_t q);

Rational MainTermAffine(int n, int m, std::uint64_t q);
// (1/2^m) sum_{0 <= r <= min(m, l)} (-1)^r C(m, r) pi_{n-r}(q).
Rational MainTermProjective(int n, int m, int l, std::uint64_t q);
// (q^n - q^{n-1}) / 4.
Rational MainTermPairDifference(int n, std::uint64_t q);

struct BoundSpec {
  // Constant multiplying q^{n-1}; unset means the heuristic d^2.
  std::optional<double> c_user;

  double Resolve(int d) const;
};

struct CountSample {
  std::uint64_t q = 0;
  std::uint64_t count = 0;
};

struct SeriesSpec {
  int n = 0;
  int m = 0;
  std::string pattern;
  std::vector<int> bound_degrees;  // d_i = max(deg f_i, 2)
  std::function<Rational(std::uint64_t)> main_term;
  std::optional<double> gamma;
  BoundSpec bound;
};

struct CountReport {
  std::uint64_t q = 0;
  int n = 0;
  int m = 0;
  std::string pattern;
  std::uint64_t count = 0;
  Rational main_term;
  double ratio_halfpow = 0;
  std::optional<double> ratio_gamma;
  std::vector<int> bound_degrees;
  std::int64_t d = 0;
  // |N - q^n/2^m| against (d-1)(d-2)/2^m q^{n-1/2} + C q^{n-1}.
  double bound_deviation = 0;
  double bound_rhs = 0;
  bool bound_satisfied = false;

  Rational abs_error() const;
};

enum class FitStatus { kFitted, kExact, kInsufficient };

struct ErrorSeries {
  std::vector<CountReport> rows;
  FitStatus fit_status = FitStatus::kInsufficient;
  double fitted_exponent = 0;
  bool bound_satisfied = false;
  // Smallest C for which every row meets the explicit bound.
  double min_passing_c = 0;

  std::string FitText() const;
};

// Least-squares slope of log|error| over log q, using the two largest q with
// nonzero error. Throws Error(kInvalidArgument) with fewer than two distinct q.
ErrorSeries ErrorReport(std::span<const CountSample> samples,
                        const SeriesSpec& spec);

// One row of a series, without fitting.
CountReport MakeCountReport(const CountSample& sample, const SeriesSpec& spec);

double FitSlope(std::span<const double> log_q, std::span<const double> log_err);

std::string CsvHeader();
void AppendCsvRows(const ErrorSeries& series, std::string& out);
// `fit` fills the fitted_exponent column.
void AppendCsvRow(const CountReport& row, std::string_view fit,
                  std::string& out);
// Exact decimal for a rational whose denominator is a power of two.
std::string DyadicToString(const Rational& r);

}  // namespace sqpat

#endif  // SQPAT_COUNTING_H_
