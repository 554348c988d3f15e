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

#include "sqpat/counting.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "sqpat/enumerate.h"
#include "sqpat/error.h"

namespace sqpat {

PolySystem::PolySystem(FieldPtr field, Ambient ambient, std::vector<Poly> polys,
                       std::vector<std::string> names)
    : field_(std::move(field)),
      ambient_(ambient),
      polys_(std::move(polys)),
      names_(std::move(names)) {
  if (polys_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "a system needs m >= 1");
  }
  if (names_.empty()) {
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      names_.push_back("f" + std::to_string(i + 1));
    }
  }
  if (names_.size() != polys_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "one name per polynomial");
  }
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    const Poly& f = polys_[i];
    if (!f.field().SameAs(*field_)) {
      throw Error(ErrorCode::kFieldMismatch, names_[i] + " has another field");
    }
    if (f.nvars() != ambient_.nvars()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  names_[i] + " has the wrong number of variables");
    }
    if (f.is_zero()) {
      throw Error(ErrorCode::kZeroPolynomial, names_[i] + " is zero");
    }
    if (ambient_.projective() && !IsHomogeneous(f, 2)) {
      throw Error(ErrorCode::kNotHomogeneous,
                  names_[i] + " is not a quadratic form");
    }
  }
}

std::vector<int> PolySystem::BoundDegrees() const {
  std::vector<int> out;
  for (const auto& f : polys_) out.push_back(std::max(f.degree(), 2));
  return out;
}

PolySystem PolySystem::BaseChange(const FieldPtr& to) const {
  if (to->SameAs(*field_)) return *this;
  const Embedding emb(field_, to);
  std::vector<Poly> polys;
  for (const auto& f : polys_) polys.push_back(f.BaseChange(emb));
  return PolySystem(to, ambient_, std::move(polys), names_);
}

PolySystem PolySystem::Subsystem(std::span<const std::size_t> indices) const {
  std::vector<Poly> polys;
  std::vector<std::string> names;
  for (auto i : indices) {
    polys.push_back(polys_.at(i));
    names.push_back(names_.at(i));
  }
  return PolySystem(field_, ambient_, std::move(polys), std::move(names));
}

Pattern Pattern::Parse(std::string_view text, std::size_t m) {
  std::vector<bool> squares;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '+') {
      squares.push_back(true);
    } else if (c == '-') {
      squares.push_back(false);
    } else if (text.substr(i, 3) == "\xE2\x88\x92") {  // U+2212
      squares.push_back(false);
      i += 2;
    } else {
      throw Error(ErrorCode::kUsage, "pattern '" + std::string(text) +
                                         "' may only contain '+' and '-'");
    }
  }
  if (squares.size() != m) {
    throw Error(ErrorCode::kUsage, "pattern '" + std::string(text) +
                                       "' must have length " +
                                       std::to_string(m));
  }
  return Pattern(std::move(squares));
}

std::vector<Pattern> Pattern::All(std::size_t m) {
  std::vector<Pattern> out;
  // "++..+" first, then binary counting with '-' as the set bit.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<bool> sq(m);
    for (std::size_t i = 0; i < m; ++i) sq[i] = !((mask >> i) & 1);
    out.emplace_back(std::move(sq));
  }
  return out;
}

std::string Pattern::ToString() const {
  std::string s;
  for (bool b : squares_) s += b ? '+' : '-';
  return s;
}

std::uint64_t AmbientSize(const Ambient& ambient, std::uint64_t q,
                          std::uint64_t ceiling) {
  if (!ambient.projective()) {
    return CheckedPower(q, static_cast<unsigned>(ambient.n), ceiling);
  }
  const std::uint64_t count = Pi(static_cast<int>(ambient.n), q);
  if (count > ceiling) {
    throw Error(ErrorCode::kCeilingExceeded,
                "P^" + std::to_string(ambient.n) + "(F_" + std::to_string(q) +
                    ") has " + std::to_string(count) +
                    " points, above the ceiling " + std::to_string(ceiling));
  }
  return count;
}

namespace {

// Calls fn(point) for the points with linear index in [lo, hi).
template <class Fn>
void VisitRange(const Ambient& ambient, std::uint32_t q, std::uint64_t lo,
                std::uint64_t hi, Fn&& fn) {
  if (ambient.projective()) {
    ProjectiveCursor cur(q, ambient.n, lo);
    for (std::uint64_t i = lo; i < hi; ++i, cur.Next()) fn(cur.point());
  } else {
    AffineCursor cur(q, ambient.n, lo);
    for (std::uint64_t i = lo; i < hi; ++i, cur.Next()) fn(cur.point());
  }
}

std::vector<PolyEvaluator> Evaluators(const std::vector<Poly>& polys) {
  std::vector<PolyEvaluator> out;
  out.reserve(polys.size());
  for (const auto& f : polys) out.emplace_back(f);
  return out;
}

std::size_t Pow3(std::size_t m) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < m; ++i) r *= 3;
  return r;
}

std::size_t PatternBucket(const Pattern& pattern) {
  std::size_t idx = 0, w = 1;
  for (std::size_t i = 0; i < pattern.m(); ++i, w *= 3) {
    idx += (pattern.square(i) ? 2 : 0) * w;
  }
  return idx;
}

Ambient VarietyAmbient(const PolySystem& s) {
  return Ambient{s.ambient().kind, s.ambient().n + s.m()};
}

}  // namespace

std::vector<std::uint64_t> CharacterHistogram(const PolySystem& system,
                                              const CountOptions& options) {
  const Field& f = *system.field();
  const std::uint64_t total =
      AmbientSize(system.ambient(), f.q(), options.ceiling);
  const std::size_t m = system.m();
  if (m > 20) throw Error(ErrorCode::kInvalidArgument, "too many polynomials");
  const auto prototype = Evaluators(system.polys());
  return ParallelReduce(
      total, options.workers, Pow3(m),
      [&](std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> acc) {
        auto evals = prototype;
        VisitRange(system.ambient(), f.q(), lo, hi,
                   [&](std::span<const Element> x) {
                     std::size_t idx = 0, w = 1;
                     for (std::size_t i = 0; i < m; ++i, w *= 3) {
                       idx += static_cast<std::size_t>(
                                  f.Character(evals[i](x)) + 1) *
                              w;
                     }
                     ++acc[idx];
                   });
      });
}

std::uint64_t PatternCount(std::span<const std::uint64_t> histogram,
                           const Pattern& pattern) {
  if (histogram.size() != Pow3(pattern.m())) {
    throw Error(ErrorCode::kInvalidArgument, "histogram/pattern size mismatch");
  }
  return histogram[PatternBucket(pattern)];
}

std::uint64_t VanishingCount(std::span<const std::uint64_t> histogram,
                             std::size_t m) {
  std::uint64_t total = 0;
  for (std::size_t idx = 0; idx < histogram.size(); ++idx) {
    std::size_t r = idx;
    bool zero = false;
    for (std::size_t i = 0; i < m; ++i, r /= 3) zero |= (r % 3 == 1);
    if (zero) total += histogram[idx];
  }
  return total;
}

std::uint64_t CountPatternAffine(const PolySystem& system,
                                 const Pattern& pattern,
                                 const CountOptions& options) {
  if (system.ambient().projective()) {
    throw Error(ErrorCode::kInvalidArgument, "system is projective");
  }
  return CountPattern(system, pattern, options);
}

std::uint64_t CountPatternProjective(const PolySystem& system,
                                     const Pattern& pattern,
                                     const CountOptions& options) {
  if (!system.ambient().projective()) {
    throw Error(ErrorCode::kInvalidArgument, "system is affine");
  }
  return CountPattern(system, pattern, options);
}

std::uint64_t CountPattern(const PolySystem& system, const Pattern& pattern,
                           const CountOptions& options) {
  if (pattern.m() != system.m()) {
    throw Error(ErrorCode::kUsage, "pattern length differs from m");
  }
  const Field& f = *system.field();
  const std::uint64_t total =
      AmbientSize(system.ambient(), f.q(), options.ceiling);
  const auto prototype = Evaluators(system.polys());
  const std::size_t m = system.m();
  return ParallelReduce(
      total, options.workers, 1,
      [&](std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> acc) {
        auto evals = prototype;
        VisitRange(system.ambient(), f.q(), lo, hi,
                   [&](std::span<const Element> x) {
                     for (std::size_t i = 0; i < m; ++i) {
                       const int want = pattern.square(i) ? 1 : -1;
                       if (f.Character(evals[i](x)) != want) return;
                     }
                     ++acc[0];
                   });
      })[0];
}

VarietyModel::VarietyModel(PolySystem system, Pattern pattern,
                           std::optional<Element> nu)
    : system_(std::move(system)),
      pattern_(std::move(pattern)),
      nu_(nu.value_or(system_.field()->Nonsquare())) {
  const FieldPtr& fp = system_.field();
  const Field& f = *fp;
  if (pattern_.m() != system_.m()) {
    throw Error(ErrorCode::kUsage, "pattern length differs from m");
  }
  if (!f.IsValid(nu_) || f.Character(nu_) != -1) {
    throw Error(ErrorCode::kInvalidArgument,
                "nu = " + f.ToString(nu_) + " is not a non-square in F_" +
                    std::to_string(f.q()));
  }
  const std::size_t base = system_.ambient().nvars();
  const std::size_t total = base + system_.m();
  for (std::size_t i = 0; i < system_.m(); ++i) {
    const Poly s = Poly::Variable(fp, total, base + i);
    const Element c = pattern_.square(i) ? f.one() : nu_;
    g_.push_back(system_.polys()[i].WithVariables(total) - (s * s).Scale(c));
  }
}

namespace {

// Bucket 0: all points of X. Bucket 1: points with every s_i nonzero.
std::vector<std::uint64_t> EnumerateVariety(const VarietyModel& model,
                                            const CountOptions& options) {
  const PolySystem& sys = model.system();
  const Field& f = *sys.field();
  const Ambient amb = VarietyAmbient(sys);
  const std::uint64_t total = AmbientSize(amb, f.q(), options.ceiling);
  const auto prototype = Evaluators(model.g());
  const std::size_t base = sys.ambient().nvars();
  const std::size_t m = sys.m();
  return ParallelReduce(
      total, options.workers, 2,
      [&](std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> acc) {
        auto evals = prototype;
        VisitRange(amb, f.q(), lo, hi, [&](std::span<const Element> x) {
          for (auto& g : evals) {
            if (g(x).code != 0) return;
          }
          ++acc[0];
          for (std::size_t i = 0; i < m; ++i) {
            if (x[base + i].code == 0) return;
          }
          ++acc[1];
        });
      });
}

}  // namespace

std::uint64_t CountVarietyDirect(const VarietyModel& model,
                                 const CountOptions& options) {
  return EnumerateVariety(model, options)[0];
}

std::uint64_t CountVarietyFiber(const VarietyModel& model,
                                const CountOptions& options) {
  const PolySystem& sys = model.system();
  const Field& f = *sys.field();
  const std::uint64_t total = AmbientSize(sys.ambient(), f.q(), options.ceiling);
  const auto prototype = Evaluators(sys.polys());
  const std::size_t m = sys.m();
  return ParallelReduce(
      total, options.workers, 1,
      [&](std::uint64_t lo, std::uint64_t hi, std::span<std::uint64_t> acc) {
        auto evals = prototype;
        VisitRange(sys.ambient(), f.q(), lo, hi,
                   [&](std::span<const Element> x) {
                     std::uint64_t fiber = 1;
                     for (std::size_t i = 0; i < m && fiber; ++i) {
                       const int chi = f.Character(evals[i](x));
                       fiber *= static_cast<std::uint64_t>(
                           model.pattern().square(i) ? 1 + chi : 1 - chi);
                     }
                     acc[0] += fiber;
                   });
      })[0];
}

std::uint64_t PatternFromVariety(const VarietyModel& model,
                                 const CountOptions& options) {
  const std::uint64_t covered = EnumerateVariety(model, options)[1];
  const std::uint64_t sheets = std::uint64_t{1} << model.system().m();
  if (covered % sheets != 0) {
    throw std::logic_error("points of X off the s_i = 0 hyperplanes (" +
                           std::to_string(covered) +
                           ") are not a multiple of 2^m");
  }
  return covered / sheets;
}

std::uint64_t Pi(int i, std::uint64_t q) {
  if (i < -1) throw Error(ErrorCode::kInvalidArgument, "pi needs i >= -1");
  std::uint64_t sum = 0, pw = 1;
  for (int j = 0; j <= i; ++j) {
    if (__builtin_add_overflow(sum, pw, &sum) ||
        (j < i && __builtin_mul_overflow(pw, q, &pw))) {
      throw Error(ErrorCode::kInvalidArgument, "pi_i(q) overflows");
    }
  }
  return sum;
}

namespace {

std::int64_t IntPow(std::uint64_t q, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(r, static_cast<std::int64_t>(q), &r)) {
      throw Error(ErrorCode::kInvalidArgument, "q^n overflows");
    }
  }
  return r;
}

std::int64_t Binomial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

Rational MainTermAffine(int n, int m, std::uint64_t q) {
  return Rational(IntPow(q, n), std::int64_t{1} << m);
}

Rational MainTermProjective(int n, int m, int l, std::uint64_t q) {
  if (l < 0 || n < 0) {
    throw Error(ErrorCode::kInvalidArgument, "need n >= 0 and l >= 0");
  }
  std::int64_t sum = 0;
  for (int r = 0; r <= std::min(m, l); ++r) {
    const std::int64_t term =
        Binomial(m, r) * static_cast<std::int64_t>(Pi(n - r, q));
    sum += (r % 2 == 0) ? term : -term;
  }
  return Rational(sum, std::int64_t{1} << m);
}

Rational MainTermPairDifference(int n, std::uint64_t q) {
  return Rational(IntPow(q, n) - IntPow(q, n - 1), 4);
}

double BoundSpec::Resolve(int d) const {
  return c_user.value_or(static_cast<double>(d) * d);
}

Rational CountReport::abs_error() const {
  return abs(Rational(static_cast<std::int64_t>(count)) - main_term);
}

std::string ErrorSeries::FitText() const {
  switch (fit_status) {
    case FitStatus::kExact: return "exact";
    case FitStatus::kInsufficient: return "insufficient";
    case FitStatus::kFitted: break;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", fitted_exponent);
  return buf;
}

double FitSlope(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

struct BoundTerms {
  std::int64_t d = 1;
  double c_user = 0;
  double coef = 0;
};

BoundTerms ResolveBound(const SeriesSpec& spec) {
  BoundTerms b;
  for (int di : spec.bound_degrees) b.d *= di;
  b.c_user = spec.bound.Resolve(static_cast<int>(b.d));
  if (b.c_user < 0) throw Error(ErrorCode::kInvalidArgument, "C must be >= 0");
  b.coef = static_cast<double>((b.d - 1) * (b.d - 2)) / std::ldexp(1.0, spec.m);
  return b;
}

CountReport BuildReport(const CountSample& s, const SeriesSpec& spec,
                        const BoundTerms& b) {
  CountReport r;
  r.q = s.q;
  r.n = spec.n;
  r.m = spec.m;
  r.pattern = spec.pattern;
  r.count = s.count;
  r.main_term = spec.main_term(s.q);
  r.bound_degrees = spec.bound_degrees;
  r.d = b.d;
  const double qd = static_cast<double>(s.q);
  const double err = boost::rational_cast<double>(r.abs_error());
  r.ratio_halfpow = err / std::pow(qd, spec.n - 0.5);
  if (spec.gamma) r.ratio_gamma = err / std::pow(qd, *spec.gamma);
  const Rational dev = abs(Rational(static_cast<std::int64_t>(s.count)) -
                           MainTermAffine(spec.n, spec.m, s.q));
  r.bound_deviation = boost::rational_cast<double>(dev);
  r.bound_rhs = b.coef * std::pow(qd, spec.n - 0.5) +
                b.c_user * std::pow(qd, spec.n - 1);
  r.bound_satisfied = r.bound_deviation <= r.bound_rhs * (1 + 1e-12);
  return r;
}

}  // namespace

CountReport MakeCountReport(const CountSample& sample, const SeriesSpec& spec) {
  return BuildReport(sample, spec, ResolveBound(spec));
}

ErrorSeries ErrorReport(std::span<const CountSample> samples,
                        const SeriesSpec& spec) {
  std::map<std::uint64_t, int> distinct;
  for (const auto& s : samples) ++distinct[s.q];
  if (distinct.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "an error series needs at least two distinct q");
  }
  ErrorSeries series;
  series.bound_satisfied = true;
  const BoundTerms b = ResolveBound(spec);
  for (const auto& s : samples) {
    CountReport r = BuildReport(s, spec, b);
    const double qd = static_cast<double>(s.q);
    const double lead = b.coef * std::pow(qd, spec.n - 0.5);
    series.bound_satisfied &= r.bound_satisfied;
    series.min_passing_c =
        std::max(series.min_passing_c,
                 (r.bound_deviation - lead) / std::pow(qd, spec.n - 1));
    series.rows.push_back(std::move(r));
  }

  // Two largest q with a nonzero error.
  std::map<std::uint64_t, double> errs;
  bool any_nonzero = false;
  for (const auto& r : series.rows) {
    const double e = boost::rational_cast<double>(r.abs_error());
    if (e > 0) {
      errs[r.q] = std::max(errs[r.q], e);
      any_nonzero = true;
    }
  }
  if (!any_nonzero) {
    series.fit_status = FitStatus::kExact;
  } else if (errs.size() < 2) {
    series.fit_status = FitStatus::kInsufficient;
  } else {
    auto it = errs.rbegin();
    const auto [q1, e1] = *it++;
    const auto [q0, e0] = *it;
    const double lx[2] = {std::log(static_cast<double>(q0)),
                          std::log(static_cast<double>(q1))};
    const double ly[2] = {std::log(e0), std::log(e1)};
    series.fit_status = FitStatus::kFitted;
    series.fitted_exponent = FitSlope(lx, ly);
  }
  return series;
}

std::string DyadicToString(const Rational& r) {
  std::int64_t num = r.numerator();
  std::int64_t den = r.denominator();
  int shift = 0;
  while (den > 1) {
    if (den % 2 != 0) throw std::logic_error("denominator is not a power of 2");
    den /= 2;
    ++shift;
  }
  const bool neg = num < 0;
  unsigned __int128 mag =
      static_cast<unsigned __int128>(neg ? -static_cast<__int128>(num) : num);
  for (int i = 0; i < shift; ++i) mag *= 5;
  unsigned __int128 scale = 1;
  for (int i = 0; i < shift; ++i) scale *= 10;
  auto to_string = [](unsigned __int128 v) {
    std::string s;
    do {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    } while (v);
    return s;
  };
  std::string out = neg ? "-" : "";
  out += to_string(mag / scale);
  if (shift > 0) {
    std::string frac = to_string(mag % scale);
    frac.insert(frac.begin(), static_cast<std::size_t>(shift) - frac.size(),
                '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
  }
  return out;
}

std::string CsvHeader() {
  return "q,n,m,pattern,N_S,main_term_num,main_term_den,abs_error,"
         "ratio_halfpow,ratio_gamma,fitted_exponent,bound_satisfied\n";
}

void AppendCsvRows(const ErrorSeries& series, std::string& out) {
  const std::string fit = series.FitText();
  for (const auto& r : series.rows) AppendCsvRow(r, fit, out);
}

void AppendCsvRow(const CountReport& r, std::string_view fit,
                  std::string& out) {
  char buf[64];
  {
    out += std::to_string(r.q) + "," + std::to_string(r.n) + "," +
           std::to_string(r.m) + "," + r.pattern + "," +
           std::to_string(r.count) + "," +
           std::to_string(r.main_term.numerator()) + "," +
           std::to_string(r.main_term.denominator()) + "," +
           DyadicToString(r.abs_error()) + ",";
    std::snprintf(buf, sizeof buf, "%.12g", r.ratio_halfpow);
    out += buf;
    out += ",";
    if (r.ratio_gamma) {
      std::snprintf(buf, sizeof buf, "%.12g", *r.ratio_gamma);
      out += buf;
    }
    out += ",";
    out += fit;
    out += std::string(",") + (r.bound_satisfied ? "1" : "0") + "\n";
  }
}

}  // namespace sqpat
