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

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "sqpat/enumerate.h"
#include "sqpat/geometry.h"

namespace sqpat {

namespace {

struct Resolved {
  unsigned workers = 1;
  std::uint64_t ceiling = kDefaultCeiling;
  std::uint64_t seed = 0;
  std::optional<double> c_user;
  std::optional<std::string> pattern;

  CountOptions count() const { return {workers, ceiling}; }
};

Resolved Resolve(const SystemFile& f, const HarnessOptions& o) {
  Resolved r;
  r.workers = o.workers.value_or(f.options.workers.value_or(1));
  r.ceiling = o.ceiling.value_or(f.options.ceiling.value_or(kDefaultCeiling));
  r.seed = o.seed.value_or(f.options.seed.value_or(0));
  r.c_user = o.constant ? o.constant : f.options.c_user;
  r.pattern = o.pattern;
  if (r.workers < 1) throw Error(ErrorCode::kUsage, "workers must be >= 1");
  return r;
}

// The system and its per-field options at one level of a tower or sweep.
struct Level {
  FieldPtr field;
  PolySystem system;
  std::optional<Element> nu;
  std::optional<Element> class_c;
  std::optional<Element> class_d;
};

std::optional<Element> EmbedOpt(const std::optional<Element>& e,
                                const Embedding& emb) {
  if (!e) return std::nullopt;
  return emb(*e);
}

Level TowerLevel(const SystemFile& f, unsigned ext, std::uint64_t ceiling) {
  const FieldPtr& base = f.system.field();
  FieldPtr field = Field::Make(base->p(), base->k() * ext, ceiling);
  const Embedding emb(base, field);
  return Level{field, f.system.BaseChange(field), EmbedOpt(f.options.nu, emb),
               EmbedOpt(f.options.class_c, emb),
               EmbedOpt(f.options.class_d, emb)};
}

Level SweepLevel(const LoadedSystem& s, std::uint64_t q,
                 std::uint64_t ceiling) {
  FieldPtr field = Field::MakeOfSize(q, ceiling);
  SystemFile f = ParseSystemOver(s.text, field);
  return Level{field, f.system, f.options.nu, f.options.class_c,
               f.options.class_d};
}

std::vector<unsigned> TowerRange(const PolySystem& system,
                                 const HarnessOptions& o,
                                 std::uint64_t ceiling, bool need_two) {
  if (o.tower) {
    auto [a, b] = *o.tower;
    if (a < 1 || b < a) throw Error(ErrorCode::kUsage, "bad tower range");
    std::vector<unsigned> out;
    for (unsigned e = a; e <= b; ++e) out.push_back(e);
    if (need_two && out.size() < 2) {
      throw Error(ErrorCode::kUsage, "a tower needs at least two levels");
    }
    return out;
  }
  if (o.ext && !need_two) return {*o.ext};
  const unsigned top = DefaultTopLevel(system, ceiling);
  if (need_two && top < 2) {
    throw Error(ErrorCode::kCeilingExceeded,
                "fewer than two tower levels fit under the ceiling");
  }
  std::vector<unsigned> out;
  for (unsigned e = 1; e <= top; ++e) out.push_back(e);
  return out;
}

std::vector<Pattern> PatternsFor(const PolySystem& s,
                                 const std::optional<std::string>& pattern) {
  if (pattern) return {Pattern::Parse(*pattern, s.m())};
  return Pattern::All(s.m());
}

std::string Fmt(double v, const char* f = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string RationalText(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

unsigned ProfileLevels(const PolySystem& s, std::uint64_t ceiling) {
  return std::min(3u, DefaultTopLevel(s, ceiling));
}

std::string WorseOf(const std::string& note, const std::string& more) {
  return note.empty() ? more : note + "; " + more;
}

struct SeriesInput {
  std::string label;
  std::vector<CountSample> samples;
  SeriesSpec spec;
  double claimed = 0;
};

// Runs the exponent comparison for each series and assembles the report.
Report Assemble(const std::string& title, std::vector<SeriesInput> inputs,
                bool check_bound, std::optional<double> c_user,
                const std::string& hypothesis_note, bool hypothesis_ok,
                const std::string& preamble) {
  Report rep;
  rep.csv = CsvHeader();
  std::ostringstream os;
  os << title << "\n" << preamble;
  bool all_pass = true;
  for (auto& in : inputs) {
    in.spec.bound.c_user = c_user;
    const ErrorSeries series = ErrorReport(in.samples, in.spec);
    AppendCsvRows(series, rep.csv);
    const bool exp_ok = ExponentPasses(series, in.claimed);
    const bool bound_ok = !check_bound || series.bound_satisfied;
    all_pass = all_pass && exp_ok && bound_ok;
    os << "  " << in.label << ": fitted exponent " << series.FitText()
       << " vs claimed " << Fmt(in.claimed) << " + " << kExponentSlack
       << " -> " << (exp_ok ? "ok" : "FAIL") << "; minimal passing C "
       << Fmt(std::max(0.0, series.min_passing_c));
    if (check_bound) {
      os << "; explicit bound " << (series.bound_satisfied ? "ok" : "FAIL");
    }
    os << "\n";
    for (const auto& r : series.rows) {
      os << "    q=" << r.q << " N=" << r.count << " main="
         << RationalText(r.main_term)
         << " |err|=" << DyadicToString(r.abs_error())
         << " err/q^(n-1/2)=" << Fmt(r.ratio_halfpow);
      if (r.ratio_gamma) os << " err/q^gamma=" << Fmt(*r.ratio_gamma);
      os << "\n";
    }
  }
  if (!hypothesis_ok) {
    os << "WARNING: hypothesis unverified: " << hypothesis_note << "\n";
    rep.verdict = Verdict::kUnverified;
  } else {
    if (!hypothesis_note.empty()) os << "note: " << hypothesis_note << "\n";
    rep.verdict = all_pass ? Verdict::kPass : Verdict::kFail;
  }
  os << "verdict: " << VerdictName(rep.verdict) << "\n";
  rep.summary = os.str();
  return rep;
}

void RequireProjectiveQuadrics(const PolySystem& s, const std::string& what) {
  if (!s.ambient().projective()) {
    throw Error(ErrorCode::kUsage, what + " needs a projective system");
  }
}

// Core of verify and sweep once the per-level systems are known.
Report VerifyLevels(const std::string& theorem,
                    const std::vector<Level>& levels, const Resolved& res) {
  const PolySystem& base = levels.front().system;
  const int n = static_cast<int>(base.ambient().n);
  const int m = static_cast<int>(base.m());
  const CountOptions copt = res.count();
  std::vector<SeriesInput> inputs;
  std::string note;
  bool hyp_ok = true;
  std::ostringstream pre;
  const bool check_bound = res.c_user.has_value();

  auto profile_of = [&](const PolySystem& s) {
    const SingularProfile prof =
        ComputeSingularProfile(s, ProfileLevels(s, res.ceiling), copt);
    pre << prof.Describe();
    if (!prof.all_exact()) {
      note = WorseOf(note, "some T-locus dimensions are estimated");
    }
    return prof;
  };

  if (theorem == "thm1") {
    if (base.ambient().projective()) {
      throw Error(ErrorCode::kUsage, "thm1 needs an affine system");
    }
    WitnessOptions wopt;
    wopt.seed = res.seed;
    wopt.ceiling = res.ceiling;
    const WitnessResult w = CheckConditionIii(base, wopt);
    pre << "independence certificates:\n" << w.Describe(base);
    if (!w.complete()) {
      hyp_ok = false;
      note = "no independence certificate for some f_i";
    }
    for (const auto& pat : PatternsFor(base, res.pattern)) {
      SeriesInput in;
      in.label = "pattern " + pat.ToString();
      for (const auto& lv : levels) {
        in.samples.push_back(
            {lv.field->q(), CountPattern(lv.system, pat, copt)});
      }
      in.spec = SeriesSpec{n, m, pat.ToString(), base.BoundDegrees(),
                           [n, m](std::uint64_t q) {
                             return MainTermAffine(n, m, q);
                           },
                           std::nullopt, {}};
      in.claimed = n - 0.5;
      inputs.push_back(std::move(in));
    }
  } else if (theorem == "thm2" || theorem == "thm3") {
    RequireProjectiveQuadrics(base, theorem);
    if (theorem == "thm2" && m != 2) {
      throw Error(ErrorCode::kUsage, "thm2 needs exactly two quadratic forms");
    }
    if (theorem == "thm2") {
      if (!CheckConditionIQuadraticPair(base.polys()[0], base.polys()[1])) {
        hyp_ok = false;
        note = "the pair fails the rank/proportionality criterion";
      }
    } else {
      WitnessOptions wopt;
      wopt.seed = res.seed;
      wopt.ceiling = res.ceiling;
      const WitnessResult w = CheckConditionIii(base, wopt);
      pre << "independence certificates:\n" << w.Describe(base);
      if (!w.complete()) {
        hyp_ok = false;
        note = "no independence certificate for some f_i";
      }
    }
    const SingularProfile prof = profile_of(base);
    if (theorem == "thm3" && !prof.containment_verified()) {
      hyp_ok = false;
      note = WorseOf(note, "a non-containment check found no witness point");
    }
    const int l = prof.l;
    const double claimed = theorem == "thm2" ? (n + prof.sigma + 1) / 2.0
                                             : prof.gamma;
    for (const auto& pat : PatternsFor(base, res.pattern)) {
      SeriesInput in;
      in.label = "pattern " + pat.ToString();
      for (const auto& lv : levels) {
        in.samples.push_back(
            {lv.field->q(), CountPattern(lv.system, pat, copt)});
      }
      std::function<Rational(std::uint64_t)> main;
      if (theorem == "thm2") {
        main = [n](std::uint64_t q) { return MainTermPairDifference(n, q); };
      } else {
        main = [n, m, l](std::uint64_t q) {
          return MainTermProjective(n, m, l, q);
        };
      }
      in.spec = SeriesSpec{n, m, pat.ToString(), base.BoundDegrees(), main,
                           claimed, {}};
      in.claimed = claimed;
      inputs.push_back(std::move(in));
    }
  } else if (theorem == "cor1" || theorem == "cor2") {
    RequireProjectiveQuadrics(base, theorem);
    if (m < 2) throw Error(ErrorCode::kUsage, theorem + " needs two quadrics");
    if (m > 2) pre << "using the first two quadrics as C and D\n";
    const std::size_t pair[2] = {0, 1};
    const PolySystem pair_sys = base.Subsystem(pair);
    double claimed = n - 0.5;
    std::function<Rational(std::uint64_t)> main = [n](std::uint64_t q) {
      return MainTermAffine(n, 2, q);
    };
    if (theorem == "cor2") {
      const SingularProfile prof = profile_of(pair_sys);
      claimed = (n + prof.sigma + 1) / 2.0;
      main = [n](std::uint64_t q) { return MainTermPairDifference(n, q); };
    }
    SeriesInput in;
    in.label = "external to " + base.names()[0] + ", internal to " +
               base.names()[1];
    for (const auto& lv : levels) {
      PairClassOptions po;
      po.constant_c = lv.class_c;
      po.constant_d = lv.class_d;
      po.count = copt;
      if (n == 2 && !(po.constant_c && po.constant_d)) {
        po.constant_c.reset();
        po.constant_d.reset();
      }
      in.samples.push_back(
          {lv.field->q(), CountExternalInternal(lv.system.polys()[0],
                                                lv.system.polys()[1], po)});
    }
    in.spec = SeriesSpec{n, 2, "EI", {2, 2}, main,
                         theorem == "cor2" ? std::optional<double>(claimed)
                                           : std::nullopt,
                         {}};
    in.claimed = claimed;
    inputs.push_back(std::move(in));
  } else {
    throw Error(ErrorCode::kUsage, "unknown theorem '" + theorem +
                                       "' (expected thm1 thm2 thm3 cor1 cor2)");
  }
  return Assemble("verify " + theorem, std::move(inputs), check_bound,
                  res.c_user, note, hyp_ok, pre.str());
}

}  // namespace

LoadedSystem LoadFromText(std::string text) {
  SystemFile f = ParseSystem(text);
  return LoadedSystem{std::move(text), std::move(f)};
}

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kUnverified: return "unverified";
  }
  return "?";
}

bool ExponentPasses(const ErrorSeries& series, double claimed) {
  switch (series.fit_status) {
    case FitStatus::kExact: return true;
    case FitStatus::kInsufficient: return false;
    case FitStatus::kFitted: break;
  }
  return series.fitted_exponent <= claimed + kExponentSlack;
}

unsigned DefaultTopLevel(const PolySystem& system, std::uint64_t ceiling) {
  const Field& f = *system.field();
  unsigned top = 0;
  for (unsigned e = 1; e <= 12; ++e) {
    try {
      const std::uint64_t q = CheckedPower(f.q(), e, ceiling);
      AmbientSize(system.ambient(), q, ceiling);
    } catch (const Error& err) {
      // Nothing fits at all: surface the ceiling error itself.
      if (err.code() == ErrorCode::kCeilingExceeded && top > 0) break;
      throw;
    }
    top = e;
  }
  return top;
}

Report RunCount(const LoadedSystem& sys, const HarnessOptions& opts) {
  const Resolved res = Resolve(sys.file, opts);
  const PolySystem& base = sys.file.system;
  const std::vector<unsigned> exts =
      opts.tower ? TowerRange(base, opts, res.ceiling, /*need_two=*/false)
                 : std::vector<unsigned>{opts.ext.value_or(1)};
  const int n = static_cast<int>(base.ambient().n);
  const int m = static_cast<int>(base.m());
  std::ostringstream os;
  std::function<Rational(std::uint64_t)> main;
  std::optional<double> gamma;
  if (base.ambient().projective()) {
    const SingularProfile prof = ComputeSingularProfile(
        base, ProfileLevels(base, res.ceiling), res.count());
    const int l = prof.l;
    gamma = prof.gamma;
    os << "sigma=" << prof.sigma << " l=" << l << " gamma=" << Fmt(prof.gamma)
       << (prof.all_exact() ? "" : " (estimated)") << "\n";
    main = [n, m, l](std::uint64_t q) { return MainTermProjective(n, m, l, q); };
  } else {
    main = [n, m](std::uint64_t q) { return MainTermAffine(n, m, q); };
  }
  std::vector<Level> levels;
  for (unsigned e : exts) levels.push_back(TowerLevel(sys.file, e, res.ceiling));
  Report rep;
  rep.csv = CsvHeader();
  for (const auto& pat : PatternsFor(base, opts.pattern)) {
    const SeriesSpec spec{n, m, pat.ToString(), base.BoundDegrees(), main,
                          gamma, BoundSpec{res.c_user}};
    std::vector<CountSample> samples;
    for (const auto& lv : levels) {
      samples.push_back({lv.field->q(), CountPattern(lv.system, pat,
                                                     res.count())});
    }
    std::vector<CountReport> rows;
    std::string fit;
    if (samples.size() >= 2) {
      const ErrorSeries s = ErrorReport(samples, spec);
      rows = s.rows;
      fit = s.FitText();
    } else {
      rows.push_back(MakeCountReport(samples[0], spec));
    }
    for (const auto& r : rows) {
      AppendCsvRow(r, fit, rep.csv);
      os << "pattern " << r.pattern << " over F_" << r.q << ": N_S=" << r.count
         << " main term=" << RationalText(r.main_term)
         << " |error|=" << DyadicToString(r.abs_error()) << "\n";
    }
  }
  rep.summary = os.str();
  return rep;
}

Report RunVerify(const LoadedSystem& sys, const HarnessOptions& opts) {
  const Resolved res = Resolve(sys.file, opts);
  const std::vector<unsigned> exts =
      TowerRange(sys.file.system, opts, res.ceiling, /*need_two=*/true);
  std::vector<Level> levels;
  for (unsigned e : exts) levels.push_back(TowerLevel(sys.file, e, res.ceiling));
  return VerifyLevels(opts.theorem, levels, res);
}

Report RunSweep(const LoadedSystem& sys, const HarnessOptions& opts) {
  const Resolved res = Resolve(sys.file, opts);
  if (opts.q_list.size() < 2) {
    throw Error(ErrorCode::kUsage, "sweep needs at least two q values");
  }
  std::vector<Level> levels;
  for (auto q : opts.q_list) levels.push_back(SweepLevel(sys, q, res.ceiling));
  std::string theorem = opts.theorem;
  if (theorem.empty()) {
    theorem = sys.file.system.ambient().projective() ? "cor1" : "thm1";
  }
  return VerifyLevels(theorem, levels, res);
}

Report RunSigma(const LoadedSystem& sys, const HarnessOptions& opts) {
  const Resolved res = Resolve(sys.file, opts);
  const PolySystem& base = sys.file.system;
  unsigned levels = ProfileLevels(base, res.ceiling);
  if (opts.tower) levels = opts.tower->second;
  if (opts.ext) levels = *opts.ext;
  const SingularProfile prof = ComputeSingularProfile(base, levels, res.count());
  Report rep;
  rep.csv = prof.Csv();
  rep.summary = prof.Describe();
  return rep;
}

Report RunClassify(const LoadedSystem& sys, const HarnessOptions& opts) {
  const Resolved res = Resolve(sys.file, opts);
  const PolySystem& base = sys.file.system;
  if (!base.ambient().projective()) {
    throw Error(ErrorCode::kUsage, "classify needs a projective system");
  }
  const Level lv = TowerLevel(sys.file, opts.ext.value_or(1), res.ceiling);
  const Field& f = *lv.field;
  const std::size_t n = base.ambient().n;
  Report rep;
  rep.csv = "quadric,point,class\n";
  std::ostringstream os;
  bool ok = true;
  for (std::size_t i = 0; i < lv.system.m(); ++i) {
    const Poly& quad = lv.system.polys()[i];
    const std::string& name = lv.system.names()[i];
    std::optional<Element> constant =
        i == 0 ? lv.class_c : (i == 1 ? lv.class_d : std::nullopt);
    std::optional<ConicClassifier> geo;
    if (!constant) {
      if (n != 2) {
        throw Error(ErrorCode::kUsage,
                    "quadrics in P^n with n > 2 need option cC/cD");
      }
      geo.emplace(quad);
      const Calibration cal = CalibrateConstant(quad, res.count());
      os << name << ": geometric mode; character constant "
         << f.ToString(cal.constant) << " agrees on " << cal.agreement_points
         << " off-conic points\n";
    } else {
      os << name << ": character mode with constant " << f.ToString(*constant)
         << "\n";
    }
    const std::uint64_t total =
        AmbientSize(lv.system.ambient(), f.q(), res.ceiling);
    ProjectiveCursor cur(f.q(), n, 0);
    for (std::uint64_t t = 0; t < total; ++t, cur.Next()) {
      const auto x = cur.point();
      PointClass c;
      if (geo) {
        c = geo->Classify(x);
      } else {
        c = ClassifyPointQuadricCharacter(quad, *constant, x);
      }
      std::string pt = "[";
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (j) pt += ":";
        pt += f.ToString(x[j]);
      }
      pt += "]";
      rep.csv += name + ",\"" + pt + "\"," + PointClassName(c) + "\n";
    }
    const ClassTotals totals = ClassifyAll(quad, constant, res.count());
    ok = ok && totals.bad_tangent_counts == 0;
    os << name << " over F_" << f.q() << ": on=" << totals.on
       << " external=" << totals.external << " internal=" << totals.internal
       << "\n";
  }
  rep.summary = os.str();
  rep.verdict = ok ? Verdict::kPass : Verdict::kFail;
  return rep;
}

Report RunWitness(const LoadedSystem& sys, const HarnessOptions& opts) {
  const Resolved res = Resolve(sys.file, opts);
  WitnessOptions wopt;
  wopt.seed = res.seed;
  wopt.ceiling = res.ceiling;
  if (opts.ext) wopt.max_extension = *opts.ext;
  const WitnessResult w = CheckConditionIii(sys.file.system, wopt);
  Report rep;
  rep.csv = w.Csv();
  rep.summary = w.Describe(sys.file.system);
  rep.verdict = w.complete() ? Verdict::kPass : Verdict::kFail;
  return rep;
}

}  // namespace sqpat
