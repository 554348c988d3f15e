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

#include "sqpat/sqpat.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "sqpat/harness.h"

struct sqpat_system {
  sqpat::LoadedSystem loaded;
};

struct sqpat_report {
  sqpat::Report report;
};

namespace {

thread_local std::string g_last_error;

sqpat_status Fail(sqpat_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <typename Fn>
sqpat_status Guard(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return SQPAT_OK;
  } catch (const sqpat::Error& e) {
    switch (e.code()) {
      case sqpat::ErrorCode::kParse: return Fail(SQPAT_ERR_PARSE, e.what());
      case sqpat::ErrorCode::kUsage: return Fail(SQPAT_ERR_USAGE, e.what());
      case sqpat::ErrorCode::kCeilingExceeded:
        return Fail(SQPAT_ERR_CEILING, e.what());
      default: {
        const std::string msg =
            std::string(sqpat::ErrorCodeName(e.code())) + ": " + e.what();
        return Fail(SQPAT_ERR_INVALID, msg.c_str());
      }
    }
  } catch (const std::bad_alloc&) {
    return Fail(SQPAT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(SQPAT_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(SQPAT_ERR_INTERNAL, "unknown failure");
  }
}

sqpat::HarnessOptions Convert(const sqpat_options* o) {
  sqpat::HarnessOptions h;
  if (!o) return h;
  if (o->theorem) h.theorem = o->theorem;
  if (o->pattern) h.pattern = std::string(o->pattern);
  if (o->ext) h.ext = o->ext;
  if (o->tower_lo || o->tower_hi) h.tower = {o->tower_lo, o->tower_hi};
  if (o->q_list) h.q_list.assign(o->q_list, o->q_list + o->q_count);
  if (o->has_seed) h.seed = o->seed;
  if (o->workers) h.workers = o->workers;
  if (o->ceiling) h.ceiling = o->ceiling;
  if (o->has_constant) h.constant = o->constant;
  return h;
}

using Runner = sqpat::Report (*)(const sqpat::LoadedSystem&,
                                 const sqpat::HarnessOptions&);

sqpat_status Run(Runner run, const sqpat_system* system,
                 const sqpat_options* options, sqpat_report** out) {
  if (!system || !out) return Fail(SQPAT_ERR_USAGE, "null argument");
  *out = nullptr;
  return Guard([&] {
    auto rep = std::make_unique<sqpat_report>();
    rep->report = run(system->loaded, Convert(options));
    *out = rep.release();
  });
}

char* Dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

void sqpat_options_init(sqpat_options* options) {
  if (options) std::memset(options, 0, sizeof *options);
}

const char* sqpat_last_error(void) { return g_last_error.c_str(); }

sqpat_status sqpat_system_parse(const char* text, sqpat_system** out) {
  if (!text || !out) return Fail(SQPAT_ERR_USAGE, "null argument");
  *out = nullptr;
  return Guard([&] {
    *out = new sqpat_system{sqpat::LoadFromText(text)};
  });
}

sqpat_status sqpat_system_load(const char* path, sqpat_system** out) {
  if (!path || !out) return Fail(SQPAT_ERR_USAGE, "null argument");
  *out = nullptr;
  return Guard([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw sqpat::Error(sqpat::ErrorCode::kUsage,
                         std::string("cannot open ") + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    *out = new sqpat_system{sqpat::LoadFromText(ss.str())};
  });
}

void sqpat_system_free(sqpat_system* system) { delete system; }

sqpat_status sqpat_system_serialize(const sqpat_system* system, char** out) {
  if (!system || !out) return Fail(SQPAT_ERR_USAGE, "null argument");
  *out = nullptr;
  return Guard([&] { *out = Dup(sqpat::SerializeSystem(system->loaded.file)); });
}

sqpat_status sqpat_system_info(const sqpat_system* system, size_t* n,
                               size_t* m, int* projective, uint32_t* p,
                               uint32_t* k) {
  if (!system) return Fail(SQPAT_ERR_USAGE, "null argument");
  const sqpat::PolySystem& s = system->loaded.file.system;
  if (n) *n = s.ambient().n;
  if (m) *m = s.m();
  if (projective) *projective = s.ambient().projective() ? 1 : 0;
  if (p) *p = s.field()->p();
  if (k) *k = s.field()->k();
  return SQPAT_OK;
}

void sqpat_string_free(char* s) { std::free(s); }

sqpat_status sqpat_count(const sqpat_system* system,
                         const sqpat_options* options, sqpat_report** out) {
  return Run(&sqpat::RunCount, system, options, out);
}

sqpat_status sqpat_verify(const sqpat_system* system,
                          const sqpat_options* options, sqpat_report** out) {
  return Run(&sqpat::RunVerify, system, options, out);
}

sqpat_status sqpat_sigma(const sqpat_system* system,
                         const sqpat_options* options, sqpat_report** out) {
  return Run(&sqpat::RunSigma, system, options, out);
}

sqpat_status sqpat_classify(const sqpat_system* system,
                            const sqpat_options* options, sqpat_report** out) {
  return Run(&sqpat::RunClassify, system, options, out);
}

sqpat_status sqpat_witness(const sqpat_system* system,
                           const sqpat_options* options, sqpat_report** out) {
  return Run(&sqpat::RunWitness, system, options, out);
}

sqpat_status sqpat_sweep(const sqpat_system* system,
                         const sqpat_options* options, sqpat_report** out) {
  return Run(&sqpat::RunSweep, system, options, out);
}

int sqpat_report_passed(const sqpat_report* report) {
  return report && report->report.passed() ? 1 : 0;
}

const char* sqpat_report_verdict(const sqpat_report* report) {
  return report ? sqpat::VerdictName(report->report.verdict) : "";
}

const char* sqpat_report_csv(const sqpat_report* report) {
  return report ? report->report.csv.c_str() : "";
}

const char* sqpat_report_summary(const sqpat_report* report) {
  return report ? report->report.summary.c_str() : "";
}

void sqpat_report_free(sqpat_report* report) { delete report; }

sqpat_status sqpat_count_pattern(const sqpat_system* system,
                                 const char* pattern, unsigned ext,
                                 unsigned workers, uint64_t* out) {
  if (!system || !pattern || !out) {
    return Fail(SQPAT_ERR_USAGE, "null argument");
  }
  return Guard([&] {
    const sqpat::PolySystem& base = system->loaded.file.system;
    const sqpat::FieldPtr& f = base.field();
    sqpat::CountOptions opt;
    opt.workers = workers ? workers : 1;
    const sqpat::FieldPtr field =
        sqpat::Field::Make(f->p(), f->k() * (ext ? ext : 1), opt.ceiling);
    *out = sqpat::CountPattern(base.BaseChange(field),
                               sqpat::Pattern::Parse(pattern, base.m()), opt);
  });
}

sqpat_status sqpat_pi(int i, uint64_t q, uint64_t* out) {
  if (!out) return Fail(SQPAT_ERR_USAGE, "null argument");
  return Guard([&] { *out = sqpat::Pi(i, q); });
}

}  // extern "C"
