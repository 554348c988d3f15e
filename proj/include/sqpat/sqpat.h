/* Copyright 2026 The sqpat Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to libsqpat. Every function returns a status; on failure the
 * message is available from sqpat_last_error() on the same thread. Strings
 * returned through char** must be released with sqpat_string_free(); strings
 * returned as const char* live as long as their handle. */

#ifndef SQPAT_SQPAT_H_
#define SQPAT_SQPAT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SQPAT_API __declspec(dllexport)
#else
#define SQPAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sqpat_system sqpat_system;
typedef struct sqpat_report sqpat_report;

typedef enum sqpat_status {
  SQPAT_OK = 0,
  SQPAT_ERR_PARSE = 1,
  SQPAT_ERR_USAGE = 2,
  SQPAT_ERR_CEILING = 3,
  SQPAT_ERR_INVALID = 4, /* rejected input: singular conic, bad field, ... */
  SQPAT_ERR_INTERNAL = 5
} sqpat_status;

/* Zero or null fields mean "not set"; file options then apply. */
typedef struct sqpat_options {
  const char* theorem; /* thm1 thm2 thm3 cor1 cor2 */
  const char* pattern; /* e.g. "+-" */
  unsigned ext;
  unsigned tower_lo;
  unsigned tower_hi;
  const uint64_t* q_list;
  size_t q_count;
  int has_seed;
  uint64_t seed;
  unsigned workers;
  uint64_t ceiling;
  int has_constant;
  double constant;
} sqpat_options;

SQPAT_API void sqpat_options_init(sqpat_options* options);

SQPAT_API const char* sqpat_last_error(void);

SQPAT_API sqpat_status sqpat_system_parse(const char* text,
                                          sqpat_system** out);
SQPAT_API sqpat_status sqpat_system_load(const char* path, sqpat_system** out);
SQPAT_API void sqpat_system_free(sqpat_system* system);
SQPAT_API sqpat_status sqpat_system_serialize(const sqpat_system* system,
                                              char** out);
/* n, m, projective flag and field parameters. Any pointer may be null. */
SQPAT_API sqpat_status sqpat_system_info(const sqpat_system* system,
                                         size_t* n, size_t* m,
                                         int* projective, uint32_t* p,
                                         uint32_t* k);
SQPAT_API void sqpat_string_free(char* s);

SQPAT_API sqpat_status sqpat_count(const sqpat_system* system,
                                   const sqpat_options* options,
                                   sqpat_report** out);
SQPAT_API sqpat_status sqpat_verify(const sqpat_system* system,
                                    const sqpat_options* options,
                                    sqpat_report** out);
SQPAT_API sqpat_status sqpat_sigma(const sqpat_system* system,
                                   const sqpat_options* options,
                                   sqpat_report** out);
SQPAT_API sqpat_status sqpat_classify(const sqpat_system* system,
                                      const sqpat_options* options,
                                      sqpat_report** out);
SQPAT_API sqpat_status sqpat_witness(const sqpat_system* system,
                                     const sqpat_options* options,
                                     sqpat_report** out);
SQPAT_API sqpat_status sqpat_sweep(const sqpat_system* system,
                                   const sqpat_options* options,
                                   sqpat_report** out);

SQPAT_API int sqpat_report_passed(const sqpat_report* report);
/* "pass", "fail" or "unverified". */
SQPAT_API const char* sqpat_report_verdict(const sqpat_report* report);
SQPAT_API const char* sqpat_report_csv(const sqpat_report* report);
SQPAT_API const char* sqpat_report_summary(const sqpat_report* report);
SQPAT_API void sqpat_report_free(sqpat_report* report);

/* N_S over F_{q^ext} for the system's base field q. */
SQPAT_API sqpat_status sqpat_count_pattern(const sqpat_system* system,
                                           const char* pattern, unsigned ext,
                                           unsigned workers, uint64_t* out);
SQPAT_API sqpat_status sqpat_pi(int i, uint64_t q, uint64_t* out);

#ifdef __cplusplus
}
#endif

#endif /* SQPAT_SQPAT_H_ */
