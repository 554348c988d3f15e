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

/* Exercises the shared library through its C header only. */

#include <stdio.h>
#include <string.h>

#include "sqpat/sqpat.h"

static int failures = 0;

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: check failed: %s (last error: %s)\n", \
              __FILE__, __LINE__, #cond, sqpat_last_error());    \
      ++failures;                                                \
    }                                                            \
  } while (0)

static const char kConics[] =
    "field p=5 k=1\n"
    "ambient projective 2\n"
    "poly f1 = x0^2 + x1^2 - x2^2\n"
    "poly f2 = x0^2 + 2x1^2 + x2^2\n";

int main(void) {
  sqpat_system* sys = NULL;
  sqpat_report* rep = NULL;
  sqpat_options opts;
  size_t n = 0, m = 0;
  int projective = 0;
  uint32_t p = 0, k = 0;
  uint64_t value = 0;
  char* text = NULL;
  sqpat_system* again = NULL;

  CHECK(sqpat_system_parse(kConics, &sys) == SQPAT_OK);
  CHECK(sqpat_system_info(sys, &n, &m, &projective, &p, &k) == SQPAT_OK);
  CHECK(n == 2 && m == 2 && projective == 1 && p == 5 && k == 1);

  /* Pattern counts over F_5 partition the 31 points minus the zeros. */
  CHECK(sqpat_count_pattern(sys, "++", 1, 1, &value) == SQPAT_OK);
  CHECK(value == 6);
  CHECK(sqpat_count_pattern(sys, "+x", 1, 1, &value) == SQPAT_ERR_USAGE);
  CHECK(strlen(sqpat_last_error()) > 0);

  CHECK(sqpat_pi(2, 3, &value) == SQPAT_OK && value == 13);
  CHECK(sqpat_pi(-1, 3, &value) == SQPAT_OK && value == 0);

  sqpat_options_init(&opts);
  opts.theorem = "thm2";
  opts.tower_lo = 1;
  opts.tower_hi = 3;
  CHECK(sqpat_verify(sys, &opts, &rep) == SQPAT_OK);
  CHECK(sqpat_report_passed(rep) == 1);
  CHECK(strcmp(sqpat_report_verdict(rep), "pass") == 0);
  CHECK(strstr(sqpat_report_csv(rep), "q,n,m,pattern") != NULL);
  CHECK(strstr(sqpat_report_summary(rep), "sigma=-1") != NULL);
  sqpat_report_free(rep);

  sqpat_options_init(&opts);
  opts.ceiling = 10;
  CHECK(sqpat_count(sys, &opts, &rep) == SQPAT_ERR_CEILING);
  CHECK(rep == NULL);

  CHECK(sqpat_system_serialize(sys, &text) == SQPAT_OK);
  CHECK(text != NULL && sqpat_system_parse(text, &again) == SQPAT_OK);
  sqpat_string_free(text);
  sqpat_system_free(again);
  sqpat_system_free(sys);

  sys = NULL;
  CHECK(sqpat_system_parse("field p=4 k=1\n", &sys) == SQPAT_ERR_PARSE);
  CHECK(sys == NULL);
  CHECK(sqpat_system_load("/nonexistent/file.sys", &sys) == SQPAT_ERR_USAGE);
  CHECK(sqpat_count(NULL, NULL, &rep) == SQPAT_ERR_USAGE);

  /* A singular conic is rejected as invalid input by classify. */
  CHECK(sqpat_system_parse("field p=5 k=1\nambient projective 2\n"
                           "poly f = x0^2\n",
                           &sys) == SQPAT_OK);
  CHECK(sqpat_classify(sys, NULL, &rep) == SQPAT_ERR_INVALID);
  sqpat_system_free(sys);

  if (failures == 0) printf("capi_test: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
