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

#ifndef SQPAT_TESTS_TEST_UTIL_H_
#define SQPAT_TESTS_TEST_UTIL_H_

#include <string>
#include <vector>

#include "sqpat/counting.h"
#include "sqpat/field.h"
#include "sqpat/poly.h"
#include "sqpat/system_file.h"

namespace sqpat::testing {

// Polynomial in x0..x{nvars-1} written in the system-file syntax.
inline Poly P(const FieldPtr& f, std::size_t nvars, const std::string& text) {
  std::string src = "field p=" + std::to_string(f->p()) +
                    " k=" + std::to_string(f->k()) + "\nambient affine " +
                    std::to_string(nvars) + "\nvars";
  for (std::size_t i = 0; i < nvars; ++i) src += " x" + std::to_string(i);
  src += "\npoly f = " + text + "\n";
  return ParseSystemOver(src, f).system.polys()[0];
}

inline std::vector<Element> Pt(std::initializer_list<std::uint32_t> codes) {
  std::vector<Element> out;
  for (auto c : codes) out.push_back(Element{c});
  return out;
}

inline PolySystem Affine(const FieldPtr& f, std::size_t n,
                         const std::vector<std::string>& polys) {
  std::vector<Poly> ps;
  for (const auto& t : polys) ps.push_back(P(f, n, t));
  return PolySystem(f, Ambient{AmbientKind::kAffine, n}, ps);
}

inline PolySystem Projective(const FieldPtr& f, std::size_t n,
                             const std::vector<std::string>& polys) {
  std::vector<Poly> ps;
  for (const auto& t : polys) ps.push_back(P(f, n + 1, t));
  return PolySystem(f, Ambient{AmbientKind::kProjective, n}, ps);
}

}  // namespace sqpat::testing

#endif  // SQPAT_TESTS_TEST_UTIL_H_
