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

#include "sqpat/enumerate.h"

#include <string>

#include "sqpat/error.h"

namespace sqpat {

std::uint64_t CheckedPower(std::uint64_t q, unsigned e, std::uint64_t ceiling) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > ceiling / q) {
      throw Error(ErrorCode::kCeilingExceeded,
                  std::to_string(q) + "^" + std::to_string(e) +
                      " points exceed the enumeration ceiling " +
                      std::to_string(ceiling));
    }
    r *= q;
  }
  if (r > ceiling) {
    throw Error(ErrorCode::kCeilingExceeded,
                "point count exceeds the enumeration ceiling");
  }
  return r;
}

AffineCursor::AffineCursor(std::uint32_t q, std::size_t dim,
                           std::uint64_t index)
    : q_(q), coords_(dim) {
  for (auto& c : coords_) {
    c.code = static_cast<std::uint32_t>(index % q);
    index /= q;
  }
}

void AffineCursor::Next() {
  for (auto& c : coords_) {
    if (++c.code < q_) return;
    c.code = 0;
  }
}

ProjectiveCursor::ProjectiveCursor(std::uint32_t q, std::size_t n,
                                   std::uint64_t index)
    : q_(q), lead_(0), coords_(n + 1) {
  std::uint64_t block = 1;
  for (std::size_t i = 0; i < n; ++i) block *= q;
  while (lead_ < n && index >= block) {
    index -= block;
    block /= q;
    ++lead_;
  }
  coords_[lead_].code = 1;
  for (std::size_t i = lead_ + 1; i <= n; ++i) {
    coords_[i].code = static_cast<std::uint32_t>(index % q);
    index /= q;
  }
}

void ProjectiveCursor::Next() {
  for (std::size_t i = lead_ + 1; i < coords_.size(); ++i) {
    if (++coords_[i].code < q_) return;
    coords_[i].code = 0;
  }
  // Block exhausted: move the leading 1 one position right.
  if (lead_ + 1 < coords_.size()) {
    coords_[lead_].code = 0;
    ++lead_;
    coords_[lead_].code = 1;
  }
}

}  // namespace sqpat
