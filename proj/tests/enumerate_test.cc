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

#include <gtest/gtest.h>

#include <set>
#include <stdexcept>

#include "sqpat/error.h"

namespace sqpat {
namespace {

std::vector<std::uint32_t> Codes(std::span<const Element> pt) {
  std::vector<std::uint32_t> out;
  for (auto e : pt) out.push_back(e.code);
  return out;
}

TEST(AffineCursor, VisitsEveryPointOnce) {
  std::set<std::vector<std::uint32_t>> seen;
  AffineCursor cur(3, 3, 0);
  for (int i = 0; i < 27; ++i, cur.Next()) seen.insert(Codes(cur.point()));
  EXPECT_EQ(seen.size(), 27u);
}

TEST(AffineCursor, SeekMatchesStepping) {
  AffineCursor stepped(5, 3, 0);
  for (std::uint64_t i = 0; i < 125; ++i, stepped.Next()) {
    AffineCursor direct(5, 3, i);
    ASSERT_EQ(Codes(direct.point()), Codes(stepped.point())) << i;
  }
}

TEST(ProjectiveCursor, CanonicalRepresentatives) {
  // First nonzero coordinate is 1 and every point of P^2(F_5) appears once.
  const std::uint32_t q = 5;
  std::set<std::vector<std::uint32_t>> seen;
  ProjectiveCursor cur(q, 2, 0);
  for (std::uint64_t i = 0; i < q * q + q + 1; ++i, cur.Next()) {
    const auto c = Codes(cur.point());
    std::size_t lead = 0;
    while (lead < c.size() && c[lead] == 0) ++lead;
    ASSERT_LT(lead, c.size());
    EXPECT_EQ(c[lead], 1u);
    seen.insert(c);
  }
  EXPECT_EQ(seen.size(), 31u);
  EXPECT_EQ(Codes(ProjectiveCursor(q, 2, 0).point()),
            (std::vector<std::uint32_t>{1, 0, 0}));
  EXPECT_EQ(Codes(ProjectiveCursor(q, 2, 30).point()),
            (std::vector<std::uint32_t>{0, 0, 1}));
}

TEST(ProjectiveCursor, SeekMatchesStepping) {
  ProjectiveCursor stepped(3, 3, 0);
  for (std::uint64_t i = 0; i < 40; ++i, stepped.Next()) {
    ProjectiveCursor direct(3, 3, i);
    ASSERT_EQ(Codes(direct.point()), Codes(stepped.point())) << i;
  }
}

TEST(CheckedPower, Ceiling) {
  EXPECT_EQ(CheckedPower(3, 4, 81), 81u);
  EXPECT_EQ(CheckedPower(7, 0, 1), 1u);
  try {
    CheckedPower(3, 5, 81);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCeilingExceeded);
  }
}

TEST(ParallelReduce, DeterministicAcrossWorkerCounts) {
  const std::uint64_t total = 100003;
  auto body = [](std::uint64_t lo, std::uint64_t hi,
                 std::span<std::uint64_t> acc) {
    for (std::uint64_t i = lo; i < hi; ++i) acc[i % 7] += i * i % 13;
  };
  const auto ref = ParallelReduce(total, 1, 7, body);
  for (unsigned w : {2u, 3u, 8u, 64u}) {
    EXPECT_EQ(ParallelReduce(total, w, 7, body), ref) << w;
  }
  std::uint64_t sum = 0;
  for (auto v : ref) sum += v;
  std::uint64_t want = 0;
  for (std::uint64_t i = 0; i < total; ++i) want += i * i % 13;
  EXPECT_EQ(sum, want);
}

TEST(ParallelReduce, FewerItemsThanWorkers) {
  auto body = [](std::uint64_t lo, std::uint64_t hi,
                 std::span<std::uint64_t> acc) { acc[0] += hi - lo; };
  EXPECT_EQ(ParallelReduce(3, 8, 1, body)[0], 3u);
  EXPECT_EQ(ParallelReduce(0, 8, 1, body)[0], 0u);
}

TEST(ParallelReduce, PropagatesExceptions) {
  auto body = [](std::uint64_t lo, std::uint64_t, std::span<std::uint64_t>) {
    if (lo > 0) throw std::runtime_error("worker failed");
  };
  EXPECT_THROW(ParallelReduce(100, 4, 1, body), std::runtime_error);
}

}  // namespace
}  // namespace sqpat
