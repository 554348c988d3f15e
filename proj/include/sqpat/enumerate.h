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

// Point enumeration over A^n(F_q) and P^n(F_q), and the partitioned
// reduction used by every exhaustive count.
//
// Affine points are listed in odometer order (coordinate 0 fastest).
// Projective points are canonical representatives whose first nonzero
// coordinate is 1, listed block by block: leading position 0 first, and the
// free trailing coordinates in odometer order within a block.

#ifndef SQPAT_ENUMERATE_H_
#define SQPAT_ENUMERATE_H_

#include <algorithm>
#include <cstdint>
#include <exception>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "sqpat/field.h"

namespace sqpat {

// q^e; throws Error(kCeilingExceeded) when the result passes `ceiling`.
std::uint64_t CheckedPower(std::uint64_t q, unsigned e, std::uint64_t ceiling);

class AffineCursor {
 public:
  AffineCursor(std::uint32_t q, std::size_t dim, std::uint64_t index);

  std::span<const Element> point() const { return coords_; }
  void Next();

 private:
  std::uint32_t q_;
  std::vector<Element> coords_;
};

class ProjectiveCursor {
 public:
  // Points of P^n, i.e. n + 1 coordinates.
  ProjectiveCursor(std::uint32_t q, std::size_t n, std::uint64_t index);

  std::span<const Element> point() const { return coords_; }
  void Next();

 private:
  std::uint32_t q_;
  std::size_t lead_;
  std::vector<Element> coords_;
};

// Splits [0, total) into `workers` contiguous chunks and runs
// body(lo, hi, acc) on each, where acc is a zeroed worker-private span of
// `buckets` counters. Returns the bucket-wise sum; integer addition keeps the
// result independent of the worker count.
template <class Body>
std::vector<std::uint64_t> ParallelReduce(std::uint64_t total,
                                          unsigned workers,
                                          std::size_t buckets, Body body) {
  workers = std::max(1u, workers);
  if (total < workers) {
    workers = static_cast<unsigned>(std::max<std::uint64_t>(total, 1));
  }
  std::vector<std::vector<std::uint64_t>> partial(
      workers, std::vector<std::uint64_t>(buckets, 0));
  auto range = [&](unsigned w) {
    return std::pair<std::uint64_t, std::uint64_t>{total * w / workers,
                                                   total * (w + 1) / workers};
  };
  if (workers == 1) {
    body(std::uint64_t{0}, total, std::span<std::uint64_t>(partial[0]));
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          auto [lo, hi] = range(w);
          body(lo, hi, std::span<std::uint64_t>(partial[w]));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::vector<std::uint64_t> out(buckets, 0);
  for (const auto& p : partial) {
    for (std::size_t b = 0; b < buckets; ++b) out[b] += p[b];
  }
  return out;
}

}  // namespace sqpat

#endif  // SQPAT_ENUMERATE_H_
