// Copyright 2026 The qunc Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUNC_PARALLEL_HPP
#define QUNC_PARALLEL_HPP

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace qunc {

/// Runs fn(chunk) for chunk in [0, chunks) on up to hardware_concurrency
/// threads and returns the results in chunk order. The partition does not
/// depend on the thread count, so seeded results are reproducible anywhere.
template <typename Result, typename Fn>
std::vector<Result> map_chunks(int chunks, Fn fn) {
  std::vector<Result> out(static_cast<std::size_t>(chunks));
  const int threads = std::max(1, std::min<int>(chunks, std::thread::hardware_concurrency()));
  if (threads == 1) {
    for (int c = 0; c < chunks; ++c) out[c] = fn(c);
    return out;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int c = t; c < chunks; c += threads) out[c] = fn(c);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

/// Number of items in chunk c when n items are split into `chunks` parts.
inline std::int64_t chunk_size(std::int64_t n, int chunks, int c) {
  return n / chunks + (c < n % chunks ? 1 : 0);
}

}  // namespace qunc

#endif  // QUNC_PARALLEL_HPP
