// Copyright 2026 The zonerec Authors.
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

#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace zonerec {

// Runs fn(chunk_index, begin, end) over a fixed number of contiguous item
// chunks. The chunk count is independent of the hardware thread count so
// that per-chunk results merged in chunk order are deterministic.
inline constexpr int kParallelChunks = 16;

template <class Fn>
void run_chunks(int n_items, Fn&& fn, int n_chunks = kParallelChunks) {
  if (n_items <= 0) return;
  n_chunks = std::min(n_chunks, n_items);
  std::atomic<int> next{0};
  const unsigned workers = std::min<unsigned>(
      std::max(1u, std::thread::hardware_concurrency()),
      static_cast<unsigned>(n_chunks));
  auto work = [&]() {
    while (true) {
      const int chunk = next.fetch_add(1);
      if (chunk >= n_chunks) return;
      const int begin =
          static_cast<int>(static_cast<long long>(chunk) * n_items / n_chunks);
      const int end = static_cast<int>(
          static_cast<long long>(chunk + 1) * n_items / n_chunks);
      fn(chunk, begin, end);
    }
  };
  if (workers <= 1) {
    work();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
  for (auto& t : pool) t.join();
}

}  // namespace zonerec
