// Copyright 2026 The gpm Authors
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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

namespace gpm {

/// Fixed number of trials handed to each substream.
inline constexpr std::uint64_t kTrialsPerBlock = 1U << 16U;

inline unsigned default_thread_count() {
    return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs `work(block_index, first_trial, n_trials)` over fixed-size trial
/// blocks and returns the per-block results in block order.
///
/// Blocks are a pure function of `trials`, so any reduction done in block
/// order is independent of `threads`.
template <typename Result, typename Work>
std::vector<Result> run_blocks(std::uint64_t trials, unsigned threads,
                               Work &&work) {
    const std::uint64_t n_blocks =
        (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
    std::vector<Result> results(n_blocks);
    auto run_range = [&](std::uint64_t begin_block, std::uint64_t stride) {
        for (std::uint64_t b = begin_block; b < n_blocks; b += stride) {
            const std::uint64_t first = b * kTrialsPerBlock;
            const std::uint64_t count =
                std::min(kTrialsPerBlock, trials - first);
            results[b] = work(b, first, count);
        }
    };
    const unsigned n_workers = static_cast<unsigned>(
        std::min<std::uint64_t>(std::max(1U, threads), n_blocks));
    if (n_workers <= 1) {
        run_range(0, 1);
        return results;
    }
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
        pool.emplace_back(run_range, w, n_workers);
    }
    pool.clear();
    return results;
}

/// Calls `work(i)` for every i in [0, n), striding indices over `threads`
/// workers. `work` must only touch state owned by index i.
template <typename Work>
void parallel_for_index(std::size_t n, unsigned threads, Work &&work) {
    const unsigned n_workers = static_cast<unsigned>(
        std::min<std::size_t>(std::max(1U, threads), n));
    if (n_workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            work(i);
        }
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += n_workers) {
                work(i);
            }
        });
    }
}

} // namespace gpm
