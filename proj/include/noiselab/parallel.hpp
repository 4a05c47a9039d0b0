// Copyright 2026 The noiselab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOISELAB_PARALLEL_HPP
#define NOISELAB_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace noiselab {

/// Number of worker threads used by the enumeration and Monte Carlo loops.
/// Results never depend on this value: work items write into slots fixed by
/// their index and every reduction runs in index order afterwards.
unsigned worker_threads();
void set_worker_threads(unsigned threads);

namespace detail {
/// Set on pool threads; nested parallel_for calls then run inline.
inline thread_local bool in_parallel_region = false;
}  // namespace detail

/// Calls fn(i) for every i in [0, count). The first exception thrown by any
/// call is rethrown on the calling thread after all workers joined.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const std::size_t threads =
        detail::in_parallel_region ? 1 : std::min<std::size_t>(worker_threads(), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        const bool was_nested = detail::in_parallel_region;
        detail::in_parallel_region = true;
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = count;
            }
        }
        detail::in_parallel_region = was_nested;
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace noiselab

#endif
