// SPDX-License-Identifier: Apache-2.0
//
// relaymimo: hybrid-detection massive MIMO relay uplink toolkit
// Copyright (C) 2026 The relaymimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RELAYMIMO_PARALLEL_HPP
#define RELAYMIMO_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace relaymimo
{

inline unsigned resolve_workers(unsigned requested)
{
    if (requested > 0)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Evaluates fn(t) for t = 0..n-1 on `workers` threads and returns the results in index order.
// Callers reduce the returned vector sequentially, so the worker count never changes a sum.
template <typename Fn>
auto parallel_map(std::size_t n, unsigned workers, Fn &&fn) -> std::vector<std::invoke_result_t<Fn &, std::size_t>>
{
    using T = std::invoke_result_t<Fn &, std::size_t>;
    std::vector<T> out(n);
    workers = std::min<unsigned>(resolve_workers(workers), unsigned(std::max<std::size_t>(n, 1)));
    if (workers <= 1)
    {
        for (std::size_t t = 0; t < n; ++t)
            out[t] = fn(t);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;)
        {
            const std::size_t t = next.fetch_add(1);
            if (t >= n)
                return;
            try
            {
                out[t] = fn(t);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(work);
    for (auto &th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
    return out;
}

} // namespace relaymimo

#endif
