/*
* Copyright (C) 2026 The saa-control authors
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
#ifndef SAA_PARALLEL_HPP
#define SAA_PARALLEL_HPP

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace saa
{

/// Number of hardware threads, at least 1.
inline int max_threads()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

/**
 * Calls fn(i) for i in [0, n) using up to `threads` workers on contiguous
 * blocks. Exceptions are collected per index and the one with the lowest
 * index is rethrown, so failures do not depend on scheduling.
 */
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn)
{
    const int workers = std::clamp(threads, 1, std::max(1, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    auto run = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            try {
                fn(i);
            }
            catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 1; w < workers; ++w) {
        const int begin = w * chunk;
        const int end   = std::min(n, begin + chunk);
        if (begin < end) {
            pool.emplace_back(run, begin, end);
        }
    }
    run(0, std::min(n, chunk));
    for (auto& t : pool) {
        t.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

/**
 * In-place summation over a fixed binary tree: pairs (0,1), (2,3), ... then
 * (0,2), (4,6), ... The result lands in terms[0]. The association order only
 * depends on terms.size().
 */
template <typename T>
T tree_sum(std::vector<T> terms)
{
    const std::size_t n = terms.size();
    for (std::size_t stride = 1; stride < n; stride *= 2) {
        for (std::size_t i = 0; i + stride < n; i += 2 * stride) {
            terms[i] += terms[i + stride];
        }
    }
    return std::move(terms.front());
}

} // namespace saa

#endif // SAA_PARALLEL_HPP
