#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace permlab::detail {

// Runs fn(i) for i in [begin, end) across a few threads. Callers index a
// preallocated result slot per i, so the output is identical to a serial run.
inline void parallel_index(int64_t begin, int64_t end,
                           const std::function<void(int64_t)>& fn,
                           unsigned max_threads = 0) {
    const int64_t count = end - begin;
    if (count <= 0)
        return;
    unsigned hw = max_threads ? max_threads : std::thread::hardware_concurrency();
    if (hw == 0)
        hw = 1;
    unsigned workers = static_cast<unsigned>(std::min<int64_t>(hw, count));
    if (workers <= 1 || count < 16) {
        for (int64_t i = begin; i < end; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        threads.emplace_back([&, w]() {
            for (int64_t i = begin + w; i < end; i += workers)
                fn(i);
        });
    for (auto& t : threads)
        t.join();
}

}  // namespace permlab::detail
