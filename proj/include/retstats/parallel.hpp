#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace retstats {

// Runs fn(i) for i in [0, count). Each index is processed exactly once and
// callers own any output slots, so results do not depend on the schedule.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    if (threads <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t nworkers =
        std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (std::size_t w = 0; w < nworkers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += nworkers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace retstats
