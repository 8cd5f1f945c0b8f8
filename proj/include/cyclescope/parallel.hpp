#ifndef CYCLESCOPE_PARALLEL_HPP
#define CYCLESCOPE_PARALLEL_HPP

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace cyclescope {

/// Worker count: hardware concurrency capped by the CYCLESCOPE_THREADS
/// environment variable (values < 1 mean serial).
inline unsigned thread_budget() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("CYCLESCOPE_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
        if (cap >= 1 && static_cast<unsigned>(cap) >= n) n = static_cast<unsigned>(cap);
        if (cap < 1) n = 1;
    }
    return n;
}

/// Runs body(i) for i in [0, count). Work is indexed, so results written to
/// pre-sized slots are identical regardless of schedule.
template <typename Body>
void parallel_for_index(std::size_t count, Body&& body) {
    const unsigned workers = thread_budget();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    const unsigned used = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    pool.reserve(used);
    for (unsigned w = 0; w < used; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < count; i += used) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace cyclescope

#endif
