#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace csl {

// workers == 0 means "use all hardware threads".
inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// Runs body(i) for every i in [0, n). Bodies must write only to disjoint
// slots; callers fold the slots afterwards in index order, which keeps
// results independent of scheduling. Bodies must not throw.
template <typename Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
    workers = resolve_workers(workers);
    if (workers > n) workers = static_cast<unsigned>(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&next, n, &body] {
            for (;;) {
                std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= n) return;
                body(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace csl
