#include "helscat/parallel.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace helscat {

void parallel_for_index(std::size_t n, int threads,
                        const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;

    std::size_t workers = 0;
    if (threads > 0) {
        workers = static_cast<std::size_t>(threads);
    } else {
        const unsigned hw = std::thread::hardware_concurrency();
        workers = hw == 0 ? 1 : hw;
    }
    if (workers > n) workers = n;

    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::vector<std::exception_ptr> errors(workers);

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                    if (failed.load(std::memory_order_relaxed)) return;
                    fn(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        });
    }
    for (auto& t : pool) t.join();

    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace helscat
