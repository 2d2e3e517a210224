#include "dephase/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dephase {

void parallel_for_indexed(std::size_t n, int threads,
                          const std::function<void(std::size_t)>& body) {
    if (n == 0) return;
    std::size_t workers = threads > 0
                              ? static_cast<std::size_t>(threads)
                              : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);

    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex mu;
    std::size_t fail_index = n;
    std::exception_ptr fail;

    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                // keep the failure at the lowest index so reruns are stable
                if (i < fail_index) {
                    fail_index = i;
                    fail = std::current_exception();
                }
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    if (fail) std::rethrow_exception(fail);
}

}  // namespace dephase
