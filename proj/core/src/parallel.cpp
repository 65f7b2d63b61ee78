#include "mcv2x/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mcv2x {

int thread_count() {
    if (const char* env = std::getenv("MCV2X_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(std::int64_t n, std::int64_t chunk_size,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn) {
    if (n <= 0) return;
    if (chunk_size < 1) chunk_size = 1;
    const std::int64_t n_chunks = (n + chunk_size - 1) / chunk_size;
    const int workers = static_cast<int>(std::min<std::int64_t>(thread_count(), n_chunks));

    if (workers <= 1) {
        for (std::int64_t c = 0; c < n_chunks; ++c) {
            const std::int64_t begin = c * chunk_size;
            fn(begin, std::min(begin + chunk_size, n), c);
        }
        return;
    }

    std::atomic<std::int64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::int64_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks) return;
            const std::int64_t begin = c * chunk_size;
            try {
                fn(begin, std::min(begin + chunk_size, n), c);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace mcv2x
