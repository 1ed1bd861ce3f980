#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ipred {

/// Worker count from IPRED_THREADS; 1 when unset or unparsable.
inline unsigned thread_count() {
    const char* env = std::getenv("IPRED_THREADS");
    if (env == nullptr) return 1;
    try {
        const long v = std::stol(env);
        return v < 1 ? 1u : static_cast<unsigned>(std::min<long>(v, 256));
    } catch (const std::exception&) {
        return 1;
    }
}

/// Runs f(i) for i in [0, count). Each index is visited once; callers write only to slot i,
/// so the result does not depend on the thread count.
template <typename F>
void parallel_for(std::ptrdiff_t count, F&& f) {
    const unsigned workers = std::min<std::ptrdiff_t>(thread_count(), std::max<std::ptrdiff_t>(count, 1));
    if (workers <= 1) {
        for (std::ptrdiff_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::ptrdiff_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::ptrdiff_t i = next++; i < count; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace ipred
