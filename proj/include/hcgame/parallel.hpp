#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hcgame {

/// Worker count from HCGAME_JOBS, or 1 when unset or invalid.
inline int jobs_from_env() {
    const char* v = std::getenv("HCGAME_JOBS");
    if (v == nullptr) {
        return 1;
    }
    try {
        const int j = std::stoi(v);
        return j >= 1 ? j : 1;
    } catch (const std::exception&) {
        return 1;
    }
}

/// Calls f(k) for k in [0, n) on up to `jobs` threads. Work is split into
/// contiguous blocks; callers write results into slot k so the merge order
/// never depends on scheduling.
template <class F>
void parallel_for(size_t n, int jobs, F&& f) {
    const size_t workers = std::min<size_t>(jobs < 1 ? 1 : static_cast<size_t>(jobs), n);
    if (workers <= 1) {
        for (size_t k = 0; k < n; k++) {
            f(k);
        }
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (size_t w = 0; w < workers; w++) {
        const size_t begin = n * w / workers;
        const size_t end = n * (w + 1) / workers;
        threads.emplace_back([&, begin, end] {
            try {
                for (size_t k = begin; k < end; k++) {
                    f(k);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace hcgame
