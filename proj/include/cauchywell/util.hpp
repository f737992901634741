#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cauchywell {

inline constexpr const char* kToolVersion = "0.1.0";

/// Failures of numerical machinery (eigensolver breakdown, quadrature
/// non-convergence, unavailable rank). Distinct from usage errors so the CLI
/// can map them to a dedicated exit code.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested solution rank exceeds the number of real solutions found.
class rank_unavailable : public numerical_error {
public:
    rank_unavailable(int requested, int found)
        : numerical_error("rank " + std::to_string(requested) +
                          " unavailable: only " + std::to_string(found) +
                          " real solution(s) found"),
          requested_(requested), found_(found) {}
    [[nodiscard]] int requested() const noexcept { return requested_; }
    [[nodiscard]] int found() const noexcept { return found_; }

private:
    int requested_;
    int found_;
};

/// Reference-table lookup with no matching entry.
class lookup_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Run fn(i) for i in [0, count) on a bounded pool of worker threads.
/// Each index is processed exactly once; callers pre-allocate result slots so
/// output order is independent of scheduling.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn)
{
    if (count == 0) return;
    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(), 8u);
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace cauchywell
