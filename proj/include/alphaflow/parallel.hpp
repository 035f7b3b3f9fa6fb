#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace alphaflow {

// Process-wide cap on worker threads (CLI --threads). Defaults to the
// hardware count. Reductions stay deterministic regardless: workers fill
// disjoint slots and sums run in fixed index order afterwards.
class ThreadBudget {
  public:
    static ThreadBudget& instance() {
        static ThreadBudget b;
        return b;
    }
    void set(int n) { cap_ = std::max(1, n); }
    int get() const { return cap_; }

  private:
    ThreadBudget() {
        unsigned hc = std::thread::hardware_concurrency();
        cap_ = hc == 0 ? 1 : static_cast<int>(hc);
    }
    std::atomic<int> cap_;
};

// Runs fn(i) for i in [0, n). Work items must write to disjoint locations.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    int nthreads = std::min<std::size_t>(ThreadBudget::instance().get(), n);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace alphaflow
