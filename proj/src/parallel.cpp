#include "graphlim/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace graphlim {

namespace {
std::atomic<int> g_max_threads{0};  // 0: use hardware concurrency
}

int max_threads() {
    const int cap = g_max_threads.load();
    if (cap > 0) return cap;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

void set_max_threads(int n) { g_max_threads.store(n > 0 ? n : 0); }

void parallel_ranges(std::uint64_t n, int n_ranges,
                     const std::function<void(int, std::uint64_t, std::uint64_t)>& fn) {
    if (n == 0) return;
    n_ranges = std::max(1, n_ranges);
    const std::uint64_t chunk = (n + n_ranges - 1) / n_ranges;
    const int workers = std::min<int>(max_threads(), n_ranges);

    if (workers <= 1) {
        for (int r = 0; r < n_ranges; ++r) {
            const std::uint64_t lo = static_cast<std::uint64_t>(r) * chunk;
            if (lo >= n) break;
            fn(r, lo, std::min(n, lo + chunk));
        }
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto work = [&] {
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= n_ranges || failed.load()) return;
            const std::uint64_t lo = static_cast<std::uint64_t>(r) * chunk;
            if (lo >= n) return;
            try {
                fn(r, lo, std::min(n, lo + chunk));
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(error);
}

}  // namespace graphlim
