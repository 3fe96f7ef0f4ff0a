#include "mflift/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>

namespace mflift {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MFSPEC_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn) {
    const int nw = resolve_threads(threads);
    if (n == 0) return;
    if (nw <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::atomic_flag err_lock = ATOMIC_FLAG_INIT;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                while (err_lock.test_and_set()) {}
                if (!first_error) first_error = std::current_exception();
                err_lock.clear();
                failed.store(true);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    const std::size_t nu = std::min<std::size_t>(static_cast<std::size_t>(nw), n);
    pool.reserve(nu);
    for (std::size_t t = 0; t < nu; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace mflift
