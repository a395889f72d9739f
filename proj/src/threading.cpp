#include "dose/threading.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dose {
namespace {

std::atomic<int> g_cap{0};  // 0 = use hardware concurrency

}  // namespace

void set_thread_cap(int cap) { g_cap.store(std::max(0, cap)); }

int thread_cap() {
    const int hw = std::max(1u, std::thread::hardware_concurrency());
    const int cap = g_cap.load();
    return cap > 0 ? std::min(cap, hw) : hw;
}

void parallel_for(int64_t n, const std::function<void(int64_t)>& fn) {
    if (n <= 0) return;
    const int workers = static_cast<int>(std::min<int64_t>(thread_cap(), n));
    if (workers <= 1) {
        for (int64_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto body = [&] {
        for (;;) {
            const int64_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!error) error = std::current_exception();
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(workers) - 1);
    for (int t = 1; t < workers; ++t) threads.emplace_back(body);
    body();
    for (auto& th : threads) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace dose
