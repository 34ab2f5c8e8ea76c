#include "sparsekit/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sparsekit {

namespace {
std::atomic<int> g_threads{1};
thread_local bool t_worker = false;  // nested calls run inline
}

void set_threads(int n) { g_threads = std::max(1, n); }

int threads() { return g_threads; }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    int t = std::min<std::size_t>(g_threads.load(), count);
    if (t <= 1 || t_worker) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int w = 0; w < t; ++w)
        pool.emplace_back([&] {
            t_worker = true;
            try {
                for (std::size_t i = next++; i < count; i = next++) fn(i);
            } catch (...) {
                std::lock_guard lk(err_mu);
                if (!err) err = std::current_exception();
                next = count;
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace sparsekit
