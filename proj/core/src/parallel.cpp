#include "disclab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace disclab {

namespace {

std::size_t env_threads() {
    const char* text = std::getenv("DISCLAB_THREADS");
    if (text == nullptr || *text == '\0') {
        return 0;
    }
    try {
        const long value = std::stol(text);
        return value > 0 ? static_cast<std::size_t>(value) : 0;
    } catch (const std::exception&) {
        return 0;
    }
}

std::atomic<std::size_t>& cap_override() {
    static std::atomic<std::size_t> cap{env_threads()};
    return cap;
}

} // namespace

std::size_t thread_cap() {
    const std::size_t cap = cap_override().load();
    if (cap > 0) {
        return cap;
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void set_thread_cap(std::size_t threads) { cap_override().store(threads); }

void parallel_for_blocks(std::size_t blocks, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min(thread_cap(), blocks);
    if (workers <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) {
            body(b);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
            try {
                body(b);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (std::size_t t = 1; t < workers; ++t) {
            pool.emplace_back(worker);
        }
        worker();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace disclab
