#include "cis/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace cis {

unsigned default_threads() {
    if (const char* env = std::getenv("CIS_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 1024));
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

void parallel_blocks(std::uint64_t count, unsigned threads,
                     const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& body) {
    constexpr std::uint64_t kBlock = 256;
    const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
    threads = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, blocks)));
    if (threads == 1) {
        if (count) body(0, 0, count);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::uint64_t b; (b = next.fetch_add(1)) < blocks;)
                    body(w, b * kBlock, std::min(count, (b + 1) * kBlock));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detail
}  // namespace cis
