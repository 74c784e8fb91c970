// sweep.hpp: deterministic RNG for property sweeps and a small worker pool
// for grid evaluation. Workers write results by grid index, so output order
// never depends on scheduling.
#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <random>
#include <thread>
#include <vector>

namespace parampli {

// mt19937_64 with an explicit 53-bit uniform map: the engine's sequence is
// standard-fixed, and avoiding std::uniform_real_distribution keeps results
// identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    double uniform(double a, double b)
    {
        const double x = std::ldexp(double(eng_() >> 11), -53); // [0, 1)
        return a + (b - a) * x;
    }

private:
    std::mt19937_64 eng_;
};

// --threads flag if given, else PARAMPLI_THREADS, else hardware concurrency.
unsigned resolve_threads(std::optional<unsigned> requested);

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body)
{
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    const unsigned workers = unsigned(std::min<std::size_t>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= n) break;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace parampli
