#pragma once

// Seeded, splittable random streams and a chunked parallel loop. Chunk
// boundaries and per-chunk seeds depend only on the problem size and the base
// seed, never on the thread count, so merged results are reproducible.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace tropdeg {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Independent engine for chunk `stream` of an experiment seeded with `seed`.
inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream)
{
    return std::mt19937_64(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ull)));
}

constexpr std::size_t kDefaultChunkSize = 4096;

/// Runs fn(chunk_index, begin, end) over [0, count) split into fixed-size
/// chunks, distributing chunks over `threads` workers (0 = hardware).
template <class Fn>
void parallel_chunks(std::size_t count, std::size_t chunk_size, unsigned threads, Fn&& fn)
{
    const std::size_t chunks = (count + chunk_size - 1) / chunk_size;
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(chunks, 1)));
    auto run = [&](std::size_t c) {
        const std::size_t begin = c * chunk_size;
        fn(c, begin, std::min(count, begin + chunk_size));
    };
    if (threads <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            run(c);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < chunks; c = next++) {
                try {
                    run(c);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace tropdeg
