#pragma once

// Internal: deterministic block-parallel Monte Carlo driver. Samples are
// split into fixed-size blocks; workers take blocks round-robin and each
// block's accumulator lands in its own slot, so the reduction order never
// depends on scheduling.

#include <future>
#include <vector>

namespace pathint::detail {

template <typename Acc, typename BlockFn>
std::vector<Acc> run_sample_blocks(long n_samples, long block_size, int threads, BlockFn fn) {
    const long n_blocks = (n_samples + block_size - 1) / block_size;
    std::vector<Acc> out(static_cast<std::size_t>(n_blocks));
    if (threads <= 1) {
        for (long b = 0; b < n_blocks; ++b)
            out[b] = fn(b * block_size, std::min(n_samples, (b + 1) * block_size));
        return out;
    }
    std::vector<std::future<void>> workers;
    for (int w = 0; w < threads; ++w)
        workers.push_back(std::async(std::launch::async, [&, w]() {
            for (long b = w; b < n_blocks; b += threads)
                out[b] = fn(b * block_size, std::min(n_samples, (b + 1) * block_size));
        }));
    for (auto& f : workers) f.get();
    return out;
}

}  // namespace pathint::detail
