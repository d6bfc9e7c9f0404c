#pragma once

#include <cstddef>
#include <cstdint>

namespace xqp {

// Selects the serial reference kernel or the OpenMP kernel. Both produce
// bitwise-identical results: reductions accumulate into a fixed number of
// chunks that is independent of the thread count.
enum class Exec { Serial, Parallel };

void set_num_threads(int threads);
int max_threads();

// Number of fixed reduction chunks used by the parallel kernels.
inline constexpr std::size_t kReductionChunks = 256;

// Splits [0, total) into `chunks` contiguous ranges; returns the begin of `c`.
inline std::uint64_t chunk_begin(std::uint64_t total, std::size_t chunks, std::size_t c) {
    return total / chunks * c + (c < total % chunks ? c : total % chunks);
}

}  // namespace xqp
