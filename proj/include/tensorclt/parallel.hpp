#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace tensorclt {

/// Neumaier compensated accumulator. Adding the same values in the same
/// order always yields the same bits, and the compensation keeps long
/// Monte Carlo reductions accurate to ~1 ulp.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Worker cap: min(TENSORCLT_THREADS if set, hardware concurrency), at least 1.
std::size_t worker_count();

/// Runs fn(chunk_index, begin, end) over [0, total) split into fixed-size
/// chunks. Chunk boundaries depend only on (total, chunk_size), so per-chunk
/// results reduced in chunk order are identical for every worker count.
void parallel_chunks(std::size_t total, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace tensorclt
