#pragma once

#include <cstddef>
#include <vector>

#include "spectest/bitseq.hpp"

namespace spectest {

/// Squared DFT magnitudes |S_j|^2 of a +/-1 sequence,
/// S_j = sum_k x_k exp(-2*pi*i*j*k/n).
///
/// half=false stores all n bins; half=true stores bins j = 0..n/2-1 only
/// (even n), which is what the spectral tests consume.
struct SpectrumResult {
    std::size_t n = 0;
    bool half = false;
    std::vector<double> mag2;

    std::size_t bins() const noexcept { return mag2.size(); }
};

/// Fast transform, O(n log n) for every n (radix-2 when n is a power of two,
/// Bluestein's chirp-z embedding otherwise). Requires n >= 2; half=true
/// additionally requires even n.
///
/// Thread-safe; transform plans are cached per length behind a lock and
/// shared, execution touches only local buffers.
SpectrumResult dft_power(const PmSequence& x, bool half);

/// Validation oracle: literal evaluation of the defining cos/sin sums,
/// O(n^2). Guarded to n <= 16384. Always returns the full spectrum.
SpectrumResult dft_power_direct(const PmSequence& x);

} // namespace spectest
