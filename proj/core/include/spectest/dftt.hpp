#pragma once

#include <cstddef>

#include "spectest/bitseq.hpp"
#include "spectest/outcome.hpp"
#include "spectest/spectral.hpp"

namespace spectest {

/// Parameterization of the threshold-count spectral test family.
///
/// Each variant counts N1, the number of half-spectrum magnitudes strictly
/// below its threshold, and standardizes it as
///
///     d = (N1 - 0.95 * n/2) / sqrt(0.95 * 0.05 * n / divisor)
///
/// Original: threshold sqrt(3n), divisor 2.
/// Kim:      threshold sqrt(-n ln 0.05), divisor 4.
/// Pareschi: threshold sqrt(-n ln 0.05), divisor 3.8.
struct DfttVariant {
    TestKind kind = TestKind::Kim;
    double divisor = 4.0;

    double threshold(std::size_t n) const;

    static DfttVariant original();
    static DfttVariant kim();
    static DfttVariant pareschi();
    static DfttVariant for_kind(TestKind kind);
};

/// N1 = #{ j in [0, n/2) : |S_j| < threshold }, evaluated as
/// mag2[j] < threshold^2. Ties (exact equality) count as not-below.
/// Requires a half spectrum.
std::size_t count_below_threshold(const SpectrumResult& half_spectrum, double threshold);

/// Full test on a bit sequence (computes the half spectrum internally).
/// Requires even n >= 2.
TestOutcome dftt_pvalue(const BitSequence& x, const DfttVariant& variant);

/// Same test on a precomputed half spectrum, so several variants can share
/// one transform of the same sequence.
TestOutcome dftt_pvalue(const SpectrumResult& half_spectrum, const DfttVariant& variant);

} // namespace spectest
