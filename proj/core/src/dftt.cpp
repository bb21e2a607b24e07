#include "spectest/dftt.hpp"

#include <cmath>

namespace spectest {

double DfttVariant::threshold(std::size_t n) const {
    const double nn = static_cast<double>(n);
    if (kind == TestKind::Original) {
        return std::sqrt(3.0 * nn);
    }
    // Natural log: this is the unique base for which a chi2(2)-distributed
    // bin magnitude exceeds the threshold with probability exactly 0.05.
    return std::sqrt(-nn * std::log(0.05));
}

DfttVariant DfttVariant::original() { return {TestKind::Original, 2.0}; }
DfttVariant DfttVariant::kim() { return {TestKind::Kim, 4.0}; }
DfttVariant DfttVariant::pareschi() { return {TestKind::Pareschi, 3.8}; }

DfttVariant DfttVariant::for_kind(TestKind kind) {
    switch (kind) {
        case TestKind::Original: return original();
        case TestKind::Kim: return kim();
        case TestKind::Pareschi: return pareschi();
        case TestKind::Proposed: break;
    }
    throw std::invalid_argument("DfttVariant::for_kind: not a threshold-count test");
}

std::size_t count_below_threshold(const SpectrumResult& half_spectrum, double threshold) {
    if (!half_spectrum.half) {
        throw std::invalid_argument("count_below_threshold: full spectrum passed, expected half");
    }
    if (!(threshold > 0.0)) {
        throw std::invalid_argument("count_below_threshold: threshold must be positive");
    }
    const double t2 = threshold * threshold;
    std::size_t count = 0;
    for (double m2 : half_spectrum.mag2) {
        if (m2 < t2) ++count;
    }
    return count;
}

TestOutcome dftt_pvalue(const SpectrumResult& half_spectrum, const DfttVariant& variant) {
    if (!half_spectrum.half) {
        throw std::invalid_argument("dftt_pvalue: full spectrum passed, expected half");
    }
    const std::size_t n = half_spectrum.n;
    const double n1 = static_cast<double>(count_below_threshold(half_spectrum, variant.threshold(n)));
    const double nn = static_cast<double>(n);
    const double d = (n1 - 0.95 * nn / 2.0) / std::sqrt(0.95 * 0.05 * nn / variant.divisor);
    return TestOutcome{variant.kind, n, d, two_sided_normal_pvalue(d)};
}

TestOutcome dftt_pvalue(const BitSequence& x, const DfttVariant& variant) {
    if (x.size() % 2 != 0 || x.size() < 2) {
        throw std::invalid_argument("dftt_pvalue: requires even n >= 2");
    }
    return dftt_pvalue(dft_power(to_pm1(x), /*half=*/true), variant);
}

} // namespace spectest
