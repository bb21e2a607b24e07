#include "spectest/second_level.hpp"

#include <cmath>

namespace spectest {

namespace {

void require_nonempty(std::span<const double> pvalues, const char* who) {
    if (pvalues.empty()) {
        throw std::invalid_argument(std::string(who) + ": empty p-value set");
    }
    for (double p : pvalues) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument(std::string(who) + ": p-value outside [0,1]");
        }
    }
}

} // namespace

ProportionResult proportion_test(std::span<const double> pvalues) {
    require_nonempty(pvalues, "proportion_test");
    const double m = static_cast<double>(pvalues.size());
    std::size_t r = 0;
    for (double p : pvalues) {
        if (p > 0.01) ++r; // strict: p == 0.01 does not count
    }
    const double dev = std::abs(static_cast<double>(r) - 0.99 * m);
    const double bound = 3.0 * std::sqrt(m * 0.99 * 0.01);
    return ProportionResult{r, dev < bound}; // a deviation equal to the bound rejects
}

UniformityResult uniformity_test(std::span<const double> pvalues) {
    require_nonempty(pvalues, "uniformity_test");
    UniformityResult result;
    for (double p : pvalues) {
        // Bins [0,0.1), ..., [0.9,1.0]; p = 1.0 falls in the last bin.
        auto bin = static_cast<std::size_t>(p * 10.0);
        if (bin > 9) bin = 9;
        ++result.bin_counts[bin];
    }
    const double expected = static_cast<double>(pvalues.size()) / 10.0;
    double chi2 = 0.0;
    for (std::size_t count : result.bin_counts) {
        const double diff = static_cast<double>(count) - expected;
        chi2 += diff * diff / expected;
    }
    result.chi2 = chi2;
    result.p_uniform = chi2_sf(chi2, 9);
    result.pass = result.p_uniform.value() > 0.0001;
    return result;
}

Probability meta_uniformity(std::span<const double> p_uniform_values) {
    if (p_uniform_values.size() < 10) {
        throw std::invalid_argument("meta_uniformity: need at least 10 p_uniform values");
    }
    return uniformity_test(p_uniform_values).p_uniform;
}

SecondLevelReport second_level(std::span<const double> pvalues) {
    const ProportionResult prop = proportion_test(pvalues);
    const UniformityResult unif = uniformity_test(pvalues);
    SecondLevelReport report;
    report.M = pvalues.size();
    report.r = prop.r;
    report.proportion_pass = prop.pass;
    report.chi2_stat = unif.chi2;
    report.p_uniform = unif.p_uniform;
    report.uniformity_pass = unif.pass;
    report.bin_counts = unif.bin_counts;
    return report;
}

} // namespace spectest
