#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "spectest/special_functions.hpp"

namespace spectest {

struct ProportionResult {
    std::size_t r = 0; ///< number of p-values strictly greater than 0.01
    bool pass = false; ///< |r - 0.99 M| < 3 sqrt(0.99 * 0.01 * M)
};

struct UniformityResult {
    double chi2 = 0.0;
    Probability p_uniform;
    bool pass = false; ///< p_uniform > 0.0001 (strict)
    std::array<std::size_t, 10> bin_counts{};
};

/// Verdicts of both second-level tests over one set of M p-values.
struct SecondLevelReport {
    std::size_t M = 0;
    std::size_t r = 0;
    bool proportion_pass = false;
    double chi2_stat = 0.0;
    Probability p_uniform;
    bool uniformity_pass = false;
    std::array<std::size_t, 10> bin_counts{};
};

/// Proportion test: r = #{p_i > 0.01}; pass iff |r - 0.99M| < 3 sigma with
/// the exact binomial sigma = sqrt(M * 0.99 * 0.01). A deviation equal to
/// 3 sigma rejects. M >= 1.
ProportionResult proportion_test(std::span<const double> pvalues);

/// Uniformity test: 10 bins [0,0.1), ..., [0.9,1.0] (last bin closed),
/// chi2 = sum (F_i - M/10)^2 / (M/10), p_uniform = chi2_sf(chi2, 9),
/// pass iff p_uniform > 0.0001. M >= 1 (M >= 10 is the sensible regime).
UniformityResult uniformity_test(std::span<const double> pvalues);

/// The uniformity machinery applied to a collection of per-set p_uniform
/// values. Requires at least 10 values.
Probability meta_uniformity(std::span<const double> p_uniform_values);

/// Both tests on one set.
SecondLevelReport second_level(std::span<const double> pvalues);

} // namespace spectest
