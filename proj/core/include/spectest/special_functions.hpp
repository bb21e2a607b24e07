#pragma once

#include <stdexcept>

namespace spectest {

/// A probability value, guaranteed to lie in [0, 1].
///
/// Construction clamps only floating-point underflow artifacts within 1e-15
/// of the valid range; anything farther out is a logic error and throws.
class Probability {
public:
    Probability() = default;
    explicit Probability(double v);

    double value() const noexcept { return v_; }

    bool operator==(const Probability&) const = default;

private:
    double v_ = 0.0;
};

/// Complementary error function. Absolute error below 1e-14 across the
/// range used here (|z| <= 10). Throws on non-finite input.
double erfc(double z);

/// Survival function of the chi-squared distribution with `dof` degrees of
/// freedom: P(X > stat), computed as the regularized upper incomplete gamma
/// Q(dof/2, stat/2). Series branch below dof + 1, continued fraction above.
Probability chi2_sf(double stat, unsigned dof);

/// Standard normal CDF (trivial erfc wrapper).
double normal_cdf(double z);

/// Two-sided p-value of a standard-normal-referenced statistic:
/// erfc(|z| / sqrt(2)).
Probability two_sided_normal_pvalue(double z);

} // namespace spectest
