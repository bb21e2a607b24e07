#include "spectest/special_functions.hpp"

#include <cmath>
#include <string>

namespace spectest {

Probability::Probability(double v) {
    // Tolerate float underflow artifacts just outside [0,1]; reject real
    // out-of-range values loudly.
    if (v < 0.0) {
        if (v < -1e-15) {
            throw std::invalid_argument("Probability: value " + std::to_string(v) + " below 0");
        }
        v = 0.0;
    } else if (v > 1.0) {
        if (v > 1.0 + 1e-15) {
            throw std::invalid_argument("Probability: value " + std::to_string(v) + " above 1");
        }
        v = 1.0;
    }
    v_ = v;
}

double erfc(double z) {
    if (!std::isfinite(z)) {
        throw std::invalid_argument("erfc: non-finite input");
    }
    return std::erfc(z);
}

namespace {

// Regularized incomplete gamma P(a,x) by power series, Q(a,x) by Lentz
// continued fraction; the usual split at x = a + 1.
// https://en.wikipedia.org/wiki/Incomplete_gamma_function

double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 10000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-17) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / (b == 0.0 ? tiny : b);
    double h = d;
    for (int k = 1; k < 10000; ++k) {
        const double an = -static_cast<double>(k) * (static_cast<double>(k) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

Probability chi2_sf(double stat, unsigned dof) {
    if (!(stat >= 0.0)) {
        throw std::invalid_argument("chi2_sf: statistic must be non-negative");
    }
    if (dof == 0) {
        throw std::invalid_argument("chi2_sf: dof must be positive");
    }
    const double a = 0.5 * static_cast<double>(dof);
    const double x = 0.5 * stat;
    if (x == 0.0) return Probability(1.0);
    const double q = (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
    return Probability(q);
}

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

Probability two_sided_normal_pvalue(double z) {
    if (!std::isfinite(z)) {
        throw std::invalid_argument("two_sided_normal_pvalue: non-finite statistic");
    }
    return Probability(std::erfc(std::abs(z) / std::sqrt(2.0)));
}

} // namespace spectest
