#pragma once

#include <cmath>

namespace spectest::detail {

/// Neumaier compensated accumulator: error-free to first order even when
/// summands exceed the running sum.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + comp; }
};

} // namespace spectest::detail
