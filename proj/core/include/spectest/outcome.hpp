#pragma once

#include <cstddef>
#include <stdexcept>
#include <string_view>

#include "spectest/special_functions.hpp"

namespace spectest {

/// The four spectral tests this library implements.
enum class TestKind { Original, Kim, Pareschi, Proposed };

std::string_view to_string(TestKind kind);
TestKind test_kind_from_string(std::string_view name);

/// One test applied to one sequence: the standardized statistic (d for the
/// threshold-count family, the scaled spectrum variance for Proposed) and
/// its p-value erfc(|statistic| / sqrt(2)).
struct TestOutcome {
    TestKind variant = TestKind::Proposed;
    std::size_t n = 0;
    double statistic = 0.0;
    Probability pvalue;
};

} // namespace spectest
