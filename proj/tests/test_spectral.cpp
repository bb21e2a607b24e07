#include <doctest.h>

#include <cmath>
#include <random>

#include "spectest/spectral.hpp"

using namespace spectest;

namespace {

PmSequence pm(std::initializer_list<int> values) {
    std::vector<std::int8_t> v;
    for (int x : values) v.push_back(static_cast<std::int8_t>(x));
    return PmSequence(std::move(v));
}

PmSequence random_pm(std::mt19937& gen, std::size_t n) {
    std::vector<std::int8_t> v(n);
    for (auto& x : v) x = (gen() & 1) ? 1 : -1;
    return PmSequence(std::move(v));
}

void check_close(const std::vector<double>& got, const std::vector<double>& want, double rel) {
    REQUIRE(got.size() == want.size());
    for (std::size_t j = 0; j < got.size(); ++j) {
        const double tol = rel * std::max(1.0, std::abs(want[j]));
        CHECK(std::abs(got[j] - want[j]) <= tol);
    }
}

} // namespace

TEST_CASE("dft_power on hand-evaluated signals") {
    check_close(dft_power(pm({1, 1, 1, 1}), false).mag2, {16, 0, 0, 0}, 1e-12);
    check_close(dft_power(pm({1, -1, 1, -1}), false).mag2, {0, 0, 16, 0}, 1e-12);
    check_close(dft_power(pm({1, 1, -1, -1}), false).mag2, {0, 8, 0, 8}, 1e-12);
}

TEST_CASE("dft_power_direct tiny cases") {
    check_close(dft_power_direct(pm({1, 1})).mag2, {4, 0}, 1e-12);
    check_close(dft_power_direct(pm({1, -1})).mag2, {0, 4}, 1e-12);
}

TEST_CASE("fast transform agrees with the direct oracle") {
    std::mt19937 gen(42);
    // 100 random lengths across [3, 257], primes included by construction.
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 3 + gen() % 255;
        const PmSequence x = random_pm(gen, n);
        const auto fast = dft_power(x, false);
        const auto direct = dft_power_direct(x);
        check_close(fast.mag2, direct.mag2, 1e-9);
    }
    // A few heavier lengths, power-of-two and not.
    for (std::size_t n : {512ul, 1000ul, 1024ul, 2047ul, 4096ul}) {
        const PmSequence x = random_pm(gen, n);
        check_close(dft_power(x, false).mag2, dft_power_direct(x).mag2, 1e-9);
    }
}

TEST_CASE("Parseval and conjugate symmetry") {
    std::mt19937 gen(99);
    for (std::size_t n : {2ul, 3ul, 5ul, 7ul, 16ul, 97ul, 100ul, 255ul, 256ul, 641ul, 1024ul}) {
        const PmSequence x = random_pm(gen, n);
        const auto spec = dft_power(x, false);
        double sum = 0.0;
        for (double m2 : spec.mag2) sum += m2;
        const double n2 = static_cast<double>(n) * static_cast<double>(n);
        CHECK(std::abs(sum - n2) <= 1e-9 * n2);
        for (std::size_t j = 1; j < n; ++j) {
            const double a = spec.mag2[j];
            const double b = spec.mag2[n - j];
            CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
        }
    }
}

TEST_CASE("half spectrum is the first n/2 bins") {
    std::mt19937 gen(3);
    for (std::size_t n : {4ul, 10ul, 100ul, 256ul}) {
        const PmSequence x = random_pm(gen, n);
        const auto full = dft_power(x, false);
        const auto half = dft_power(x, true);
        REQUIRE(half.mag2.size() == n / 2);
        CHECK(half.half);
        for (std::size_t j = 0; j < n / 2; ++j) {
            CHECK(half.mag2[j] == doctest::Approx(full.mag2[j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("dft_power preconditions") {
    std::mt19937 gen(5);
    CHECK_THROWS_AS(dft_power(random_pm(gen, 5), true), std::invalid_argument);
    CHECK_THROWS_AS(dft_power(pm({1}), false), std::invalid_argument);
    CHECK_THROWS_AS(dft_power_direct(random_pm(gen, (1u << 14) + 2)), std::invalid_argument);
}
