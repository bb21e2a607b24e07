#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "spectest/second_level.hpp"

using namespace spectest;

namespace {

// M p-values with the given 10-bin occupancy, placed at bin midpoints.
std::vector<double> from_bin_counts(const std::vector<std::size_t>& counts) {
    std::vector<double> p;
    for (std::size_t bin = 0; bin < counts.size(); ++bin) {
        for (std::size_t k = 0; k < counts[bin]; ++k) {
            p.push_back(0.05 + 0.1 * static_cast<double>(bin));
        }
    }
    return p;
}

} // namespace

TEST_CASE("proportion test bounds") {
    // M = 1000: bound is 3*sqrt(9.9) = 9.4393; centered r passes.
    std::vector<double> p(1000, 0.5);
    {
        std::fill(p.begin(), p.begin() + 10, 0.001); // r = 990, deviation 0
        const auto res = proportion_test(p);
        CHECK(res.r == 990);
        CHECK(res.pass);
    }
    {
        std::fill(p.begin(), p.begin() + 20, 0.001); // r = 980, deviation 10 >= 9.4393
        const auto res = proportion_test(p);
        CHECK(res.r == 980);
        CHECK_FALSE(res.pass);
    }
    {
        std::fill(p.begin(), p.end(), 0.5); // r = 1000: an all-pass set is rejected
        const auto res = proportion_test(p);
        CHECK(res.r == 1000);
        CHECK_FALSE(res.pass);
    }
    // M = 100: bound 2.98496; deviation 2 passes, 3 rejects.
    {
        std::vector<double> q(100, 0.5);
        std::fill(q.begin(), q.begin() + 3, 0.001); // r = 97, |97 - 99| = 2
        CHECK(proportion_test(q).pass);
        std::fill(q.begin(), q.begin() + 4, 0.001); // r = 96, |96 - 99| = 3 > 2.98496
        CHECK_FALSE(proportion_test(q).pass);
    }
    CHECK_THROWS_AS(proportion_test(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("p-value exactly 0.01 is not greater than 0.01") {
    std::vector<double> p(10, 0.5);
    p[0] = 0.01;
    CHECK(proportion_test(p).r == 9);
}

TEST_CASE("uniformity test") {
    {
        const auto res = uniformity_test(from_bin_counts({100, 100, 100, 100, 100, 100, 100, 100, 100, 100}));
        CHECK(res.chi2 == doctest::Approx(0.0));
        CHECK(res.p_uniform.value() == doctest::Approx(1.0));
        CHECK(res.pass);
    }
    {
        // Everything in the first bin: chi2 = (900^2 + 9*100^2)/100 = 9000.
        const auto res = uniformity_test(std::vector<double>(1000, 0.005));
        CHECK(res.chi2 == doctest::Approx(9000.0));
        CHECK(res.p_uniform.value() < 1e-100);
        CHECK_FALSE(res.pass);
        CHECK(res.bin_counts[0] == 1000);
    }
    {
        const auto res =
            uniformity_test(from_bin_counts({110, 95, 105, 90, 100, 100, 95, 105, 100, 100}));
        CHECK(res.chi2 == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(res.p_uniform.value() == doctest::Approx(0.964294972685089).epsilon(1e-9));
        CHECK(res.pass);
    }
    CHECK_THROWS_AS(uniformity_test(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("bin edges: half-open with the last bin closed") {
    const std::vector<double> p = {0.0, 0.0999999, 0.1, 0.95, 1.0};
    const auto res = uniformity_test(p);
    CHECK(res.bin_counts[0] == 2);
    CHECK(res.bin_counts[1] == 1);
    CHECK(res.bin_counts[9] == 2); // p = 1.0 counted in the last bin
    std::size_t total = 0;
    for (auto c : res.bin_counts) total += c;
    CHECK(total == p.size());
}

TEST_CASE("meta uniformity") {
    // Evenly striped values are perfectly uniform.
    std::vector<double> striped;
    for (int rep = 0; rep < 100; ++rep) {
        for (int bin = 0; bin < 10; ++bin) striped.push_back(0.05 + 0.1 * bin);
    }
    CHECK(meta_uniformity(striped).value() == doctest::Approx(1.0));

    // A stack of near-zero p_uniform values collapses to ~0.
    CHECK(meta_uniformity(std::vector<double>(20, 1e-5)).value() < 1e-6);

    CHECK_THROWS_AS(meta_uniformity(std::vector<double>(9, 0.5)), std::invalid_argument);
}

TEST_CASE("permutation invariance") {
    std::mt19937 gen(555);
    std::vector<double> p(500);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (auto& v : p) v = unif(gen);
    const auto before = second_level(p);
    std::shuffle(p.begin(), p.end(), gen);
    const auto after = second_level(p);
    CHECK(before.r == after.r);
    CHECK(before.chi2_stat == doctest::Approx(after.chi2_stat));
    CHECK(before.proportion_pass == after.proportion_pass);
    CHECK(before.uniformity_pass == after.uniformity_pass);
    CHECK(before.bin_counts == after.bin_counts);
}

TEST_CASE("false-positive rate on ideal uniform p-values") {
    std::mt19937 gen(20240601);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int prop_rejects = 0;
    std::vector<double> meta;
    for (int set = 0; set < 500; ++set) {
        std::vector<double> p(1000);
        for (auto& v : p) v = unif(gen);
        const auto report = second_level(p);
        if (!report.proportion_pass) ++prop_rejects;
        meta.push_back(report.p_uniform.value());
    }
    CHECK(prop_rejects <= 10); // empirically ~0.2%/set; 2% of 500 as the bar
    CHECK(meta_uniformity(meta).value() > 0.0001);
}
