#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "spectest/dftt.hpp"
#include "spectest/generators.hpp"

using namespace spectest;

namespace {

// A half spectrum with a prescribed below-threshold count, for exercising
// the d / p-value arithmetic without a transform.
SpectrumResult synthetic_half(std::size_t n, std::size_t n1, double threshold) {
    SpectrumResult spec;
    spec.n = n;
    spec.half = true;
    spec.mag2.assign(n / 2, threshold * threshold * 4.0); // safely above
    for (std::size_t j = 0; j < n1; ++j) spec.mag2[j] = 0.0;
    return spec;
}

} // namespace

TEST_CASE("variant parameters") {
    CHECK(DfttVariant::original().divisor == 2.0);
    CHECK(DfttVariant::kim().divisor == 4.0);
    CHECK(DfttVariant::pareschi().divisor == 3.8);
    CHECK(DfttVariant::original().threshold(100) == doctest::Approx(std::sqrt(300.0)));

    // Kim threshold stays numerically near sqrt(3n): t^2/n in (2.99, 3.00).
    for (std::size_t n : {1000ul, 1000000ul}) {
        const double t = DfttVariant::kim().threshold(n);
        const double ratio = t * t / static_cast<double>(n);
        CHECK(ratio > 2.99);
        CHECK(ratio < 3.00);
        CHECK(DfttVariant::pareschi().threshold(n) == doctest::Approx(t));
    }
    CHECK_THROWS_AS(DfttVariant::for_kind(TestKind::Proposed), std::invalid_argument);
}

TEST_CASE("count_below_threshold") {
    // x = (1,1,1,1): half spectrum (16, 0); only |S_1| = 0 is below sqrt(12).
    const auto half = dft_power(to_pm1(BitSequence::from_bits(std::vector<int>{1, 1, 1, 1})), true);
    REQUIRE(half.mag2.size() == 2);
    CHECK(count_below_threshold(half, std::sqrt(12.0)) == 1);
    CHECK(count_below_threshold(half, 1e9) == 2); // threshold -> inf counts all bins

    // Ties count as not-below.
    SpectrumResult tie;
    tie.n = 4;
    tie.half = true;
    tie.mag2 = {9.0, 4.0};
    CHECK(count_below_threshold(tie, 3.0) == 1);

    // Independent re-count on a random sequence.
    const BitSequence x = mt19937_bits(2024, 128);
    const auto spec = dft_power(to_pm1(x), true);
    const double thr = DfttVariant::kim().threshold(128);
    std::size_t manual = 0;
    for (double m2 : spec.mag2) {
        if (std::sqrt(m2) < thr) ++manual;
    }
    CHECK(count_below_threshold(spec, thr) == manual);

    const auto full = dft_power(to_pm1(x), false);
    CHECK_THROWS_AS(count_below_threshold(full, thr), std::invalid_argument);
}

TEST_CASE("dftt_pvalue oracle values") {
    // N1 = 0.95 * n/2 exactly => d = 0, p = 1 for every variant.
    {
        const auto spec = synthetic_half(1000, 475, DfttVariant::kim().threshold(1000));
        for (auto v : {DfttVariant::original(), DfttVariant::kim(), DfttVariant::pareschi()}) {
            // Original's threshold differs, so fix the count by construction:
            const auto s = synthetic_half(1000, 475, v.threshold(1000));
            const auto outcome = dftt_pvalue(s, v);
            CHECK(outcome.statistic == doctest::Approx(0.0));
            CHECK(outcome.pvalue.value() == doctest::Approx(1.0));
        }
        (void)spec;
    }

    // n = 1000, N1 = 480; frozen from the arbitrary-precision oracle.
    {
        const auto kim = dftt_pvalue(synthetic_half(1000, 480, DfttVariant::kim().threshold(1000)),
                                     DfttVariant::kim());
        CHECK(kim.statistic == doctest::Approx(1.45095250022002334).epsilon(1e-12));
        CHECK(kim.pvalue.value() == doctest::Approx(0.146793087308570954).epsilon(1e-9));

        const auto pareschi = dftt_pvalue(
            synthetic_half(1000, 480, DfttVariant::pareschi().threshold(1000)), DfttVariant::pareschi());
        CHECK(pareschi.statistic == doctest::Approx(1.41421356237309505).epsilon(1e-12));
        CHECK(pareschi.pvalue.value() == doctest::Approx(0.157299207050285131).epsilon(1e-9));

        const auto original = dftt_pvalue(
            synthetic_half(1000, 480, DfttVariant::original().threshold(1000)), DfttVariant::original());
        CHECK(original.statistic == doctest::Approx(1.02597835208515410).epsilon(1e-12));
        CHECK(original.pvalue.value() == doctest::Approx(0.304901788178788330).epsilon(1e-9));
    }
}

TEST_CASE("variant ordering |d_O| <= |d_P| <= |d_K|") {
    for (std::uint32_t seed = 0; seed < 20; ++seed) {
        const BitSequence x = mt19937_bits(seed, 256);
        const auto spec = dft_power(to_pm1(x), true);
        const auto o = dftt_pvalue(spec, DfttVariant::original());
        const auto p = dftt_pvalue(spec, DfttVariant::pareschi());
        const auto k = dftt_pvalue(spec, DfttVariant::kim());
        // Original and Kim/Pareschi use different thresholds, hence possibly
        // different N1; the ordering claim holds when N1 agrees, which it
        // does here because the thresholds are numerically so close. Guard
        // anyway by comparing only when the deviations share a sign.
        CHECK(std::abs(p.statistic) <= std::abs(k.statistic) + 1e-12);
        CHECK(p.pvalue.value() >= k.pvalue.value() - 1e-12);
        if ((o.statistic >= 0) == (p.statistic >= 0)) {
            CHECK(o.pvalue.value() >= p.pvalue.value() - 1e-9);
        }
    }
}

TEST_CASE("p-value invariant under bin permutation") {
    const BitSequence x = mt19937_bits(77, 512);
    auto spec = dft_power(to_pm1(x), true);
    const auto before = dftt_pvalue(spec, DfttVariant::kim());
    std::mt19937 gen(1);
    std::shuffle(spec.mag2.begin(), spec.mag2.end(), gen);
    const auto after = dftt_pvalue(spec, DfttVariant::kim());
    CHECK(before.statistic == doctest::Approx(after.statistic));
    CHECK(before.pvalue.value() == doctest::Approx(after.pvalue.value()));
}

TEST_CASE("dftt_pvalue rejects odd n") {
    const BitSequence odd = mt19937_bits(1, 9);
    CHECK_THROWS_AS(dftt_pvalue(odd, DfttVariant::kim()), std::invalid_argument);
}
