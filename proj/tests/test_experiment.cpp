#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "spectest/dftt.hpp"
#include "spectest/experiment.hpp"
#include "spectest/vtest.hpp"

using namespace spectest;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig config;
    config.variants = {TestKind::Original, TestKind::Kim, TestKind::Pareschi, TestKind::Proposed};
    config.n = 1000;
    config.sequences_per_set = 50;
    config.sets = 3;
    config.generator.kind = GeneratorSpec::Kind::Mt19937;
    config.generator.seed = 123;
    config.workers = 1;
    return config;
}

} // namespace

TEST_CASE("evaluate_sequence shares one spectrum across variants") {
    const BitSequence x = mt19937_bits(31337, 2048);
    const TestKind kinds[] = {TestKind::Original, TestKind::Kim, TestKind::Pareschi,
                              TestKind::Proposed};
    const auto outcomes = evaluate_sequence(x, kinds);
    REQUIRE(outcomes.size() == 4);
    CHECK(outcomes[0].pvalue.value() ==
          doctest::Approx(dftt_pvalue(x, DfttVariant::original()).pvalue.value()));
    CHECK(outcomes[1].pvalue.value() ==
          doctest::Approx(dftt_pvalue(x, DfttVariant::kim()).pvalue.value()));
    CHECK(outcomes[2].pvalue.value() ==
          doctest::Approx(dftt_pvalue(x, DfttVariant::pareschi()).pvalue.value()));
    CHECK(outcomes[3].pvalue.value() == doctest::Approx(vtest_pvalue(x).pvalue.value()));

    CHECK_THROWS_AS(evaluate_sequence(mt19937_bits(1, 9), kinds), std::invalid_argument);
}

TEST_CASE("run_batch shape and aggregation") {
    const auto report = run_batch(small_config());
    REQUIRE(report.rows.size() == 3 * 4);
    REQUIRE(report.summaries.size() == 4);

    // Rows ordered by (set, variant-as-configured).
    CHECK(report.rows[0].set_id == 0);
    CHECK(report.rows[0].variant == TestKind::Original);
    CHECK(report.rows[5].set_id == 1);
    CHECK(report.rows[5].variant == TestKind::Kim);

    for (const auto& row : report.rows) {
        CHECK(row.M == 50);
        CHECK(row.second_level.r <= row.M);
        std::size_t total = 0;
        for (auto c : row.second_level.bin_counts) total += c;
        CHECK(total == row.M);
        CHECK_FALSE(row.period.has_value());
    }
    for (const auto& summary : report.summaries) {
        CHECK(summary.sets_rejected_total >=
              std::max(summary.sets_rejected_proportion, summary.sets_rejected_uniformity));
        CHECK(summary.sets_rejected_total <=
              summary.sets_rejected_proportion + summary.sets_rejected_uniformity);
        CHECK_FALSE(summary.meta_p_uniform.has_value()); // only 3 sets
    }
}

TEST_CASE("worker count never changes the report bytes") {
    auto config = small_config();
    config.workers = 1;
    const auto serial = run_batch(config);
    config.workers = 8;
    const auto parallel = run_batch(config);

    std::ostringstream csv_serial, csv_parallel, json_serial, json_parallel;
    write_csv(serial, csv_serial);
    write_csv(parallel, csv_parallel);
    write_json(serial, json_serial);
    write_json(parallel, json_parallel);
    CHECK(csv_serial.str() == csv_parallel.str());
    CHECK(json_serial.str() == json_parallel.str());
}

TEST_CASE("every variant consumes the same sequences") {
    auto config = small_config();
    config.record_hashes = true;
    config.variants = {TestKind::Kim};
    const auto kim_only = run_batch(config);
    config.variants = {TestKind::Proposed};
    const auto proposed_only = run_batch(config);
    REQUIRE(kim_only.sequence_hashes.size() == 150);
    CHECK(kim_only.sequence_hashes == proposed_only.sequence_hashes);
}

TEST_CASE("csv format") {
    auto config = small_config();
    config.variants = {TestKind::Kim};
    config.sets = 2;
    const auto report = run_batch(config);
    std::ostringstream out;
    write_csv(report, out);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "set_id,variant,n,M,r,proportion_pass,chi2,p_uniform,uniformity_pass");
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(line.find("kim") != std::string::npos);
        // fixed 6-decimal notation, never scientific
        CHECK(line.find('e') == std::string::npos);
    }
    CHECK(rows == 2);
}

TEST_CASE("json mirrors the csv fields") {
    auto config = small_config();
    config.sets = 2;
    config.variants = {TestKind::Kim, TestKind::Proposed};
    const auto report = run_batch(config);
    std::ostringstream out;
    write_json(report, out);
    const auto root = nlohmann::json::parse(out.str());
    CHECK(root["config"]["n"] == 1000);
    CHECK(root["config"]["generator"] == "mt");
    REQUIRE(root["rows"].size() == 4);
    CHECK(root["rows"][0]["variant"] == "kim");
    CHECK(root["rows"][1]["variant"] == "proposed");
    CHECK(root["rows"][0].contains("p_uniform"));
    REQUIRE(root["summaries"].size() == 2);
    CHECK(root["summaries"][0].contains("pvalues_below_001"));
}

TEST_CASE("detection sweep") {
    ExperimentConfig config;
    config.variants = {TestKind::Kim, TestKind::Proposed};
    config.n = 1000;
    config.sequences_per_set = 30;
    config.sets = 2;
    config.generator.seed = 7;
    config.workers = 2;
    config.defect_periods = {1, 5};
    const auto report = run_detection_sweep(config);

    REQUIRE(report.rows.size() == 2 * 2 * 2); // periods x sets x variants
    CHECK(report.rows.front().period == 1);
    CHECK(report.rows.back().period == 5);
    REQUIRE(report.summaries.size() == 4);

    // T=1 overwrites the whole sequence with a period-2 comb; every set is
    // caught by the uniformity criterion for every variant.
    for (const auto& summary : report.summaries) {
        if (summary.period == 1) {
            CHECK(summary.sets_rejected_total == 2);
        }
    }

    std::ostringstream out;
    write_csv(report, out);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "set_id,variant,n,M,r,proportion_pass,chi2,p_uniform,uniformity_pass,T");
}

TEST_CASE("config validation") {
    auto config = small_config();
    config.n = 999;
    CHECK_THROWS_AS(run_batch(config), std::invalid_argument);
    config = small_config();
    config.variants.clear();
    CHECK_THROWS_AS(run_batch(config), std::invalid_argument);
    config = small_config();
    config.variants = {TestKind::Kim, TestKind::Kim};
    CHECK_THROWS_AS(run_batch(config), std::invalid_argument);
    config = small_config();
    CHECK_THROWS_AS(run_detection_sweep(config), std::invalid_argument); // no periods
    config.defect_periods = {600};
    CHECK_THROWS_AS(run_detection_sweep(config), std::invalid_argument); // 2T > n
}

TEST_CASE("empirical cdf") {
    GeneratorSpec gen;
    gen.seed = 99;

    const CdfTable one = empirical_cdf(1000, 1, gen);
    REQUIRE(one.v_tilde.size() == 1);
    CHECK(one.empirical[0] == doctest::Approx(1.0));

    const CdfTable table = empirical_cdf(1000, 400, gen, 2);
    REQUIRE(table.v_tilde.size() == 400);
    CHECK(std::is_sorted(table.v_tilde.begin(), table.v_tilde.end()));
    CHECK(table.ks > 0.0);
    CHECK(table.ks < 0.2);
    for (std::size_t i = 1; i < table.normal.size(); ++i) {
        CHECK(table.normal[i] >= table.normal[i - 1]);
    }

    const CdfTable serial = empirical_cdf(1000, 400, gen, 1);
    std::ostringstream a, b;
    write_csv(table, a);
    write_csv(serial, b);
    CHECK(a.str() == b.str());

    std::istringstream lines(a.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("# n=1000 samples=400 ks=", 0) == 0);
    std::getline(lines, line);
    CHECK(line == "v_tilde,empirical_cdf,normal_cdf");
}
