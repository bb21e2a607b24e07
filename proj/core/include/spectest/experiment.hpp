#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "spectest/generators.hpp"
#include "spectest/outcome.hpp"
#include "spectest/second_level.hpp"

namespace spectest {

/// Declarative description of one experiment run. A run is fully
/// determined by this struct: reports are bitwise reproducible, and the
/// worker count must not (and does not) affect any output byte.
struct ExperimentConfig {
    std::vector<TestKind> variants{TestKind::Kim, TestKind::Pareschi, TestKind::Proposed};
    std::size_t n = 10000;              ///< bits per sequence (even)
    std::size_t sequences_per_set = 1000; ///< M
    std::size_t sets = 20;
    GeneratorSpec generator;
    std::vector<std::size_t> defect_periods; ///< non-empty => detection sweep over T
    unsigned workers = 0;               ///< 0 = hardware concurrency
    bool record_hashes = false;         ///< keep per-sequence hashes for fairness checks
};

/// One CSV row: second-level verdicts of one variant on one set.
struct SetResult {
    std::optional<std::size_t> period; ///< T, present in sweep runs
    std::size_t set_id = 0;
    TestKind variant = TestKind::Proposed;
    std::size_t n = 0;
    std::size_t M = 0;
    SecondLevelReport second_level;
};

/// Aggregates per variant (per period in sweep runs).
struct VariantSummary {
    std::optional<std::size_t> period;
    TestKind variant = TestKind::Proposed;
    std::size_t pvalues_below_001 = 0;       ///< #{p < 0.01} across all sequences
    std::size_t sets_rejected_proportion = 0;
    std::size_t sets_rejected_uniformity = 0;
    std::size_t sets_rejected_total = 0;     ///< rejected by at least one criterion
    std::optional<double> meta_p_uniform;    ///< uniformity test over per-set p_uniform (sets >= 10)
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<SetResult> rows;        ///< ordered by (period, set, variant)
    std::vector<VariantSummary> summaries;
    std::vector<std::uint64_t> sequence_hashes; ///< only when config.record_hashes
};

/// Type-1-error style run: `sets` sets of M sequences, every selected
/// variant evaluated on the same sequences (one shared transform per
/// sequence), both second-level tests per set.
ExperimentReport run_batch(const ExperimentConfig& config);

/// Detection-power sweep: for each T in config.defect_periods, generate
/// fresh sets, overwrite every sequence with the periodic defect, and run
/// the same machinery. Sequence seeds continue across periods so the whole
/// sweep is one deterministic schedule.
ExperimentReport run_detection_sweep(const ExperimentConfig& config);

/// Sorted scaled-statistic sample with empirical and standard normal CDF
/// columns, plus the Kolmogorov-Smirnov distance between them.
struct CdfTable {
    std::size_t n = 0;
    std::vector<double> v_tilde;   ///< ascending
    std::vector<double> empirical; ///< i/samples
    std::vector<double> normal;    ///< Phi(v_tilde)
    double ks = 0.0;
};

CdfTable empirical_cdf(std::size_t n, std::size_t samples, const GeneratorSpec& generator,
                       unsigned workers = 0);

/// CSV row schema: set_id,variant,n,M,r,proportion_pass,chi2,p_uniform,
/// uniformity_pass, with a trailing T column in sweep runs. Byte-stable.
void write_csv(const ExperimentReport& report, std::ostream& out);
void write_json(const ExperimentReport& report, std::ostream& out);
void write_csv(const CdfTable& table, std::ostream& out);

/// Evaluates the selected variants on one sequence, sharing a single
/// half-spectrum transform. Even n >= 4.
std::vector<TestOutcome> evaluate_sequence(const BitSequence& x,
                                           std::span<const TestKind> variants);

} // namespace spectest
