#include "spectest/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <mutex>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "spectest/dftt.hpp"
#include "spectest/vtest.hpp"

namespace spectest {

namespace {

unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs fn(0..total) on a worker pool. Every index writes only its own
/// output slot, so scheduling order cannot influence results.
template <typename Fn>
void parallel_for(std::size_t total, unsigned workers, Fn&& fn) {
    workers = std::min<std::size_t>(resolve_workers(workers), total);
    if (workers <= 1) {
        for (std::size_t i = 0; i < total; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= total) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    pool.clear(); // join
    if (error) std::rethrow_exception(error);
}

void validate(const ExperimentConfig& config, bool sweep) {
    if (config.variants.empty()) {
        throw std::invalid_argument("experiment: at least one test variant required");
    }
    if (config.n < 4 || config.n % 2 != 0) {
        throw std::invalid_argument("experiment: sequence length must be even and at least 4");
    }
    if (config.sequences_per_set == 0 || config.sets == 0) {
        throw std::invalid_argument("experiment: sets and sequences per set must be at least 1");
    }
    for (std::size_t i = 0; i < config.variants.size(); ++i) {
        for (std::size_t j = i + 1; j < config.variants.size(); ++j) {
            if (config.variants[i] == config.variants[j]) {
                throw std::invalid_argument("experiment: duplicate test variant");
            }
        }
    }
    if (sweep) {
        if (config.defect_periods.empty()) {
            throw std::invalid_argument("experiment: detection sweep needs at least one period");
        }
        for (std::size_t period : config.defect_periods) {
            if (period == 0 || 2 * period > config.n) {
                throw std::invalid_argument("experiment: defect period must satisfy 1 <= T <= n/2");
            }
        }
    }
}

struct BlockOutcome {
    // pvalues[variant][sequence index within block]
    std::vector<std::vector<double>> pvalues;
    std::vector<std::uint64_t> hashes;
};

BlockOutcome run_block(const ExperimentConfig& config, const SequenceSource& source,
                       std::uint64_t first_global_index, std::optional<std::size_t> period) {
    const std::size_t count = config.sets * config.sequences_per_set;
    BlockOutcome out;
    out.pvalues.assign(config.variants.size(), std::vector<double>(count));
    if (config.record_hashes) out.hashes.resize(count);

    parallel_for(count, config.workers, [&](std::size_t i) {
        const BitSequence seq = source.make(first_global_index + i);
        if (config.record_hashes) out.hashes[i] = seq.hash();
        PmSequence pm = to_pm1(seq);
        if (period) pm = inject_periodic(pm, *period);
        // One transform feeds every variant: all tests see the same spectrum.
        const SpectrumResult half = dft_power(pm, /*half=*/true);
        for (std::size_t v = 0; v < config.variants.size(); ++v) {
            const TestKind kind = config.variants[v];
            const TestOutcome outcome = (kind == TestKind::Proposed)
                                            ? vtest_pvalue(half)
                                            : dftt_pvalue(half, DfttVariant::for_kind(kind));
            out.pvalues[v][i] = outcome.pvalue.value();
        }
    });
    return out;
}

void aggregate_block(const ExperimentConfig& config, const BlockOutcome& block,
                     std::optional<std::size_t> period, ExperimentReport& report) {
    const std::size_t M = config.sequences_per_set;
    std::vector<std::vector<double>> p_uniforms(config.variants.size());

    for (std::size_t s = 0; s < config.sets; ++s) {
        for (std::size_t v = 0; v < config.variants.size(); ++v) {
            const std::span<const double> slice(block.pvalues[v].data() + s * M, M);
            SetResult row;
            row.period = period;
            row.set_id = s;
            row.variant = config.variants[v];
            row.n = config.n;
            row.M = M;
            row.second_level = second_level(slice);
            p_uniforms[v].push_back(row.second_level.p_uniform.value());
            report.rows.push_back(std::move(row));
        }
    }

    for (std::size_t v = 0; v < config.variants.size(); ++v) {
        VariantSummary summary;
        summary.period = period;
        summary.variant = config.variants[v];
        for (double p : block.pvalues[v]) {
            if (p < 0.01) ++summary.pvalues_below_001;
        }
        for (std::size_t s = 0; s < config.sets; ++s) {
            const SetResult& row =
                report.rows[report.rows.size() - config.sets * config.variants.size() +
                            s * config.variants.size() + v];
            const bool prop_reject = !row.second_level.proportion_pass;
            const bool unif_reject = !row.second_level.uniformity_pass;
            summary.sets_rejected_proportion += prop_reject;
            summary.sets_rejected_uniformity += unif_reject;
            summary.sets_rejected_total += (prop_reject || unif_reject);
        }
        if (config.sets >= 10) {
            summary.meta_p_uniform = meta_uniformity(p_uniforms[v]).value();
        }
        report.summaries.push_back(std::move(summary));
    }
}

ExperimentReport run_blocks(const ExperimentConfig& config,
                            const std::vector<std::optional<std::size_t>>& periods) {
    const SequenceSource source(config.generator, config.n);
    ExperimentReport report;
    report.config = config;
    std::uint64_t global_index = 0;
    for (const auto& period : periods) {
        const BlockOutcome block = run_block(config, source, global_index, period);
        aggregate_block(config, block, period, report);
        if (config.record_hashes) {
            report.sequence_hashes.insert(report.sequence_hashes.end(), block.hashes.begin(),
                                          block.hashes.end());
        }
        global_index += config.sets * config.sequences_per_set;
    }
    return report;
}

} // namespace

ExperimentReport run_batch(const ExperimentConfig& config) {
    validate(config, /*sweep=*/false);
    return run_blocks(config, {std::nullopt});
}

ExperimentReport run_detection_sweep(const ExperimentConfig& config) {
    validate(config, /*sweep=*/true);
    std::vector<std::optional<std::size_t>> periods;
    periods.reserve(config.defect_periods.size());
    for (std::size_t period : config.defect_periods) periods.emplace_back(period);
    return run_blocks(config, periods);
}

CdfTable empirical_cdf(std::size_t n, std::size_t samples, const GeneratorSpec& generator,
                       unsigned workers) {
    if (samples == 0) {
        throw std::invalid_argument("empirical_cdf: need at least one sample");
    }
    if (n < 4 || n % 2 != 0) {
        throw std::invalid_argument("empirical_cdf: sequence length must be even and at least 4");
    }
    const SequenceSource source(generator, n);
    CdfTable table;
    table.n = n;
    table.v_tilde.resize(samples);
    parallel_for(samples, workers, [&](std::size_t i) {
        const SpectrumResult half = dft_power(to_pm1(source.make(i)), /*half=*/true);
        table.v_tilde[i] = v_tilde_from_half_spectrum(half);
    });
    std::sort(table.v_tilde.begin(), table.v_tilde.end());

    table.empirical.resize(samples);
    table.normal.resize(samples);
    double ks = 0.0;
    const double m = static_cast<double>(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double phi = normal_cdf(table.v_tilde[i]);
        table.empirical[i] = static_cast<double>(i + 1) / m;
        table.normal[i] = phi;
        ks = std::max(ks, std::abs(table.empirical[i] - phi));
        ks = std::max(ks, std::abs(phi - static_cast<double>(i) / m));
    }
    table.ks = ks;
    return table;
}

std::vector<TestOutcome> evaluate_sequence(const BitSequence& x,
                                           std::span<const TestKind> variants) {
    if (x.size() < 4 || x.size() % 2 != 0) {
        throw std::invalid_argument("evaluate_sequence: requires even n >= 4");
    }
    const SpectrumResult half = dft_power(to_pm1(x), /*half=*/true);
    std::vector<TestOutcome> out;
    out.reserve(variants.size());
    for (TestKind kind : variants) {
        out.push_back(kind == TestKind::Proposed ? vtest_pvalue(half)
                                                 : dftt_pvalue(half, DfttVariant::for_kind(kind)));
    }
    return out;
}

namespace {

// Fixed-notation, locale-independent float formatting for byte-stable CSV.
std::string format_fixed(double v, int precision) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
    return std::string(buf, res.ptr);
}

} // namespace

void write_csv(const ExperimentReport& report, std::ostream& out) {
    const bool sweep = !report.rows.empty() && report.rows.front().period.has_value();
    out << "set_id,variant,n,M,r,proportion_pass,chi2,p_uniform,uniformity_pass";
    if (sweep) out << ",T";
    out << '\n';
    for (const SetResult& row : report.rows) {
        out << row.set_id << ',' << to_string(row.variant) << ',' << row.n << ',' << row.M << ','
            << row.second_level.r << ',' << (row.second_level.proportion_pass ? 1 : 0) << ','
            << format_fixed(row.second_level.chi2_stat, 6) << ','
            << format_fixed(row.second_level.p_uniform.value(), 6) << ','
            << (row.second_level.uniformity_pass ? 1 : 0);
        if (sweep) out << ',' << *row.period;
        out << '\n';
    }
}

void write_json(const ExperimentReport& report, std::ostream& out) {
    using json = nlohmann::ordered_json;
    json root;

    json cfg;
    json variants = json::array();
    for (TestKind kind : report.config.variants) variants.push_back(std::string(to_string(kind)));
    cfg["variants"] = std::move(variants);
    cfg["n"] = report.config.n;
    cfg["M"] = report.config.sequences_per_set;
    cfg["sets"] = report.config.sets;
    switch (report.config.generator.kind) {
        case GeneratorSpec::Kind::Mt19937:
            cfg["generator"] = "mt";
            cfg["seed"] = report.config.generator.seed;
            break;
        case GeneratorSpec::Kind::AesCtr:
            cfg["generator"] = "aes";
            break;
        case GeneratorSpec::Kind::File:
            cfg["generator"] = "file";
            cfg["path"] = report.config.generator.path;
            break;
    }
    if (!report.config.defect_periods.empty()) cfg["defect_periods"] = report.config.defect_periods;
    root["config"] = std::move(cfg);

    json rows = json::array();
    for (const SetResult& row : report.rows) {
        json r;
        if (row.period) r["T"] = *row.period;
        r["set_id"] = row.set_id;
        r["variant"] = std::string(to_string(row.variant));
        r["n"] = row.n;
        r["M"] = row.M;
        r["r"] = row.second_level.r;
        r["proportion_pass"] = row.second_level.proportion_pass;
        r["chi2"] = row.second_level.chi2_stat;
        r["p_uniform"] = row.second_level.p_uniform.value();
        r["uniformity_pass"] = row.second_level.uniformity_pass;
        r["bin_counts"] = row.second_level.bin_counts;
        rows.push_back(std::move(r));
    }
    root["rows"] = std::move(rows);

    json summaries = json::array();
    for (const VariantSummary& s : report.summaries) {
        json j;
        if (s.period) j["T"] = *s.period;
        j["variant"] = std::string(to_string(s.variant));
        j["pvalues_below_001"] = s.pvalues_below_001;
        j["sets_rejected_proportion"] = s.sets_rejected_proportion;
        j["sets_rejected_uniformity"] = s.sets_rejected_uniformity;
        j["sets_rejected_total"] = s.sets_rejected_total;
        if (s.meta_p_uniform) {
            j["meta_p_uniform"] = *s.meta_p_uniform;
        } else {
            j["meta_p_uniform"] = nullptr;
        }
        summaries.push_back(std::move(j));
    }
    root["summaries"] = std::move(summaries);

    out << root.dump(2) << '\n';
}

void write_csv(const CdfTable& table, std::ostream& out) {
    out << "# n=" << table.n << " samples=" << table.v_tilde.size() << " ks="
        << format_fixed(table.ks, 6) << '\n';
    out << "v_tilde,empirical_cdf,normal_cdf\n";
    for (std::size_t i = 0; i < table.v_tilde.size(); ++i) {
        out << format_fixed(table.v_tilde[i], 9) << ',' << format_fixed(table.empirical[i], 9)
            << ',' << format_fixed(table.normal[i], 9) << '\n';
    }
}

} // namespace spectest
