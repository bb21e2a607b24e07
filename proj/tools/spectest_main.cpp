// spectest CLI: spectral randomness tests over generated or file-supplied
// bit sequences, plus the batch experiment harness.
//
// Subcommands:
//   gen   dump generator output
//   test  p-values for individual sequences
//   exp1  type-1-error batch: second-level verdicts over sets of sequences
//   exp2  detection-power sweep against periodic overwrites
//   cdf   empirical CDF of the scaled spectrum-variance statistic
//
// Exit codes: 0 = ran, 1 = usage error, 2 = I/O error. Test verdicts are
// data, never exit codes.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "spectest/dftt.hpp"
#include "spectest/experiment.hpp"
#include "spectest/generators.hpp"
#include "spectest/vtest.hpp"

namespace {

using namespace spectest;

std::array<std::uint8_t, 16> parse_hex16(const std::string& hex, const std::string& flag) {
    if (hex.size() != 32) {
        throw CLI::ValidationError(flag, "expected 32 hex characters");
    }
    std::array<std::uint8_t, 16> out{};
    for (std::size_t i = 0; i < 16; ++i) {
        unsigned byte = 0;
        if (std::sscanf(hex.c_str() + 2 * i, "%2x", &byte) != 1) {
            throw CLI::ValidationError(flag, "invalid hex");
        }
        out[i] = static_cast<std::uint8_t>(byte);
    }
    return out;
}

BitFormat format_from_string(const std::string& name) {
    if (name == "ascii01") return BitFormat::Ascii01;
    if (name == "raw") return BitFormat::RawMsbFirst;
    throw CLI::ValidationError("--format", "expected ascii01 or raw");
}

struct GeneratorFlags {
    std::string gen = "mt";
    std::uint32_t seed = 5489;
    std::string key_hex = "00000000000000000000000000000000";
    std::string ctr_hex = "00000000000000000000000000000000";
    std::string in_path;
    std::string format = "raw";

    void attach(CLI::App* cmd) {
        cmd->add_option("--gen", gen, "Bit source: mt|aes|file")
            ->check(CLI::IsMember({"mt", "aes", "file"}))
            ->capture_default_str();
        cmd->add_option("--seed", seed, "MT19937 base seed")->capture_default_str();
        cmd->add_option("--key", key_hex, "AES-128 key (32 hex chars)");
        cmd->add_option("--ctr", ctr_hex, "AES initial counter (32 hex chars)");
        cmd->add_option("--in", in_path, "Input file for --gen file");
        cmd->add_option("--format", format, "File bit format: ascii01|raw")
            ->check(CLI::IsMember({"ascii01", "raw"}))
            ->capture_default_str();
    }

    GeneratorSpec spec() const {
        GeneratorSpec s;
        if (gen == "mt") {
            s.kind = GeneratorSpec::Kind::Mt19937;
            s.seed = seed;
        } else if (gen == "aes") {
            s.kind = GeneratorSpec::Kind::AesCtr;
            s.key = parse_hex16(key_hex, "--key");
            s.counter = parse_hex16(ctr_hex, "--ctr");
        } else {
            if (in_path.empty()) {
                throw CLI::ValidationError("--in", "required with --gen file");
            }
            s.kind = GeneratorSpec::Kind::File;
            s.path = in_path;
            s.file_format = format_from_string(format);
        }
        return s;
    }
};

std::vector<TestKind> variants_from_names(const std::vector<std::string>& names) {
    std::vector<TestKind> out;
    for (const auto& name : names) {
        const TestKind kind = test_kind_from_string(name);
        if (std::find(out.begin(), out.end(), kind) == out.end()) out.push_back(kind);
    }
    return out;
}

void write_or_fail(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
    GeneratorFlags source;
    std::size_t bits = 1024;
    std::string out_path;
    std::string out_format = "ascii01";
};

int run_gen(const GenArgs& args) {
    const GeneratorSpec spec = args.source.spec();
    BitSequence seq = [&] {
        switch (spec.kind) {
            case GeneratorSpec::Kind::Mt19937:
                return mt19937_bits(spec.seed, args.bits);
            case GeneratorSpec::Kind::AesCtr:
                return aes_ctr_bits(spec.key, spec.counter, args.bits);
            case GeneratorSpec::Kind::File:
                return SequenceSource(spec, args.bits).make(0);
        }
        throw std::invalid_argument("unknown generator");
    }();
    const auto bytes = serialize_bits(seq, format_from_string(args.out_format));
    const std::string content(bytes.begin(), bytes.end());
    if (args.out_path.empty()) {
        std::cout.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (args.out_format == "ascii01") std::cout << '\n';
    } else {
        write_or_fail(args.out_path, content);
    }
    return 0;
}

// ---- test ------------------------------------------------------------------

struct TestArgs {
    GeneratorFlags source;
    std::size_t n = 10000;
    std::size_t count = 1;
    std::vector<std::string> tests{"proposed"};
    std::optional<std::size_t> period;
    std::string out_path;
};

int run_test(const TestArgs& args) {
    const std::vector<TestKind> variants = variants_from_names(args.tests);
    const SequenceSource source(args.source.spec(), args.n);
    std::ostringstream out;
    out << "index,variant,n,statistic,pvalue\n";
    for (std::size_t i = 0; i < args.count; ++i) {
        BitSequence seq = source.make(i);
        std::vector<TestOutcome> outcomes;
        if (args.period) {
            PmSequence pm = inject_periodic(to_pm1(seq), *args.period);
            const SpectrumResult half = dft_power(pm, /*half=*/true);
            for (TestKind kind : variants) {
                outcomes.push_back(kind == TestKind::Proposed
                                       ? vtest_pvalue(half)
                                       : dftt_pvalue(half, DfttVariant::for_kind(kind)));
            }
        } else {
            outcomes = evaluate_sequence(seq, variants);
        }
        for (const TestOutcome& o : outcomes) {
            out << i << ',' << to_string(o.variant) << ',' << o.n << ',' << fixed6(o.statistic)
                << ',' << fixed6(o.pvalue.value()) << '\n';
        }
    }
    if (args.out_path.empty()) {
        std::cout << out.str();
    } else {
        write_or_fail(args.out_path, out.str());
    }
    return 0;
}

// ---- exp1 / exp2 -----------------------------------------------------------

struct ExpArgs {
    GeneratorFlags source;
    std::vector<std::string> tests{"kim", "pareschi", "proposed"};
    std::size_t n = 10000;
    std::size_t m = 1000;
    std::size_t sets = 20;
    unsigned workers = 0;
    std::vector<std::size_t> periods;
    std::string out_path;
    std::string out_format = "csv";
};

void print_summaries(const ExperimentReport& report, std::ostream& out) {
    for (const auto& s : report.summaries) {
        out << "variant " << to_string(s.variant);
        if (s.period) out << " T=" << *s.period;
        out << ": p<0.01 " << s.pvalues_below_001 << "/"
            << report.config.sets * report.config.sequences_per_set << ", sets rejected "
            << s.sets_rejected_total << "/" << report.config.sets << " (proportion "
            << s.sets_rejected_proportion << ", uniformity " << s.sets_rejected_uniformity << ")";
        if (s.meta_p_uniform) {
            out << ", meta p_uniform " << fixed6(*s.meta_p_uniform);
        }
        out << '\n';
    }
}

int run_exp(const ExpArgs& args, bool sweep) {
    ExperimentConfig config;
    config.variants = variants_from_names(args.tests);
    config.n = args.n;
    config.sequences_per_set = args.m;
    config.sets = args.sets;
    config.generator = args.source.spec();
    config.workers = args.workers;
    config.defect_periods = args.periods;

    const ExperimentReport report = sweep ? run_detection_sweep(config) : run_batch(config);

    std::ostringstream rows;
    if (args.out_format == "json") {
        write_json(report, rows);
    } else {
        write_csv(report, rows);
    }
    if (args.out_path.empty()) {
        std::cout << rows.str();
        print_summaries(report, std::cerr);
    } else {
        write_or_fail(args.out_path, rows.str());
        print_summaries(report, std::cout);
    }
    return 0;
}

// ---- cdf -------------------------------------------------------------------

struct CdfArgs {
    GeneratorFlags source;
    std::size_t n = 10000;
    std::size_t samples = 10000;
    unsigned workers = 0;
    std::string out_path;
};

int run_cdf(const CdfArgs& args) {
    const CdfTable table = empirical_cdf(args.n, args.samples, args.source.spec(), args.workers);
    std::ostringstream out;
    write_csv(table, out);
    if (args.out_path.empty()) {
        std::cout << out.str();
    } else {
        write_or_fail(args.out_path, out.str());
        std::cout << "ks_distance " << fixed6(table.ks) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral randomness tests: threshold-count DFT variants and the "
                 "power-spectrum-variance test, with second-level experiment tooling"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an ini/toml file (key = flag name)");

    GenArgs gen_args;
    auto* gen_cmd = app.add_subcommand("gen", "Dump generator output");
    gen_args.source.attach(gen_cmd);
    gen_cmd->add_option("--bits", gen_args.bits, "Number of bits")->capture_default_str();
    gen_cmd->add_option("--out", gen_args.out_path, "Output path (default stdout)");
    gen_cmd->add_option("--out-format", gen_args.out_format, "Output bit format: ascii01|raw")
        ->check(CLI::IsMember({"ascii01", "raw"}))
        ->capture_default_str();

    TestArgs test_args;
    auto* test_cmd = app.add_subcommand("test", "Compute per-sequence p-values");
    test_args.source.attach(test_cmd);
    test_cmd->add_option("--n", test_args.n, "Bits per sequence (even)")->capture_default_str();
    test_cmd->add_option("--count", test_args.count, "Number of sequences")->capture_default_str();
    test_cmd->add_option("--test", test_args.tests, "Variants: original|kim|pareschi|proposed")
        ->delimiter(',')
        ->capture_default_str();
    test_cmd->add_option("--period", test_args.period, "Inject periodic defect with parameter T");
    test_cmd->add_option("--out", test_args.out_path, "CSV output path (default stdout)");

    ExpArgs exp1_args;
    auto* exp1_cmd = app.add_subcommand("exp1", "Type-1-error batch experiment");
    exp1_args.source.attach(exp1_cmd);
    exp1_cmd->add_option("--test", exp1_args.tests, "Variants under test")->delimiter(',')->capture_default_str();
    exp1_cmd->add_option("--n", exp1_args.n, "Bits per sequence (even)")->capture_default_str();
    exp1_cmd->add_option("--m", exp1_args.m, "Sequences per set (M)")->capture_default_str();
    exp1_cmd->add_option("--sets", exp1_args.sets, "Number of sets")->capture_default_str();
    exp1_cmd->add_option("--workers", exp1_args.workers, "Worker threads (0 = auto)")->capture_default_str();
    exp1_cmd->add_option("--out", exp1_args.out_path, "Report path (default stdout)");
    exp1_cmd->add_option("--out-format", exp1_args.out_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    ExpArgs exp2_args;
    auto* exp2_cmd = app.add_subcommand("exp2", "Detection-power sweep over periodic defects");
    exp2_args.source.attach(exp2_cmd);
    exp2_cmd->add_option("--test", exp2_args.tests, "Variants under test")->delimiter(',')->capture_default_str();
    exp2_cmd->add_option("--n", exp2_args.n, "Bits per sequence (even)")->capture_default_str();
    exp2_cmd->add_option("--m", exp2_args.m, "Sequences per set (M)")->capture_default_str();
    exp2_cmd->add_option("--sets", exp2_args.sets, "Number of sets")->capture_default_str();
    exp2_cmd->add_option("--workers", exp2_args.workers, "Worker threads (0 = auto)")->capture_default_str();
    exp2_cmd->add_option("--period", exp2_args.periods, "Defect parameter T (repeatable)")
        ->delimiter(',')
        ->required();
    exp2_cmd->add_option("--out", exp2_args.out_path, "Report path (default stdout)");
    exp2_cmd->add_option("--out-format", exp2_args.out_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    CdfArgs cdf_args;
    auto* cdf_cmd = app.add_subcommand("cdf", "Empirical CDF of the scaled statistic");
    cdf_args.source.attach(cdf_cmd);
    cdf_cmd->add_option("--n", cdf_args.n, "Bits per sequence (even)")->capture_default_str();
    cdf_cmd->add_option("--samples", cdf_args.samples, "Number of sequences")->capture_default_str();
    cdf_cmd->add_option("--workers", cdf_args.workers, "Worker threads (0 = auto)")->capture_default_str();
    cdf_cmd->add_option("--out", cdf_args.out_path, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen_cmd->parsed()) return run_gen(gen_args);
        if (test_cmd->parsed()) return run_test(test_args);
        if (exp1_cmd->parsed()) return run_exp(exp1_args, /*sweep=*/false);
        if (exp2_cmd->parsed()) return run_exp(exp2_args, /*sweep=*/true);
        if (cdf_cmd->parsed()) return run_cdf(cdf_args);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
