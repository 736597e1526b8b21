#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <dmim/analysis.hpp>
#include <dmim/harness.hpp>
#include <dmim/schemes.hpp>
#include <dmim/verify.hpp>

namespace {

int run_ber(const dmim::SimulationPlan& plan) {
    dmim::validate_plan(plan);
    std::vector<dmim::BerRecord> records;
    for (double ebn0 : plan.ebn0_grid_db) {
        dmim::BerRecord rec = dmim::run_point(plan, ebn0);
        std::fprintf(stderr, "%s  ebn0=%g dB  ber=%s  errors=%lld  groups=%lld%s\n",
                     rec.scheme.c_str(), rec.ebn0_db, dmim::format_double(rec.ber).c_str(),
                     static_cast<long long>(rec.errors), static_cast<long long>(rec.groups),
                     rec.censored ? "  [censored: no errors observed]" : "");
        records.push_back(std::move(rec));
    }
    for (const std::string& w : dmim::monotonicity_warnings(records))
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    if (plan.out.empty())
        dmim::write_csv(records, std::cout);
    else
        dmim::write_csv(records, plan.out);
    return 0;
}

int run_analyze(const std::string& out_path, bool tables) {
    struct Row {
        const char* name;
        int order, p;
    };
    const Row rows[] = {{"conv-qpsk", 4, 10},
                        {"prop-qpsk", 4, 10},
                        {"conv-16qam", 16, 18},
                        {"prop-16qam", 16, 18}};
    std::string csv = "pair,delta1_factor,delta2_factor,eb,normalized_d1,normalized_d2\n";
    std::printf("%-12s %8s %8s %10s %14s %14s\n", "pair", "delta1", "delta2", "eb",
                "d1/sqrt(eb)", "d2/sqrt(eb)");
    for (const Row& row : rows) {
        dmim::ConstellationPair pair = std::string(row.name).substr(0, 4) == "conv"
                                           ? dmim::build_conventional_pair(row.order)
                                           : dmim::build_proposed_pair(row.order);
        dmim::PairReport rep = dmim::worst_case_report(pair, 4, 2, row.p);
        std::printf("%-12s %8.4f %8.4f %10.6f %14.6f %14.6f\n", row.name, rep.delta1_factor,
                    rep.delta2_factor, rep.eb, rep.normalized_d1, rep.normalized_d2);
        csv += std::string(row.name) + ',' + dmim::format_double(rep.delta1_factor) + ',' +
               dmim::format_double(rep.delta2_factor) + ',' + dmim::format_double(rep.eb) + ',' +
               dmim::format_double(rep.normalized_d1) + ',' +
               dmim::format_double(rep.normalized_d2) + '\n';
        if (tables) {
            std::printf("\nmode A points (label re im):\n%s",
                        dmim::format_constellation_table(pair.a).c_str());
            std::printf("mode B points (label re im):\n%s\n",
                        dmim::format_constellation_table(pair.b).c_str());
        }
    }
    if (out_path.empty()) {
        std::printf("\n%s", csv.c_str());
    } else {
        std::FILE* f = std::fopen(out_path.c_str(), "wb");
        if (!f) throw std::runtime_error("cannot open " + out_path);
        std::fwrite(csv.data(), 1, csv.size(), f);
        std::fclose(f);
    }
    return 0;
}

int run_verify(std::uint64_t seed, int trials) {
    auto results = dmim::run_verification(seed, trials);
    int failures = 0;
    for (const dmim::CheckResult& r : results) {
        std::printf("%s  %s (%s)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dual-mode OFDM-IM link-level simulator"};
    app.require_subcommand(1);

    // ber
    auto* ber = app.add_subcommand("ber", "Monte Carlo BER sweep over an Eb/N0 grid");
    std::string scheme, ebn0_spec, out, config_path;
    std::int64_t max_groups = 0, target_errors = 0;
    std::uint64_t seed = 0;
    int workers = 0;
    bool noiseless = false, timing = false;
    ber->add_option("--scheme", scheme, "scheme id (see README for the list)");
    ber->add_option("--ebn0", ebn0_spec, "grid: start:step:stop dB, or comma list");
    ber->add_option("--max-groups", max_groups, "max simulated groups per point");
    ber->add_option("--target-errors", target_errors, "early-stop bit error target");
    ber->add_option("--seed", seed, "master seed");
    ber->add_option("--workers", workers, "parallel trial blocks");
    ber->add_option("--out", out, "output CSV path (default: stdout)");
    ber->add_flag("--noiseless", noiseless, "disable AWGN (sanity runs)");
    ber->add_flag("--timing", timing, "record wall time in elapsed_s (breaks byte-reproducibility)");
    ber->add_option("--config", config_path, "key=value config file; explicit flags override");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Constellation pair design report");
    std::string analyze_out;
    bool tables = false;
    analyze->add_option("--out", analyze_out, "write the report CSV here");
    analyze->add_flag("--tables", tables, "also print raw constellation point tables");

    // verify
    auto* verify = app.add_subcommand("verify", "Run the self-check suite");
    std::uint64_t verify_seed = 20240901;
    int verify_trials = 250;
    verify->add_option("--seed", verify_seed, "randomized-check seed");
    verify->add_option("--trials", verify_trials, "detector-equivalence trials per Eb/N0 point");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ber->parsed()) {
            dmim::SimulationPlan plan;
            if (!config_path.empty()) plan = dmim::load_config(config_path);
            if (ber->count("--scheme")) plan.scheme_id = scheme;
            if (ber->count("--ebn0")) plan.ebn0_grid_db = dmim::parse_ebn0_spec(ebn0_spec);
            if (ber->count("--max-groups")) plan.max_groups = max_groups;
            if (ber->count("--target-errors")) plan.target_errors = target_errors;
            if (ber->count("--seed")) plan.seed = seed;
            if (ber->count("--workers")) plan.workers = workers;
            if (ber->count("--noiseless")) plan.noiseless = noiseless;
            if (ber->count("--timing")) plan.timing = timing;
            if (ber->count("--out")) plan.out = out;
            return run_ber(plan);
        }
        if (analyze->parsed()) return run_analyze(analyze_out, tables);
        if (verify->parsed()) return run_verify(verify_seed, verify_trials);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
