#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "icq/algorithms.hpp"
#include "icq/sweep.hpp"
#include "icq/theory.hpp"

namespace {

icq::InstanceKind parse_family(const std::string& name) {
    if (name == "beta") return icq::InstanceKind::BetaRandom;
    if (name == "gauss-means") return icq::InstanceKind::GaussianRandomMeans;
    if (name == "gauss-hardness") return icq::InstanceKind::GaussianHardness;
    throw CLI::ValidationError("--family", "unknown family: " + name);
}

// Token syntax: "se", "fed-sel", "icq-se:<B>", "quban:<epsilon>".
icq::AlgoTemplate parse_algo_token(const std::string& token, const icq::TrialConfig& base) {
    icq::AlgoTemplate t;
    t.config = base;
    const auto colon = token.find(':');
    const std::string name = token.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : token.substr(colon + 1);
    if (name == "se") {
        t.config.algorithm = icq::Algorithm::UnquantizedSe;
        t.label = "se";
    } else if (name == "fed-sel") {
        t.config.algorithm = icq::Algorithm::FedSel;
        t.label = "fed-sel";
    } else if (name == "icq-se") {
        t.config.algorithm = icq::Algorithm::IcqSe;
        if (!arg.empty()) t.config.B = std::stoi(arg);
        t.label = "icq-se(B=" + std::to_string(t.config.B) + ")";
    } else if (name == "quban") {
        t.config.algorithm = icq::Algorithm::QubanSe;
        if (!arg.empty()) t.config.epsilon = std::stod(arg);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", t.config.epsilon);
        t.label = std::string("quban(eps=") + buf + ")";
    } else {
        throw CLI::ValidationError("--algos", "unknown algorithm: " + name);
    }
    return t;
}

std::vector<icq::AlgoTemplate> parse_algos(const std::string& csv, const icq::TrialConfig& base) {
    std::vector<icq::AlgoTemplate> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const auto comma = csv.find(',', start);
        const std::string token =
            csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!token.empty()) out.push_back(parse_algo_token(token, base));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw CLI::ValidationError("--algos", "no algorithms given");
    return out;
}

void emit(const std::vector<icq::SweepResult>& results, const std::string& out_path) {
    std::cout << icq::csv_header() << '\n';
    for (const auto& r : results) std::cout << icq::csv_row(r) << '\n';
    if (!out_path.empty()) {
        icq::write_csv(results, out_path);
        std::cerr << "wrote " << results.size() << " rows to " << out_path << '\n';
    }
}

// Ten abscissae matching the published delta grid, log(1/delta) from 3 to 13.8.
const std::vector<double> kDeltaGrid = {
    2.99573227355399, 4.60517018598809, 5.29831736654804, 6.90775527898214, 7.60090245954208,
    9.21034037197618, 9.90348755253613, 11.5129254649702, 12.2060726455302, 13.8155105579643};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        xs.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1));
    return xs;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bit-constrained best-arm identification simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file providing defaults for any option");

    std::string family = "beta";
    std::string algos = "icq-se:3";
    std::string algo = "icq-se";
    std::string out_path;
    std::string dump_wire;
    icq::TrialConfig base;
    int K = 5;
    int trials = 4000;
    std::uint64_t seed = 7;
    int threads = 0;
    double hardness = 0.5;
    int fixed_B = 1;
    int fixed_alpha = 2;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--family", family, "beta | gauss-means | gauss-hardness");
        cmd->add_option("--K", K, "number of arms");
        cmd->add_option("--trials", trials, "Monte Carlo trials per point");
        cmd->add_option("--seed", seed, "base seed");
        cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
        cmd->add_option("--delta", base.delta, "confidence level");
        cmd->add_option("--max-rounds", base.max_rounds, "round cap per trial");
        cmd->add_option("--hardness", hardness, "gap for gauss-hardness instances");
        cmd->add_option("--out", out_path, "CSV output path");
    };

    auto* run_cmd = app.add_subcommand("run", "single (family, algorithm, delta) point");
    add_common(run_cmd);
    run_cmd->add_option("--algo", algo, "se | fed-sel | icq-se | quban");
    run_cmd->add_option("--B", base.B, "bits per uplink message");
    run_cmd->add_option("--alpha", base.alpha, "schedule base");
    run_cmd->add_option("--epsilon", base.epsilon, "quban grid parameter");
    run_cmd->add_option("--dump-wire", dump_wire, "write trial 0's packed message log here");

    auto* sweep_delta = app.add_subcommand("sweep-delta", "delta sweep on the published grid");
    add_common(sweep_delta);
    sweep_delta->add_option("--algos", algos, "comma list, e.g. icq-se:2,icq-se:3,se,quban:0.5");
    sweep_delta->add_option("--alpha", base.alpha, "schedule base");

    auto* sweep_hardness = app.add_subcommand("sweep-hardness", "gap sweep on gauss-hardness");
    add_common(sweep_hardness);
    sweep_hardness->add_option("--algos", algos, "comma list of algorithms");
    sweep_hardness->add_option("--alpha", base.alpha, "schedule base");

    auto* sweep_alpha = app.add_subcommand("sweep-alpha", "schedule-base sweep for icq-se");
    add_common(sweep_alpha);
    sweep_alpha->add_option("--B", fixed_B, "bits per uplink message");

    auto* sweep_bits = app.add_subcommand("sweep-bits", "per-message bit sweep for icq-se");
    add_common(sweep_bits);
    sweep_bits->add_option("--alpha", fixed_alpha, "schedule base");

    std::string gaps_csv;
    double sigma = 0.5;
    auto* bounds_cmd = app.add_subcommand("bounds", "closed-form complexity bounds");
    bounds_cmd->add_option("--K", K, "number of arms");
    bounds_cmd->add_option("--delta", base.delta, "confidence level");
    bounds_cmd->add_option("--B", base.B, "bits per uplink message");
    bounds_cmd->add_option("--alpha", base.alpha, "schedule base");
    bounds_cmd->add_option("--sigma", sigma, "subgaussian scale");
    bounds_cmd->add_option("--gaps", gaps_csv, "comma list of suboptimality gaps (incl. the 0)");
    bounds_cmd->add_option("--support-width", hardness, "b-a for the delta smallness check");
    bounds_cmd->add_option("--out", out_path, "CSV output path");

    CLI11_PARSE(app, argc, argv);

    try {
        icq::SweepSpec spec;
        spec.K = K;
        spec.n_trials = trials;
        spec.base_seed = seed;
        spec.threads = threads;
        spec.hardness_delta = hardness;

        if (run_cmd->parsed()) {
            spec.family = parse_family(family);
            spec.x_axis = icq::XAxis::LogInvDelta;
            spec.x_values = {std::log(1.0 / base.delta)};
            spec.algorithms = {parse_algo_token(algo + (algo == "icq-se" ? ":" + std::to_string(base.B)
                                                        : algo == "quban" ? ":" + std::to_string(base.epsilon)
                                                                          : ""),
                                                base)};
            emit(icq::run_sweep(spec), out_path);
            if (!dump_wire.empty()) {
                const auto inst = icq::make_instance(
                    spec.family, K, icq::mix_seed(icq::mix_seed(seed, 0x696e7374ULL), 0), hardness);
                icq::TrialConfig c = spec.algorithms[0].config;
                c.seed = icq::mix_seed(icq::mix_seed(seed, 0x747269616cULL), 0);
                icq::RunOptions opts;
                opts.record_messages = true;
                const auto result = icq::run_trial(inst, c, opts);
                std::ofstream f(dump_wire, std::ios::binary);
                for (const auto& msg : result.messages) {
                    const auto bytes = icq::pack(msg);
                    f.write(reinterpret_cast<const char*>(bytes.data()),
                            static_cast<std::streamsize>(bytes.size()));
                }
                std::cerr << "wrote " << result.messages.size() << " frames to " << dump_wire << '\n';
            }
        } else if (sweep_delta->parsed()) {
            spec.family = parse_family(family);
            spec.x_axis = icq::XAxis::LogInvDelta;
            spec.x_values = kDeltaGrid;
            spec.algorithms = parse_algos(algos, base);
            emit(icq::run_sweep(spec), out_path);
        } else if (sweep_hardness->parsed()) {
            spec.family = icq::InstanceKind::GaussianHardness;
            spec.x_axis = icq::XAxis::Delta;
            spec.x_values = linspace(0.1, 1.0, 20);
            spec.algorithms = parse_algos(algos, base);
            emit(icq::run_sweep(spec), out_path);
        } else if (sweep_alpha->parsed()) {
            spec.family = parse_family(family);
            spec.x_axis = icq::XAxis::Alpha;
            spec.x_values = {2, 3, 4, 5, 6, 7, 8, 9};
            icq::TrialConfig c = base;
            c.B = fixed_B;
            c.algorithm = icq::Algorithm::IcqSe;
            spec.algorithms = {{c, "icq-se(B=" + std::to_string(fixed_B) + ")"}};
            emit(icq::run_sweep(spec), out_path);
        } else if (sweep_bits->parsed()) {
            spec.family = parse_family(family);
            spec.x_axis = icq::XAxis::B;
            spec.x_values = {1, 2, 3, 4, 5, 6, 7, 8, 9};
            icq::TrialConfig c = base;
            c.alpha = fixed_alpha;
            c.algorithm = icq::Algorithm::IcqSe;
            spec.algorithms = {{c, "icq-se"}};
            emit(icq::run_sweep(spec), out_path);
        } else if (bounds_cmd->parsed()) {
            std::vector<double> gap_values;
            if (!gaps_csv.empty()) {
                std::size_t start = 0;
                while (start <= gaps_csv.size()) {
                    const auto comma = gaps_csv.find(',', start);
                    gap_values.push_back(std::stod(gaps_csv.substr(start, comma - start)));
                    if (comma == std::string::npos) break;
                    start = comma + 1;
                }
            } else {
                gap_values.assign(static_cast<std::size_t>(K), hardness);
                gap_values[0] = 0.0;
            }
            const auto rep = icq::sample_bound(gap_values, sigma, K, base.delta, base.B,
                                               base.alpha, hardness > 0 ? hardness : 0.0);
            std::printf("%-22s %.6g\n", "c", rep.c);
            std::printf("%-22s %.6g\n", "sample_bound", rep.sample_bound);
            std::printf("%-22s %.6g\n", "round_bound", rep.round_bound);
            std::printf("%-22s %.6g\n", "bit_bound", rep.bit_bound);
            std::printf("%-22s %.6g\n", "unquantized_bound", rep.unquantized_bound);
            std::printf("%-22s %s\n", "delta_ok", rep.delta_ok ? "yes" : "no");
            if (rep.log_arg_vacuous)
                std::fprintf(stderr,
                             "warning: a log argument is <= 1; the printed-form bound is vacuous "
                             "at these parameters\n");
            std::printf("%-6s %-14s %-14s %-14s\n", "arm", "gap", "term", "T_j");
            for (std::size_t j = 0; j < gap_values.size(); ++j)
                std::printf("%-6zu %-14.6g %-14.6g %-14lld\n", j, gap_values[j],
                            rep.per_arm_term[j], static_cast<long long>(rep.per_arm_Tj[j]));
            if (!out_path.empty()) {
                std::ofstream f(out_path, std::ios::binary);
                f << "arm,gap,term,term_strict,T_j\n";
                for (std::size_t j = 0; j < gap_values.size(); ++j)
                    f << j << ',' << gap_values[j] << ',' << rep.per_arm_term[j] << ','
                      << rep.per_arm_term_strict[j] << ',' << rep.per_arm_Tj[j] << '\n';
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
