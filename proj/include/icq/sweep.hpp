#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "icq/algorithms.hpp"
#include "icq/bandit.hpp"
#include "icq/trial.hpp"

namespace icq {

enum class XAxis { LogInvDelta, Delta, Alpha, B };

inline const char* to_string(XAxis x) {
    switch (x) {
        case XAxis::LogInvDelta: return "log_inv_delta";
        case XAxis::Delta: return "delta";
        case XAxis::Alpha: return "alpha";
        case XAxis::B: return "B";
    }
    return "?";
}

// One algorithm series in a sweep: a config template whose axis field is
// overwritten per x value, and the label used in the CSV.
struct AlgoTemplate {
    TrialConfig config;
    std::string label;
};

struct SweepSpec {
    InstanceKind family = InstanceKind::BetaRandom;
    int K = 5;
    double hardness_delta = 0.5; // GaussianHardness gap when x is not Delta
    XAxis x_axis = XAxis::LogInvDelta;
    std::vector<double> x_values;
    std::vector<AlgoTemplate> algorithms;
    int n_trials = 4000;
    std::uint64_t base_seed = 0;
    int threads = 0; // 0 = hardware concurrency

    void validate() const;
};

// Averages over the conclusive trials of one (x, algorithm) point.
// error_rate counts conclusive-but-wrong recommendations over all trials;
// mean_bits is -1 for the unquantized baseline.
struct SweepResult {
    std::string family;
    std::string algorithm;
    std::string x_name;
    double x = 0.0;
    int n_trials = 0;
    double mean_samples = 0.0;
    double mean_rounds = 0.0;
    double mean_bits = 0.0;
    double error_rate = 0.0;
    double inconclusive_rate = 0.0;
};

// Applies one x value to a config template.
TrialConfig apply_axis(const TrialConfig& base, XAxis axis, double x);

// Runs every algorithm at one x value with paired trials: trial t uses the
// same instance and the same reward streams for every algorithm. Returns one
// metrics vector per algorithm, indexed by trial.
std::vector<std::vector<TrialMetrics>> run_point(const SweepSpec& spec, double x);

SweepResult aggregate(const SweepSpec& spec, double x, const AlgoTemplate& algo,
                      const std::vector<TrialMetrics>& trials);

std::vector<SweepResult> run_sweep(const SweepSpec& spec);

std::string csv_header();
std::string csv_row(const SweepResult& r);
void write_csv(const std::vector<SweepResult>& results, const std::string& path);

} // namespace icq
