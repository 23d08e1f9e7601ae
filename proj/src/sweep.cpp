#include "icq/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

namespace icq {

namespace {
constexpr std::uint64_t kLaneInstance = 0x696e7374ULL;
constexpr std::uint64_t kLaneTrial = 0x747269616cULL;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}
} // namespace

void SweepSpec::validate() const {
    if (n_trials < 1) throw parameter_error("sweep needs n_trials >= 1");
    if (x_values.empty()) throw parameter_error("sweep needs at least one x value");
    for (std::size_t i = 1; i < x_values.size(); ++i)
        if (x_values[i] < x_values[i - 1]) throw parameter_error("x values must be sorted");
    if (algorithms.empty()) throw parameter_error("sweep needs at least one algorithm");
    if (K < 2) throw parameter_error("sweep needs K >= 2");
}

TrialConfig apply_axis(const TrialConfig& base, XAxis axis, double x) {
    TrialConfig c = base;
    switch (axis) {
        case XAxis::LogInvDelta:
            c.delta = std::exp(-x);
            break;
        case XAxis::Delta:
            break; // the hardness gap lives in the instance, not the config
        case XAxis::Alpha:
            c.alpha = static_cast<int>(std::lround(x));
            break;
        case XAxis::B:
            c.B = static_cast<int>(std::lround(x));
            break;
    }
    return c;
}

std::vector<std::vector<TrialMetrics>> run_point(const SweepSpec& spec, double x) {
    spec.validate();
    const auto n_algos = spec.algorithms.size();
    std::vector<std::vector<TrialMetrics>> out(n_algos);
    for (auto& v : out) v.resize(static_cast<std::size_t>(spec.n_trials));

    const double hardness = spec.x_axis == XAxis::Delta ? x : spec.hardness_delta;

    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;

    auto worker = [&]() {
        for (;;) {
            const int t = next.fetch_add(1);
            if (t >= spec.n_trials) return;
            {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (first_error) return;
            }
            const std::uint64_t instance_seed =
                mix_seed(mix_seed(spec.base_seed, kLaneInstance), static_cast<std::uint64_t>(t));
            const std::uint64_t trial_seed =
                mix_seed(mix_seed(spec.base_seed, kLaneTrial), static_cast<std::uint64_t>(t));
            BanditInstance inst;
            try {
                inst = make_instance(spec.family, spec.K, instance_seed, hardness);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
            for (std::size_t a = 0; a < n_algos; ++a) {
                TrialConfig config = apply_axis(spec.algorithms[a].config, spec.x_axis, x);
                config.seed = trial_seed;
                try {
                    out[a][static_cast<std::size_t>(t)] = run_trial(inst, config).metrics;
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error)
                        first_error = std::make_exception_ptr(std::runtime_error(
                            "trial failed (x=" + format_double(x) + ", algorithm=" +
                            spec.algorithms[a].label + ", trial=" + std::to_string(t) +
                            ", seed=" + std::to_string(trial_seed) + "): " + e.what()));
                    return;
                }
            }
        }
    };

    int n_threads = spec.threads > 0 ? spec.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    if (n_threads > spec.n_trials) n_threads = spec.n_trials;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int w = 0; w < n_threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

SweepResult aggregate(const SweepSpec& spec, double x, const AlgoTemplate& algo,
                      const std::vector<TrialMetrics>& trials) {
    SweepResult r;
    r.family = to_string(spec.family);
    r.algorithm = algo.label;
    r.x_name = to_string(spec.x_axis);
    r.x = x;
    r.n_trials = static_cast<int>(trials.size());

    std::int64_t conclusive = 0;
    std::int64_t wrong = 0;
    double sum_samples = 0.0;
    double sum_rounds = 0.0;
    double sum_bits = 0.0;
    bool bits_applicable = false;
    for (const auto& m : trials) {
        if (!m.conclusive) continue;
        ++conclusive;
        sum_samples += static_cast<double>(m.samples);
        sum_rounds += static_cast<double>(m.rounds);
        if (m.uplink_bits >= 0) {
            bits_applicable = true;
            sum_bits += static_cast<double>(m.uplink_bits);
        }
        if (!m.correct) ++wrong;
    }
    const auto n = static_cast<double>(trials.size());
    if (conclusive > 0) {
        r.mean_samples = sum_samples / static_cast<double>(conclusive);
        r.mean_rounds = sum_rounds / static_cast<double>(conclusive);
        r.mean_bits = bits_applicable ? sum_bits / static_cast<double>(conclusive) : -1.0;
    } else {
        r.mean_samples = r.mean_rounds = 0.0;
        r.mean_bits = -1.0;
    }
    r.error_rate = static_cast<double>(wrong) / n;
    r.inconclusive_rate = static_cast<double>(trials.size() - conclusive) / n;
    return r;
}

std::vector<SweepResult> run_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<SweepResult> results;
    results.reserve(spec.x_values.size() * spec.algorithms.size());
    for (double x : spec.x_values) {
        const auto per_algo = run_point(spec, x);
        for (std::size_t a = 0; a < spec.algorithms.size(); ++a)
            results.push_back(aggregate(spec, x, spec.algorithms[a], per_algo[a]));
    }
    return results;
}

std::string csv_header() {
    return "family,algorithm,x_name,x,n_trials,mean_samples,mean_rounds,mean_bits,"
           "error_rate,inconclusive_rate";
}

std::string csv_row(const SweepResult& r) {
    std::string row = r.family;
    row += ',';
    row += r.algorithm;
    row += ',';
    row += r.x_name;
    row += ',';
    row += format_double(r.x);
    row += ',';
    row += std::to_string(r.n_trials);
    row += ',';
    row += format_double(r.mean_samples);
    row += ',';
    row += format_double(r.mean_rounds);
    row += ',';
    row += format_double(r.mean_bits);
    row += ',';
    row += format_double(r.error_rate);
    row += ',';
    row += format_double(r.inconclusive_rate);
    return row;
}

void write_csv(const std::vector<SweepResult>& results, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parameter_error("cannot open output file: " + path);
    out << csv_header() << '\n';
    for (const auto& r : results) out << csv_row(r) << '\n';
    if (!out) throw parameter_error("failed writing output file: " + path);
}

} // namespace icq
