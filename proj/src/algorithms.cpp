#include "icq/algorithms.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "icq/schedule.hpp"
#include "icq/varcode.hpp"

namespace icq {

namespace {

constexpr std::uint64_t kLaneLearner = 0x6c6561726eULL;
constexpr std::uint64_t kLaneReward = 0x726577617264ULL;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Agent-side bookkeeping: cumulative pulls, running reward sum, and the
// mirrored learner state needed to reproduce the quantization range exactly.
struct AgentState {
    int arm;
    Rng rng;
    std::int64_t pulls_total = 0;
    double running_sum = 0.0;
    double mu_hat = 0.0;

    AgentState(int a, Rng r) : arm(a), rng(r) {}

    void pull(const RewardModel& model, std::int64_t b) {
        const double batch = model.batch_mean(b, rng);
        running_sum += batch * static_cast<double>(b);
        pulls_total += b;
        mu_hat = running_sum / static_cast<double>(pulls_total);
    }
};

int argmax_mu_tilde(const std::vector<int>& active, const std::vector<ArmBelief>& beliefs) {
    int best = active.front();
    for (int j : active)
        if (beliefs[static_cast<std::size_t>(j)].mu_tilde >
            beliefs[static_cast<std::size_t>(best)].mu_tilde)
            best = j;
    return best;
}

struct Runner {
    const BanditInstance& inst;
    const TrialConfig& config;
    const RunOptions& options;

    Schedule sched;
    std::vector<AgentState> agents;
    std::vector<int> active;
    std::vector<ArmBelief> beliefs;        // learner side
    std::vector<ArmBelief> agent_beliefs;  // mirrored on the agent side (ICQ)
    std::vector<double> est_learner;       // QubanSe running estimates
    std::vector<double> est_agent;
    double u_prev_learner = 0.0; // U(i-1, delta), learner recursion
    double u_prev_agent = 0.0;   // same recursion evaluated agent-side
    bool bootstrap_round = false;

    TrialResult result;
    double best_mean = 0.0;

    Runner(const BanditInstance& i, const TrialConfig& c, const RunOptions& o)
        : inst(i), config(c), options(o), sched(c.alpha) {
        inst.validate();
        config.validate();
        const int K = inst.K;
        agents.reserve(static_cast<std::size_t>(K));
        for (int j = 0; j < K; ++j)
            agents.emplace_back(j, fork_rng(config.seed, kLaneReward, static_cast<std::uint64_t>(j)));
        active.resize(static_cast<std::size_t>(K));
        std::iota(active.begin(), active.end(), 0);
        beliefs.assign(static_cast<std::size_t>(K), ArmBelief{});
        best_mean = inst.means[static_cast<std::size_t>(inst.best_arm())];

        switch (config.algorithm) {
            case Algorithm::IcqSe: {
                if (inst.bounded()) {
                    Rng learner_rng = fork_rng(config.seed, kLaneLearner);
                    const double a = inst.support->lo;
                    const double b = inst.support->hi;
                    for (int j = 0; j < K; ++j) {
                        const double mu0 = learner_rng.next_uniform(a, b);
                        beliefs[static_cast<std::size_t>(j)].update(mu0, b - a);
                    }
                    // Round 1's downlink broadcasts the sampled initial
                    // estimates, so the agents mirror them exactly.
                    agent_beliefs = beliefs;
                    u_prev_learner = u_prev_agent = b - a;
                } else {
                    bootstrap_round = true;
                    agent_beliefs = beliefs;
                }
                break;
            }
            case Algorithm::QubanSe: {
                const double e0 = inst.bounded() ? 0.5 * (inst.support->lo + inst.support->hi) : 0.0;
                est_learner.assign(static_cast<std::size_t>(K), e0);
                est_agent.assign(static_cast<std::size_t>(K), e0);
                break;
            }
            case Algorithm::FedSel:
                if (!inst.bounded())
                    throw parameter_error("fed-sel requires a bounded instance");
                break;
            case Algorithm::UnquantizedSe:
                break;
        }
    }

    void log_message(int round, int arm, std::vector<bool> payload) {
        result.metrics.uplink_bits += static_cast<std::int64_t>(payload.size());
        if (options.record_messages)
            result.messages.push_back(UplinkMessage{static_cast<std::uint32_t>(round),
                                                    static_cast<std::uint16_t>(arm),
                                                    std::move(payload)});
    }

    TrialResult run() {
        TrialMetrics& m = result.metrics;
        for (int i = 1; i <= config.max_rounds; ++i) {
            std::int64_t t_i = 0;
            std::int64_t b_i = 0;
            try {
                t_i = sched.t(i);
                b_i = sched.b(i);
            } catch (const schedule_error&) {
                break; // schedule width exhausted: cap the run
            }
            constexpr std::int64_t kSampleCap = std::int64_t{1} << 62;
            const auto n_active = static_cast<std::int64_t>(active.size());
            if (b_i > (kSampleCap - m.samples) / n_active) break; // counter would overflow
            m.rounds = i;
            m.samples += n_active * b_i;

            for (int j : active) {
                auto& ag = agents[static_cast<std::size_t>(j)];
                ag.pull(inst.models[static_cast<std::size_t>(j)], b_i);
            }

            const double up = u_prime(t_i, config.delta, inst.K, inst.sigma_cb);

            TrajectoryRound trace;
            if (options.record_trajectory) {
                trace.round = i;
                trace.t = t_i;
                trace.pulls = b_i;
                trace.u_prime = up;
                trace.active_before = active;
                trace.mu_hat.assign(static_cast<std::size_t>(inst.K), kNaN);
                trace.mu_tilde.assign(static_cast<std::size_t>(inst.K), kNaN);
                for (int j : active)
                    trace.mu_hat[static_cast<std::size_t>(j)] =
                        agents[static_cast<std::size_t>(j)].mu_hat;
            }

            const double width = communicate(i, up, trace);

            if (options.record_trajectory) {
                trace.width = width;
                for (int j : active)
                    trace.mu_tilde[static_cast<std::size_t>(j)] =
                        beliefs[static_cast<std::size_t>(j)].mu_tilde;
            }

            std::vector<int> next = eliminate(active, beliefs);
            if (!m.best_arm_eliminated && !inst.degenerate()) {
                const int best = inst.best_arm();
                bool still_in = false;
                for (int j : next)
                    if (j == best) still_in = true;
                m.best_arm_eliminated = !still_in;
            }
            if (options.record_trajectory) {
                trace.active_after = next;
                result.trajectory.rounds.push_back(std::move(trace));
            }
            active = std::move(next);
            if (active.size() == 1) {
                m.recommended = active.front();
                m.conclusive = true;
                m.correct = inst.means[static_cast<std::size_t>(m.recommended)] == best_mean;
                finalize();
                return std::move(result);
            }
        }
        // Cap tripped: flagged inconclusive, current leader reported.
        m.conclusive = false;
        m.recommended = argmax_mu_tilde(active, beliefs);
        m.correct = false;
        finalize();
        return std::move(result);
    }

private:
    void finalize() {
        if (config.algorithm == Algorithm::UnquantizedSe) result.metrics.uplink_bits = -1;
    }

    // Runs the per-round uplink + belief update; returns the belief
    // half-width used at this round.
    double communicate(int i, double up, TrajectoryRound& trace) {
        switch (config.algorithm) {
            case Algorithm::UnquantizedSe: {
                for (int j : active)
                    beliefs[static_cast<std::size_t>(j)].update(
                        agents[static_cast<std::size_t>(j)].mu_hat, up);
                return up;
            }
            case Algorithm::IcqSe:
                if (bootstrap_round && i == 1) return communicate_bootstrap(i, up);
                return communicate_icq(i, up, trace);
            case Algorithm::FedSel:
                return communicate_fed_sel(i, up);
            case Algorithm::QubanSe:
                return communicate_quban(i, up);
        }
        throw parameter_error("unknown algorithm");
    }

    double communicate_icq(int i, double up, TrajectoryRound& trace) {
        const int B = config.B;
        std::vector<double> decoded(static_cast<std::size_t>(inst.K), 0.0);
        std::vector<double> mirror_decoded(static_cast<std::size_t>(inst.K), 0.0);
        for (int j : active) {
            const auto ju = static_cast<std::size_t>(j);
            // Both sides derive the quantization range from their own copy of
            // the previous round's interval; the recursion keeps them equal.
            const Interval range_agent =
                quant_interval(agent_beliefs[ju].lcb, agent_beliefs[ju].ucb, up);
            const Interval range_learner = quant_interval(beliefs[ju].lcb, beliefs[ju].ucb, up);
            const BitString s = enc(agents[ju].mu_hat, B, range_agent);
            decoded[ju] = dec(s, B, range_learner);
            mirror_decoded[ju] = dec(s, B, range_agent);
            log_message(i, j, to_bits(s));
            if (options.record_trajectory) {
                trace.interval_learner.push_back(range_learner);
                trace.interval_agent.push_back(range_agent);
            }
        }
        const double u_learner = u_next(up, u_prev_learner, B);
        const double u_agent = u_next(up, u_prev_agent, B);
        u_prev_learner = u_learner;
        u_prev_agent = u_agent;
        for (int j : active) {
            const auto ju = static_cast<std::size_t>(j);
            beliefs[ju].update(decoded[ju], u_learner);
            agent_beliefs[ju].update(mirror_decoded[ju], u_agent);
        }
        return u_learner;
    }

    // Unbounded rewards: round 1 sends the empirical mean on an absolute grid
    // of step epsilon with the variable-length code, which bounds the decode
    // error by epsilon/2 without needing a reward range. The width recursion
    // then starts from U(1,delta) = U'(1,delta) + e1.
    double communicate_bootstrap(int i, double up) {
        const double eps = detail::kBootstrapEpsilon;
        const double e1 = eps / 2.0 + up;
        const double u1 = up + e1;
        for (int j : active) {
            const auto ju = static_cast<std::size_t>(j);
            const auto d = static_cast<std::int64_t>(
                std::llround(agents[ju].mu_hat / eps));
            log_message(i, j, encode_offset(d));
            const double decoded = static_cast<double>(d) * eps;
            beliefs[ju].update(decoded, u1);
            agent_beliefs[ju].update(decoded, u1);
        }
        u_prev_learner = u_prev_agent = u1;
        return u1;
    }

    double communicate_fed_sel(int i, double up) {
        const double lo = inst.support->lo;
        const double range = inst.support->width();
        auto n_bins = static_cast<std::int64_t>(std::ceil(range / up));
        if (n_bins < 1) n_bins = 1;
        int bits = 1;
        while ((std::int64_t{1} << bits) < n_bins) ++bits;
        if (bits > 31) throw protocol_error("fed-sel payload exceeds 31 bits");
        for (int j : active) {
            const auto ju = static_cast<std::size_t>(j);
            auto k = static_cast<std::int64_t>(std::floor((agents[ju].mu_hat - lo) / up));
            if (k < 0) k = 0;
            if (k > n_bins - 1) k = n_bins - 1;
            const BitString s(static_cast<std::uint32_t>(k), bits);
            log_message(i, j, to_bits(s));
            const double decoded = lo + (static_cast<double>(s.value) + 0.5) * up;
            beliefs[ju].update(decoded, detail::kFedSelWidthFactor * up);
        }
        return detail::kFedSelWidthFactor * up;
    }

    double communicate_quban(int i, double up) {
        const double step = detail::kQubanStepScale * config.epsilon * up;
        const double width = (1.0 + config.epsilon / 2.0) * up;
        for (int j : active) {
            const auto ju = static_cast<std::size_t>(j);
            const auto d = static_cast<std::int64_t>(
                std::llround((agents[ju].mu_hat - est_agent[ju]) / step));
            log_message(i, j, encode_offset(d));
            est_learner[ju] += static_cast<double>(d) * step;
            est_agent[ju] += static_cast<double>(d) * step;
            beliefs[ju].update(est_learner[ju], width);
        }
        return width;
    }
};

} // namespace

std::vector<int> eliminate(const std::vector<int>& active, const std::vector<ArmBelief>& beliefs) {
    double max_lcb = -std::numeric_limits<double>::infinity();
    for (int j : active) max_lcb = std::max(max_lcb, beliefs[static_cast<std::size_t>(j)].lcb);
    std::vector<int> out;
    out.reserve(active.size());
    for (int j : active)
        if (!(max_lcb >= beliefs[static_cast<std::size_t>(j)].ucb)) out.push_back(j);
    return out;
}

TrialResult run_icq_se(const BanditInstance& inst, const TrialConfig& config,
                       const RunOptions& options) {
    TrialConfig c = config;
    c.algorithm = Algorithm::IcqSe;
    return Runner(inst, c, options).run();
}

TrialResult run_se_unquantized(const BanditInstance& inst, const TrialConfig& config,
                               const RunOptions& options) {
    TrialConfig c = config;
    c.algorithm = Algorithm::UnquantizedSe;
    return Runner(inst, c, options).run();
}

TrialResult run_fed_sel(const BanditInstance& inst, const TrialConfig& config,
                        const RunOptions& options) {
    TrialConfig c = config;
    c.algorithm = Algorithm::FedSel;
    return Runner(inst, c, options).run();
}

TrialResult run_quban_se(const BanditInstance& inst, const TrialConfig& config,
                         const RunOptions& options) {
    TrialConfig c = config;
    c.algorithm = Algorithm::QubanSe;
    return Runner(inst, c, options).run();
}

TrialResult run_trial(const BanditInstance& inst, const TrialConfig& config,
                      const RunOptions& options) {
    return Runner(inst, config, options).run();
}

} // namespace icq
