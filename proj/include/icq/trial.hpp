#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "icq/errors.hpp"
#include "icq/quantizer.hpp"
#include "icq/wire.hpp"

namespace icq {

enum class Algorithm { IcqSe, UnquantizedSe, FedSel, QubanSe };

inline const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::IcqSe: return "icq-se";
        case Algorithm::UnquantizedSe: return "se";
        case Algorithm::FedSel: return "fed-sel";
        case Algorithm::QubanSe: return "quban";
    }
    return "?";
}

struct TrialConfig {
    double delta = 0.1;
    int B = 1;              // bits per ICQ uplink message
    int alpha = 2;          // schedule base
    Algorithm algorithm = Algorithm::IcqSe;
    double epsilon = 2.0;   // QubanSe grid parameter
    int max_rounds = 60;    // safety cap
    std::uint64_t seed = 0;

    // Lemma-style guarantee needs alpha < 2^(2B); the algorithm itself runs
    // for any alpha >= 2, so this is reported rather than enforced.
    bool lemma4_precondition_ok() const {
        return 2 * B >= 63 || static_cast<std::int64_t>(alpha) < (std::int64_t{1} << (2 * B));
    }

    void validate() const {
        if (!(delta > 0.0 && delta < 1.0)) throw parameter_error("delta must lie in (0,1)");
        if (B < 1 || B > 31) throw parameter_error("B must lie in [1,31]");
        if (alpha < 2) throw parameter_error("alpha must be >= 2");
        if (max_rounds < 1) throw parameter_error("max_rounds must be >= 1");
        if (algorithm == Algorithm::QubanSe && !(epsilon > 0.0))
            throw parameter_error("epsilon must be > 0");
    }
};

// Per-trial outcome counters. uplink_bits is -1 for the unquantized baseline,
// whose messages are not bit-constrained.
struct TrialMetrics {
    std::int64_t samples = 0;    // total arm pulls across all agents
    int rounds = 0;              // communication rounds used
    std::int64_t uplink_bits = 0;
    int recommended = -1;
    bool correct = false;
    bool conclusive = true;      // false when the max_rounds cap tripped
    bool best_arm_eliminated = false;

    bool operator==(const TrialMetrics&) const = default;
};

// Per-round trace for property tests: empirical and decoded means, widths,
// active sets, and the quantization intervals computed independently on the
// learner and agent sides.
struct TrajectoryRound {
    int round = 0;
    std::int64_t t = 0;
    std::int64_t pulls = 0;
    double u_prime = 0.0;
    double width = 0.0; // U(i,delta) for ICQ, the belief half-width otherwise
    std::vector<int> active_before;
    std::vector<int> active_after;
    std::vector<double> mu_hat;   // indexed by arm; NaN when inactive
    std::vector<double> mu_tilde; // indexed by arm; NaN when inactive
    std::vector<Interval> interval_learner; // quantization range per active arm
    std::vector<Interval> interval_agent;
};

struct Trajectory {
    std::vector<TrajectoryRound> rounds;
};

struct RunOptions {
    bool record_trajectory = false;
    bool record_messages = false;
};

struct TrialResult {
    TrialMetrics metrics;
    Trajectory trajectory;
    std::vector<UplinkMessage> messages;
};

} // namespace icq
