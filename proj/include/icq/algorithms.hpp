#pragma once
#include <vector>

#include "icq/bandit.hpp"
#include "icq/confidence.hpp"
#include "icq/trial.hpp"

namespace icq {

// Drops every active arm whose UCB is dominated by the best active LCB
// (rule uses >=). The arm attaining the max LCB always survives, so the
// result is never empty. Removed arms stay removed; stale beliefs of removed
// arms are ignored by taking the max over the active set only.
std::vector<int> eliminate(const std::vector<int>& active, const std::vector<ArmBelief>& beliefs);

// Batched successive elimination with the interval quantizer and the
// inflated width recursion. Bounded instances start from U(0,delta) = b - a;
// unbounded instances bootstrap round 1 with the adaptive grid codec
// (epsilon = 2) and resume the recursion from round 2.
TrialResult run_icq_se(const BanditInstance& inst, const TrialConfig& config,
                       const RunOptions& options = {});

// Baseline: same batched schedule, full-precision empirical means, widths
// U'(i,delta). Uplink bits are reported as the -1 sentinel.
TrialResult run_se_unquantized(const BanditInstance& inst, const TrialConfig& config,
                               const RunOptions& options = {});

// Baseline: the reward range [a,b] is cut into bins of length U'(i,delta)
// and the empirical mean is sent as its bin index (payload grows as U'
// shrinks). Bounded instances only.
TrialResult run_fed_sel(const BanditInstance& inst, const TrialConfig& config,
                        const RunOptions& options = {});

// Baseline: per-round adaptive grid centered at the learner's current
// estimate of each arm; offsets are sent with the variable-length code, so
// values close to the estimate cost fewer bits. Works on any instance.
TrialResult run_quban_se(const BanditInstance& inst, const TrialConfig& config,
                         const RunOptions& options = {});

// Dispatch on config.algorithm.
TrialResult run_trial(const BanditInstance& inst, const TrialConfig& config,
                      const RunOptions& options = {});

namespace detail {
// Fed-SEL belief half-width, as a multiple of U'(i,delta). The decoded bin
// midpoint is within half a bin of the empirical mean, so U' plus half a bin
// keeps the interval valid.
inline constexpr double kFedSelWidthFactor = 1.5;
// QubanSe grid step, as a fraction of epsilon * U'(i,delta). Any value <= 1
// keeps |decoded - empirical| <= (epsilon/2) U', matching the inflated width.
inline constexpr double kQubanStepScale = 0.25;
// Epsilon used by the unbounded first-round bootstrap.
inline constexpr double kBootstrapEpsilon = 2.0;
} // namespace detail

} // namespace icq
