#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icq/errors.hpp"
#include "icq/rng.hpp"

namespace icq {

// One reward distribution per arm. BoundedBeta(g) is Beta(g, 1-g) on [0,1]
// with mean g; Gaussian(mean, std) is unbounded.
struct RewardModel {
    enum class Kind { BoundedBeta, Gaussian };

    Kind kind = Kind::Gaussian;
    double p1 = 0.0; // BoundedBeta: gamma; Gaussian: mean
    double p2 = 0.0; // Gaussian: std (unused for BoundedBeta)

    static RewardModel bounded_beta(double gamma) {
        if (!(gamma > 0.0 && gamma < 1.0))
            throw parameter_error("BoundedBeta gamma must lie in (0,1)");
        return {Kind::BoundedBeta, gamma, 0.0};
    }

    static RewardModel gaussian(double mean, double std_dev) {
        if (!(std_dev > 0.0))
            throw parameter_error("Gaussian std must be > 0");
        return {Kind::Gaussian, mean, std_dev};
    }

    double mean() const { return p1; }

    bool bounded() const { return kind == Kind::BoundedBeta; }

    double sample(Rng& rng) const {
        if (kind == Kind::BoundedBeta) return rng.next_beta_sub1(p1, 1.0 - p1);
        return p1 + p2 * rng.next_normal();
    }

    // Mean of `n` i.i.d. draws. For Gaussians the batch mean is itself
    // Gaussian, so it is drawn exactly with a single deviate; Beta batches
    // are averaged draw by draw.
    double batch_mean(std::int64_t n, Rng& rng) const {
        if (n <= 0) throw parameter_error("batch size must be positive");
        if (kind == Kind::Gaussian)
            return p1 + p2 / std::sqrt(static_cast<double>(n)) * rng.next_normal();
        double sum = 0.0;
        for (std::int64_t k = 0; k < n; ++k) sum += rng.next_beta_sub1(p1, 1.0 - p1);
        return sum / static_cast<double>(n);
    }
};

struct Support {
    double lo = 0.0;
    double hi = 1.0;
    double width() const { return hi - lo; }
};

// A K-armed instance: reward models, true means, the subgaussian scale used
// by the confidence widths, and the common support when all arms are bounded.
struct BanditInstance {
    int K = 0;
    std::vector<RewardModel> models;
    std::vector<double> means;
    double sigma_cb = 0.0;
    std::optional<Support> support;

    bool bounded() const { return support.has_value(); }

    int best_arm() const {
        return static_cast<int>(std::max_element(means.begin(), means.end()) - means.begin());
    }

    // True when more than one arm attains the max mean (no unique best arm).
    bool degenerate() const {
        const double m = means[static_cast<std::size_t>(best_arm())];
        int hits = 0;
        for (double v : means)
            if (v == m) ++hits;
        return hits > 1;
    }

    void validate() const {
        if (K < 2) throw parameter_error("instance needs K >= 2 arms");
        if (static_cast<int>(models.size()) != K || static_cast<int>(means.size()) != K)
            throw parameter_error("models/means size mismatch");
        if (!(sigma_cb > 0.0)) throw parameter_error("sigma_cb must be > 0");
        if (support) {
            if (!(support->lo < support->hi)) throw parameter_error("support must have lo < hi");
            for (double m : means)
                if (m < support->lo || m > support->hi)
                    throw parameter_error("mean outside declared support");
        }
    }
};

enum class InstanceKind { BetaRandom, GaussianRandomMeans, GaussianHardness };

inline const char* to_string(InstanceKind k) {
    switch (k) {
        case InstanceKind::BetaRandom: return "beta";
        case InstanceKind::GaussianRandomMeans: return "gauss-means";
        case InstanceKind::GaussianHardness: return "gauss-hardness";
    }
    return "?";
}

// Builds the three experiment families.
//  - BetaRandom: Beta(g_j, 1-g_j), g_j ~ U(0,1); sigma_cb = 1/2 on [0,1].
//  - GaussianRandomMeans: std 0.125; means ~ U between 0 and N, N ~ N(0,9).
//    The endpoints are sorted so the interval stays well-defined when N < 0.
//  - GaussianHardness: K-1 arms at 0, one arm at `hardness_delta`, std 0.125.
inline BanditInstance make_instance(InstanceKind kind, int K, std::uint64_t seed,
                                    double hardness_delta = 0.0) {
    if (K < 2) throw parameter_error("make_instance: K must be >= 2");
    Rng rng = fork_rng(seed, 0x1a57a4ceULL);

    BanditInstance inst;
    inst.K = K;
    switch (kind) {
        case InstanceKind::BetaRandom: {
            for (int j = 0; j < K; ++j) {
                double g;
                do {
                    g = rng.next_unit();
                } while (g <= 0.0 || g >= 1.0);
                inst.models.push_back(RewardModel::bounded_beta(g));
                inst.means.push_back(g);
            }
            inst.sigma_cb = 0.5;
            inst.support = Support{0.0, 1.0};
            break;
        }
        case InstanceKind::GaussianRandomMeans: {
            const double n_draw = 3.0 * rng.next_normal();
            const double lo = std::min(0.0, n_draw);
            const double hi = std::max(0.0, n_draw);
            for (int j = 0; j < K; ++j) {
                const double mu = rng.next_uniform(lo, hi);
                inst.models.push_back(RewardModel::gaussian(mu, 0.125));
                inst.means.push_back(mu);
            }
            inst.sigma_cb = 0.125;
            break;
        }
        case InstanceKind::GaussianHardness: {
            if (!(hardness_delta >= 0.0 && hardness_delta <= 1.0))
                throw parameter_error("hardness delta must lie in [0,1]");
            const int best = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(K));
            for (int j = 0; j < K; ++j) {
                const double mu = (j == best) ? hardness_delta : 0.0;
                inst.models.push_back(RewardModel::gaussian(mu, 0.125));
                inst.means.push_back(mu);
            }
            inst.sigma_cb = 0.125;
            break;
        }
    }
    inst.validate();
    return inst;
}

// One i.i.d. draw from the given arm.
inline double sample_reward(const BanditInstance& inst, int arm, Rng& rng) {
    if (arm < 0 || arm >= inst.K) throw parameter_error("sample_reward: arm out of range");
    return inst.models[static_cast<std::size_t>(arm)].sample(rng);
}

// Suboptimality gaps: gap_j = max_k mean_k - mean_j.
inline std::vector<double> gaps(const BanditInstance& inst) {
    const double best = *std::max_element(inst.means.begin(), inst.means.end());
    std::vector<double> out;
    out.reserve(inst.means.size());
    for (double m : inst.means) out.push_back(best - m);
    return out;
}

} // namespace icq
