#pragma once
#include <cmath>
#include <cstdint>

#include "icq/errors.hpp"
#include "icq/quantizer.hpp"

namespace icq {

// Confidence width for the raw empirical mean after t_i cumulative pulls:
//   U'(i,delta) = sigma * sqrt(2 ln(4 K t_i^2 / delta) / t_i).
// Logs are natural throughout. The real-argument overload serves bound
// evaluators that track t beyond the integer width.
inline double u_prime_real(double t, double delta, int K, double sigma) {
    if (!(t >= 1.0)) throw parameter_error("u_prime: t_i must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw parameter_error("u_prime: delta must lie in (0,1)");
    if (K < 2) throw parameter_error("u_prime: K must be >= 2");
    if (!(sigma > 0.0)) throw parameter_error("u_prime: sigma must be > 0");
    const double arg = 4.0 * static_cast<double>(K) * t * t / delta;
    if (arg <= 1.0) throw std::domain_error("u_prime: log argument <= 1");
    return sigma * std::sqrt(2.0 * std::log(arg) / t);
}

inline double u_prime(std::int64_t t_i, double delta, int K, double sigma) {
    if (t_i < 1) throw parameter_error("u_prime: t_i must be >= 1");
    return u_prime_real(static_cast<double>(t_i), delta, K, sigma);
}

// Inflated width for the decoded mean:
//   U(i,delta) = (U'(i,delta) + U(i-1,delta)) / 2^B + U'(i,delta),
// with U(0,delta) = b - a for bounded rewards. Always exceeds U'(i,delta).
inline double u_next(double u_prime_i, double u_prev, int B) {
    if (!(u_prime_i > 0.0) || !(u_prev > 0.0))
        throw parameter_error("u_next: widths must be positive");
    if (B < 1) throw parameter_error("u_next: B must be >= 1");
    return (u_prime_i + u_prev) / std::ldexp(1.0, B) + u_prime_i;
}

// Quantization range for round i, from the previous round's confidence
// interval widened by U'(i,delta) on both sides. Its width is
// 2 (U(i-1,delta) + U'(i,delta)), so the quantizer's error bound over it is
// exactly the first term of the U recursion.
inline Interval quant_interval(double lcb_prev, double ucb_prev, double u_prime_i) {
    if (!(lcb_prev < ucb_prev)) throw parameter_error("quant_interval: lcb must be < ucb");
    if (!(u_prime_i > 0.0)) throw parameter_error("quant_interval: u_prime must be > 0");
    return Interval{lcb_prev - u_prime_i, ucb_prev + u_prime_i};
}

struct Bounds {
    double lcb;
    double ucb;
};

inline Bounds lcb_ucb(double mu_tilde, double u_i) {
    if (!(u_i > 0.0)) throw parameter_error("lcb_ucb: width must be > 0");
    return {mu_tilde - u_i, mu_tilde + u_i};
}

// Per-arm belief as seen by the learner (and mirrored by the agent).
struct ArmBelief {
    double mu_tilde = 0.0;
    double lcb = 0.0;
    double ucb = 0.0;
    bool active = true;

    void update(double decoded, double u_i) {
        mu_tilde = decoded;
        const Bounds b = lcb_ucb(decoded, u_i);
        lcb = b.lcb;
        ucb = b.ucb;
    }
};

// Scalar state of the width recursion shared by all arms of one trial.
struct ConfidenceState {
    double delta = 0.0;
    int K = 0;
    double sigma = 0.0;
    int B = 0;
    double u_prev = 0.0; // U(round, delta)
    int round = 0;

    static ConfidenceState initial(double delta, int K, double sigma, int B, double u0) {
        if (!(u0 > 0.0)) throw parameter_error("U(0,delta) must be positive");
        return ConfidenceState{delta, K, sigma, B, u0, 0};
    }

    // Advances to round i (which must be round+1) and returns (U'(i), U(i)).
    struct Widths {
        double u_prime;
        double u;
    };
    Widths advance(std::int64_t t_i) {
        const double up = u_prime(t_i, delta, K, sigma);
        const double u = u_next(up, u_prev, B);
        u_prev = u;
        ++round;
        return {up, u};
    }
};

} // namespace icq
