#include "icq/theory.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "icq/confidence.hpp"
#include "icq/errors.hpp"

namespace icq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double pow2(int B) { return std::ldexp(1.0, B); }
} // namespace

double c_constant(int B, int alpha) {
    if (B < 1) throw std::domain_error("c_constant: B must be >= 1");
    if (alpha < 2) throw std::domain_error("c_constant: alpha must be >= 2");
    const double limit = std::ldexp(1.0, 2 * B); // 2^(2B)
    if (static_cast<double>(alpha) >= limit)
        throw std::domain_error("c_constant: requires alpha < 2^(2B)");
    const double twoB = pow2(B);
    return (1.0 + 2.0 / twoB) * twoB / (twoB - std::sqrt(static_cast<double>(alpha)));
}

double delta_max(int K, int alpha, double a, double b, double sigma) {
    if (K < 2) throw parameter_error("delta_max: K must be >= 2");
    if (alpha < 2) throw parameter_error("delta_max: alpha must be >= 2");
    if (!(b > a)) throw parameter_error("delta_max: requires b > a");
    if (!(sigma > 0.0)) throw parameter_error("delta_max: sigma must be > 0");
    const double w = b - a;
    return 4.0 * static_cast<double>(K) * static_cast<double>(alpha) * static_cast<double>(alpha) *
           std::exp(-w * w / (2.0 * sigma * sigma));
}

double lambert_w_minus1(double y) {
    const double inv_e = std::exp(-1.0);
    if (!(y < 0.0) || y < -inv_e - 1e-15)
        throw std::domain_error("lambert_w_minus1: y must lie in [-1/e, 0)");
    if (y <= -inv_e) return -1.0; // double root at the branch point

    const auto f = [y](double x) { return x * std::exp(x) - y; };
    // The known lower bound e/(e-1) ln(-y) sits below the root; back off one
    // more unit to guarantee a sign change, then bisect.
    double lo = std::exp(1.0) / (std::exp(1.0) - 1.0) * std::log(-y) - 1.0;
    double hi = -1.0;
    // x e^x decreases on (-inf,-1], so f(lo) > 0 >= f(hi).
    while (f(lo) <= 0.0) lo -= 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, -lo); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::int64_t t_j_oracle(double gap, double sigma, int K, double delta, int B, int alpha) {
    if (!(gap > 0.0)) throw parameter_error("t_j_oracle: gap must be > 0");
    const double c = c_constant(B, alpha);
    const double target = gap / (8.0 * c);
    double t = 1.0;
    for (int i = 1; i <= 1000; ++i) {
        t *= static_cast<double>(alpha);
        if (u_prime_real(t, delta, K, sigma) <= target) {
            if (t > 9.0e18) throw search_exhausted_error("t_j_oracle: t exceeds integer width");
            return static_cast<std::int64_t>(t);
        }
    }
    throw search_exhausted_error("t_j_oracle: no i <= 1000 satisfies the width condition");
}

BoundReport sample_bound(const std::vector<double>& gap_values, double sigma, int K, double delta,
                         int B, int alpha, double support_width) {
    if (!(delta > 0.0 && delta < 1.0)) throw parameter_error("sample_bound: delta in (0,1)");
    if (!(sigma > 0.0)) throw parameter_error("sample_bound: sigma must be > 0");

    BoundReport rep;
    rep.c = c_constant(B, alpha);
    rep.delta_ok = support_width > 0.0
                       ? delta < delta_max(K, alpha, 0.0, support_width, sigma)
                       : true;

    const double c2s2 = rep.c * rep.c * sigma * sigma;
    const double a_dbl = static_cast<double>(alpha);
    const double root_4kd = std::sqrt(4.0 * static_cast<double>(K) * delta);
    const double root_4k_over_d = std::sqrt(4.0 * static_cast<double>(K) / delta);

    double total = 0.0;
    double rounds = 0.0;
    double unquantized = 0.0;
    bool skipped_best = false;
    for (double gap : gap_values) {
        if (gap == 0.0 && !skipped_best) {
            skipped_best = true; // the best arm does not appear in the sum
            rep.per_arm_term.push_back(0.0);
            rep.per_arm_term_strict.push_back(0.0);
            rep.per_arm_Tj.push_back(0);
            continue;
        }
        if (!(gap > 0.0)) {
            rep.per_arm_term.push_back(kInf);
            rep.per_arm_term_strict.push_back(kInf);
            rep.per_arm_Tj.push_back(0);
            total = kInf;
            rounds = kInf;
            unquantized = kInf;
            continue;
        }
        const double g2 = gap * gap;
        const double lead = 410.0 * a_dbl * c2s2 / g2;
        const double arg_printed = 256.0 * c2s2 * root_4kd / g2;
        const double arg_strict = 256.0 * c2s2 * root_4k_over_d / g2;
        if (arg_printed <= 1.0) rep.log_arg_vacuous = true;
        const double term = lead * std::log(arg_printed) + 1.0;
        const double term_strict = lead * std::log(arg_strict) + 1.0;
        rep.per_arm_term.push_back(term);
        rep.per_arm_term_strict.push_back(term_strict);
        rep.per_arm_Tj.push_back(t_j_oracle(gap, sigma, K, delta, B, alpha));
        total += term;
        rounds += std::log(term + 1.0) / std::log(a_dbl);

        const double uq_arg = 64.0 * sigma * sigma * root_4kd / g2;
        if (uq_arg <= 1.0) rep.log_arg_vacuous = true;
        unquantized += 102.0 * a_dbl * sigma * sigma / g2 * std::log(uq_arg) + 1.0;
    }
    rep.sample_bound = total;
    rep.round_bound = rounds;
    rep.bit_bound = static_cast<double>(B) * rounds;
    rep.unquantized_bound = unquantized;
    return rep;
}

} // namespace icq
