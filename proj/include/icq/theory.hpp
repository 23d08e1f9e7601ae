#pragma once
#include <cstdint>
#include <vector>

namespace icq {

// Closed-form evaluation of the sample/round/bit complexity guarantees and
// the constants they depend on, plus a brute-force oracle for the per-arm
// critical schedule point.
struct BoundReport {
    double c = 0.0;             // width-ratio constant (1 + 2/2^B) 2^B / (2^B - sqrt(alpha))
    double sample_bound = 0.0;  // sum over suboptimal arms of the per-arm term
    double round_bound = 0.0;   // sum of log_alpha(per-arm term + 1)
    double bit_bound = 0.0;     // B x round_bound
    double unquantized_bound = 0.0; // same shape with the 102 alpha sigma^2 term
    bool delta_ok = false;      // delta below the smallness threshold
    bool log_arg_vacuous = false; // printed log argument <= 1 for some arm
    std::vector<double> per_arm_term;       // printed form: ln(... sqrt(4 K delta) ...)
    std::vector<double> per_arm_term_strict; // ln(... sqrt(4 K / delta) ...) variant
    std::vector<std::int64_t> per_arm_Tj;   // brute-force oracle values (0 for zero gaps)
};

// c = (1 + 2/2^B) 2^B / (2^B - sqrt(alpha)); requires 2 <= alpha < 2^(2B).
double c_constant(int B, int alpha);

// Threshold on delta under which the width-ratio inequality is guaranteed:
// 4 K alpha^2 exp(-(b-a)^2 / (2 sigma^2)).
double delta_max(int K, int alpha, double a, double b, double sigma);

// Lower real branch of the Lambert W function: the root x <= -1 of
// x e^x = y for y in [-1/e, 0). Bracketed bisection to 1e-12; satisfies
// W_{-1}(y) > e/(e-1) ln(-y) strictly for y in (-1/e, 0).
double lambert_w_minus1(double y);

// Smallest t_i = alpha^i with U'(i,delta) <= gap / (8c), found by direct
// search. Throws search_exhausted_error when no i <= 1000 qualifies.
std::int64_t t_j_oracle(double gap, double sigma, int K, double delta, int B, int alpha);

// Evaluates the closed-form complexity guarantees for the given gaps. The
// best arm (first zero gap) is excluded from the sums; any further zero gap
// contributes +infinity (reported, not thrown). support_width feeds the
// delta smallness check and may be 0 for unbounded instances.
BoundReport sample_bound(const std::vector<double>& gap_values, double sigma, int K, double delta,
                         int B, int alpha, double support_width = 0.0);

} // namespace icq
