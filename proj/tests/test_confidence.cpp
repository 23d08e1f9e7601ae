#include <cmath>
#include <vector>

#include "doctest.h"
#include "icq/confidence.hpp"
#include "icq/theory.hpp"

using namespace icq;

TEST_CASE("u_prime evaluates the subgaussian width") {
    // sigma sqrt(2 ln(4*5*16/0.1) / 4) with ln(3200) = 8.0709...
    const double expected = 0.5 * std::sqrt(2.0 * std::log(3200.0) / 4.0);
    CHECK(u_prime(4, 0.1, 5, 0.5) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(u_prime(4, 0.1, 5, 0.5) == doctest::Approx(1.0044218541521672));

    // Linear in sigma.
    CHECK(u_prime(4, 0.1, 5, 1.0) == doctest::Approx(2.0 * u_prime(4, 0.1, 5, 0.5)));

    // Decreasing along the exponential schedule.
    CHECK(u_prime(std::int64_t{1} << 20, 0.1, 5, 0.5) < u_prime(std::int64_t{1} << 10, 0.1, 5, 0.5));
    double prev = u_prime(2, 0.1, 5, 0.5);
    for (int i = 2; i <= 30; ++i) {
        const double cur = u_prime(std::int64_t{1} << i, 0.1, 5, 0.5);
        CHECK(cur < prev);
        prev = cur;
    }

    CHECK_THROWS_AS(u_prime(0, 0.1, 5, 0.5), parameter_error);
    CHECK_THROWS_AS(u_prime(4, 1.5, 5, 0.5), parameter_error);
}

TEST_CASE("u_next follows the inflation recursion") {
    CHECK(u_next(0.2, 1.0, 1) == doctest::Approx(0.8));
    CHECK(u_next(0.15, 0.8, 1) == doctest::Approx(0.625));
    // Large B collapses to the raw width.
    CHECK(u_next(0.2, 1.0, 40) == doctest::Approx(0.2).epsilon(1e-9));
    // Always exceeds u_prime.
    CHECK(u_next(0.05, 0.01, 3) > 0.05);
}

TEST_CASE("quant_interval widens the previous confidence interval") {
    const Interval iv = quant_interval(0.2, 0.8, 0.1);
    CHECK(iv.lo == doctest::Approx(0.1));
    CHECK(iv.hi == doctest::Approx(0.9));

    // Width identity: 2 (U(i-1) + U'(i)) whenever the inputs come from
    // mu_tilde +- U(i-1); the quantizer's error bound over the interval is
    // then exactly the first term of the U recursion.
    const double u_prev = 0.3, up = 0.07, mu = 0.45;
    const Bounds b = lcb_ucb(mu, u_prev);
    const Interval range = quant_interval(b.lcb, b.ucb, up);
    CHECK(range.width() == doctest::Approx(2.0 * (u_prev + up)));
    for (int B = 1; B <= 10; ++B) {
        const double eb = error_bound(B, range);
        const double recursion_term = u_next(up, u_prev, B) - up;
        CHECK(eb == doctest::Approx(recursion_term).epsilon(1e-12));
    }
}

TEST_CASE("lcb_ucb is symmetric about the decoded mean") {
    const Bounds b = lcb_ucb(0.5, 0.1);
    CHECK(b.lcb == doctest::Approx(0.4));
    CHECK(b.ucb == doctest::Approx(0.6));
    const Bounds z = lcb_ucb(0.0, 0.3);
    CHECK(z.lcb == doctest::Approx(-0.3));
    CHECK(z.ucb == doctest::Approx(0.3));
    CHECK(z.lcb <= 0.0);
    CHECK(z.ucb >= 0.0);
}

namespace {

// Unrolled form of the recursion:
//   U(i) = (1 + 2^-B) sum_j (2^-B)^(i-j) U'(j) + (2^-B)^i (b-a).
double unrolled_u(int i, int B, double delta, int K, double sigma, int alpha, double width0) {
    const double q = std::ldexp(1.0, -B);
    double sum = 0.0;
    double t = 1.0;
    std::vector<double> ups;
    for (int j = 1; j <= i; ++j) {
        t *= alpha;
        ups.push_back(u_prime_real(t, delta, K, sigma));
    }
    for (int j = 1; j <= i; ++j) sum += std::pow(q, i - j) * ups[static_cast<std::size_t>(j - 1)];
    return (1.0 + q) * sum + std::pow(q, i) * width0;
}

} // namespace

TEST_CASE("recursion equals the unrolled geometric sum") {
    const int K = 5;
    const double sigma = 0.5, width0 = 1.0;
    for (int B : {1, 2, 3, 5}) {
        for (int alpha : {2, 3}) {
            for (double delta : {0.1, 1e-4}) {
                double u_prev = width0;
                double t = 1.0;
                for (int i = 1; i <= 25; ++i) {
                    t *= alpha;
                    const double up = u_prime_real(t, delta, K, sigma);
                    u_prev = u_next(up, u_prev, B);
                    const double direct = unrolled_u(i, B, delta, K, sigma, alpha, width0);
                    REQUIRE(std::abs(u_prev - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
                    REQUIRE(u_prev > up); // quantization slack is strictly positive
                }
            }
        }
    }
}

TEST_CASE("width ratio stays below 2c on a small grid") {
    const int K = 5;
    const double sigma = 0.5, width0 = 1.0;
    for (int B : {1, 2, 3}) {
        const std::int64_t amax = std::int64_t{1} << (2 * B);
        for (int alpha = 2; alpha < amax; ++alpha) {
            const double dm = delta_max(K, alpha, 0.0, 1.0, sigma);
            const double delta = std::min(0.1, dm / 2.0);
            const double c_loose = c_constant(B, alpha);
            // The recursion's own derivation gives the tighter (1 + 2^-B) factor.
            const double c_tight = (1.0 + std::ldexp(1.0, -B)) * std::ldexp(1.0, B) /
                                   (std::ldexp(1.0, B) - std::sqrt(alpha));
            double u_prev = width0;
            double t = 1.0;
            for (int i = 1; i <= 30; ++i) {
                t *= alpha;
                const double up = u_prime_real(t, delta, K, sigma);
                u_prev = u_next(up, u_prev, B);
                REQUIRE(u_prev <= 2.0 * c_loose * up);
                REQUIRE(u_prev <= 2.0 * c_tight * up);
            }
        }
    }
}

TEST_CASE("confidence state advances round by round") {
    auto st = ConfidenceState::initial(0.1, 5, 0.5, 2, 1.0);
    CHECK(st.round == 0);
    const auto w1 = st.advance(2);
    CHECK(st.round == 1);
    CHECK(w1.u == doctest::Approx(u_next(w1.u_prime, 1.0, 2)));
    const auto w2 = st.advance(4);
    CHECK(st.round == 2);
    CHECK(w2.u == doctest::Approx(u_next(w2.u_prime, w1.u, 2)));
    CHECK_THROWS_AS(ConfidenceState::initial(0.1, 5, 0.5, 2, 0.0), parameter_error);
}
