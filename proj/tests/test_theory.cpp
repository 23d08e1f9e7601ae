#include <cmath>
#include <vector>

#include "doctest.h"
#include "icq/errors.hpp"
#include "icq/theory.hpp"

using namespace icq;

TEST_CASE("c_constant evaluates the width-ratio factor") {
    CHECK(c_constant(2, 2) == doctest::Approx(1.5 * 4.0 / (4.0 - std::sqrt(2.0))));
    CHECK(c_constant(2, 2) == doctest::Approx(2.3203772410170407));
    CHECK(c_constant(3, 2) == doctest::Approx(1.25 * 8.0 / (8.0 - std::sqrt(2.0))));
    CHECK(c_constant(3, 2) == doctest::Approx(1.518421542318241));
    CHECK(c_constant(25, 2) == doctest::Approx(1.0).epsilon(1e-6)); // B -> infinity limit

    // Decreasing in B for fixed alpha.
    double prev = c_constant(1, 2);
    for (int B = 2; B <= 10; ++B) {
        const double cur = c_constant(B, 2);
        CHECK(cur < prev);
        prev = cur;
    }

    CHECK_THROWS_AS(c_constant(1, 4), std::domain_error);  // alpha = 2^(2B)
    CHECK_THROWS_AS(c_constant(2, 16), std::domain_error);
    CHECK_THROWS_AS(c_constant(2, 1), std::domain_error);
}

TEST_CASE("delta_max evaluates the smallness threshold") {
    CHECK(delta_max(5, 2, 0.0, 1.0, 0.5) == doctest::Approx(80.0 * std::exp(-2.0)));
    CHECK(delta_max(5, 2, 0.0, 1.0, 0.5) == doctest::Approx(10.826822658929016));
    CHECK(delta_max(10, 2, 0.0, 1.0, 0.5) ==
          doctest::Approx(2.0 * delta_max(5, 2, 0.0, 1.0, 0.5)));
    CHECK(delta_max(5, 2, 0.0, 1.0, 1e-3) < 1e-300); // vanishes as sigma -> 0
}

TEST_CASE("lambert_w_minus1 finds the lower branch") {
    CHECK(lambert_w_minus1(-std::exp(-1.0)) == doctest::Approx(-1.0));
    CHECK(lambert_w_minus1(-0.1) == doctest::Approx(-3.577152063957297).epsilon(1e-9));

    // Root property and branch constraints across the domain.
    for (double y : {-0.3678, -0.3, -0.2, -0.1, -0.05, -1e-3, -1e-6, -1e-12}) {
        const double x = lambert_w_minus1(y);
        REQUIRE(x <= -1.0);
        REQUIRE(std::abs(x * std::exp(x) - y) <= 1e-10);
        // Published lower bound, strict away from the branch point.
        CHECK(x > std::exp(1.0) / (std::exp(1.0) - 1.0) * std::log(-y));
    }

    // Bound check example: both sides evaluated numerically.
    const double lhs = lambert_w_minus1(-0.05);
    const double rhs = std::exp(1.0) / (std::exp(1.0) - 1.0) * std::log(0.05);
    CHECK(lhs > rhs);
    CHECK(rhs == doctest::Approx(-4.739178676779103));

    CHECK_THROWS_AS(lambert_w_minus1(0.1), std::domain_error);
    CHECK_THROWS_AS(lambert_w_minus1(-0.4), std::domain_error);
}

TEST_CASE("t_j_oracle finds the first schedule point under the width target") {
    // A very large gap is met at the first communication round.
    CHECK(t_j_oracle(1e9, 0.5, 5, 0.1, 3, 2) == 2);

    // Nonincreasing in the gap.
    std::int64_t prev = 0;
    for (double gap : {0.05, 0.1, 0.2, 0.4, 0.8}) {
        const std::int64_t t = t_j_oracle(gap, 0.5, 5, 0.1, 3, 2);
        if (prev != 0) CHECK(t <= prev);
        prev = t;
    }

    CHECK_THROWS_AS(t_j_oracle(0.0, 0.5, 5, 0.1, 3, 2), parameter_error);
}

TEST_CASE("per-arm oracle values stay under the closed-form terms") {
    // The strict-form term dominates alpha * t_real >= T_j for every grid
    // point; checked here on a spot grid, exhaustively in the acceptance run.
    for (int B : {1, 2, 3, 4}) {
        const std::int64_t amax = std::int64_t{1} << (2 * B);
        for (int alpha = 2; alpha < amax; alpha += (B >= 4 ? 37 : 1)) {
            for (double gap : {0.25, 0.5, 1.0}) {
                const auto rep = sample_bound({0.0, gap}, 0.5, 5, 0.1, B, alpha, 1.0);
                const auto tj = rep.per_arm_Tj[1];
                REQUIRE(static_cast<double>(tj) <= rep.per_arm_term_strict[1]);
            }
        }
    }
}

TEST_CASE("sample_bound aggregates the per-arm terms") {
    const std::vector<double> g = {0.0, 0.5, 0.5, 0.5, 0.5};
    const auto rep = sample_bound(g, 0.125, 5, 0.1, 3, 2, 0.0);
    CHECK(rep.c == doctest::Approx(c_constant(3, 2)));
    CHECK(rep.per_arm_term.size() == 5);
    CHECK(rep.per_arm_term[0] == 0.0);
    CHECK(rep.sample_bound ==
          doctest::Approx(rep.per_arm_term[1] + rep.per_arm_term[2] + rep.per_arm_term[3] +
                          rep.per_arm_term[4]));
    CHECK(rep.round_bound > 0.0);
    CHECK(rep.bit_bound == doctest::Approx(3.0 * rep.round_bound));
    CHECK(std::isfinite(rep.sample_bound));

    // Two zero gaps: the extra one reports an infinite requirement.
    const auto degen = sample_bound({0.0, 0.0, 0.5}, 0.125, 3, 0.1, 3, 2);
    CHECK(std::isinf(degen.sample_bound));

    // Doubling the gap cuts the leading term at least fourfold (away from
    // the vacuous-log regime).
    const auto lo = sample_bound({0.0, 0.1}, 0.5, 5, 0.1, 3, 2);
    const auto hi = sample_bound({0.0, 0.2}, 0.5, 5, 0.1, 3, 2);
    CHECK((lo.per_arm_term[1] - 1.0) / (hi.per_arm_term[1] - 1.0) >= 4.0);

    // The unquantized guarantee is never above the quantized one.
    for (double gap : {0.1, 0.3, 0.6, 1.0}) {
        for (int B : {2, 3, 4}) {
            const auto rep2 = sample_bound({0.0, gap}, 0.5, 5, 0.1, B, 2);
            if (!rep2.log_arg_vacuous) CHECK(rep2.unquantized_bound <= rep2.sample_bound);
        }
    }

    // A huge gap drives the per-arm term toward its additive constant.
    const auto far = sample_bound({0.0, 1e8}, 0.5, 5, 0.1, 3, 2);
    CHECK(far.per_arm_term[1] == doctest::Approx(1.0).epsilon(0.05));
    CHECK(far.log_arg_vacuous); // and flags the vacuous log argument
}
