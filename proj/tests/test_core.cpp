#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "icq/bandit.hpp"

using namespace icq;

TEST_CASE("gaussian hardness instances place one arm at delta") {
    const auto inst = make_instance(InstanceKind::GaussianHardness, 5, 42, 0.5);
    auto means = inst.means;
    std::sort(means.begin(), means.end());
    CHECK(means[4] == doctest::Approx(0.5));
    for (int j = 0; j < 4; ++j) CHECK(means[static_cast<std::size_t>(j)] + 0.0 <= 0.5);
    const auto g = gaps(inst);
    int zeros = 0;
    for (double d : g) {
        if (d == 0.0)
            ++zeros;
        else
            CHECK(d == doctest::Approx(0.5));
    }
    CHECK(zeros == 1);
    CHECK(!inst.degenerate());
    CHECK(inst.sigma_cb == doctest::Approx(0.125));
    CHECK(!inst.bounded());
}

TEST_CASE("zero-gap hardness instances are flagged degenerate") {
    const auto inst = make_instance(InstanceKind::GaussianHardness, 5, 7, 0.0);
    for (double m : inst.means) CHECK(m == 0.0);
    CHECK(inst.degenerate());
}

TEST_CASE("instance generation is deterministic in the seed") {
    const auto a = make_instance(InstanceKind::BetaRandom, 5, 1234);
    const auto b = make_instance(InstanceKind::BetaRandom, 5, 1234);
    const auto c = make_instance(InstanceKind::BetaRandom, 5, 1235);
    CHECK(a.means == b.means);
    CHECK(a.means != c.means);
    CHECK(a.support.has_value());
    CHECK(a.sigma_cb == doctest::Approx(0.5));
    for (double m : a.means) {
        CHECK(m > 0.0);
        CHECK(m < 1.0);
    }
}

TEST_CASE("gaussian random means stay inside the sorted interval") {
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        const auto inst = make_instance(InstanceKind::GaussianRandomMeans, 5, seed);
        CHECK(!inst.bounded());
        CHECK(inst.sigma_cb == doctest::Approx(0.125));
        for (const auto& m : inst.models) CHECK(m.p2 == doctest::Approx(0.125));
    }
}

TEST_CASE("make_instance rejects bad parameters") {
    CHECK_THROWS_AS(make_instance(InstanceKind::BetaRandom, 1, 0), parameter_error);
    CHECK_THROWS_AS(make_instance(InstanceKind::GaussianHardness, 5, 0, 1.5), parameter_error);
    CHECK_THROWS_AS(make_instance(InstanceKind::GaussianHardness, 5, 0, -0.1), parameter_error);
}

TEST_CASE("sample_reward matches the model moments") {
    const int n = 100000;

    // Gaussian(0, 0.125): the CLT bound 3 * 0.125 / sqrt(n) is ~0.0012.
    BanditInstance inst;
    inst.K = 2;
    inst.models = {RewardModel::gaussian(0.0, 0.125), RewardModel::bounded_beta(0.7)};
    inst.means = {0.0, 0.7};
    inst.sigma_cb = 0.5;
    inst.validate();

    Rng rng(2024);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += sample_reward(inst, 0, rng);
    CHECK(std::abs(sum / n) < 0.005);

    // Beta(0.7, 0.3): mean 0.7, support [0,1].
    double bsum = 0.0;
    for (int k = 0; k < n; ++k) {
        const double r = sample_reward(inst, 1, rng);
        REQUIRE(r >= 0.0);
        REQUIRE(r <= 1.0);
        bsum += r;
    }
    CHECK(std::abs(bsum / n - 0.7) < 0.01);

    CHECK_THROWS_AS(sample_reward(inst, 2, rng), parameter_error);
}

TEST_CASE("batch_mean agrees with per-draw sampling in distribution") {
    // Gaussian batches are drawn exactly; check the first two moments.
    const auto model = RewardModel::gaussian(1.0, 0.5);
    Rng rng(55);
    const int n = 20000;
    const std::int64_t batch = 16;
    double sum = 0.0, sq = 0.0;
    for (int k = 0; k < n; ++k) {
        const double m = model.batch_mean(batch, rng);
        sum += m;
        sq += m * m;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean - 1.0) < 0.01);
    CHECK(var == doctest::Approx(0.25 / 16.0).epsilon(0.05));
}

TEST_CASE("gaps subtract from the best mean") {
    BanditInstance inst;
    inst.K = 3;
    inst.models = {RewardModel::gaussian(0.9, 0.1), RewardModel::gaussian(0.2, 0.1),
                   RewardModel::gaussian(0.5, 0.1)};
    inst.means = {0.9, 0.2, 0.5};
    inst.sigma_cb = 0.1;
    inst.validate();
    const auto g = gaps(inst);
    CHECK(g[0] == doctest::Approx(0.0));
    CHECK(g[1] == doctest::Approx(0.7));
    CHECK(g[2] == doctest::Approx(0.4));
    CHECK(*std::min_element(g.begin(), g.end()) == 0.0);

    inst.means = {0.3, 0.3, 0.3};
    for (double d : gaps(inst)) CHECK(d == 0.0);

    inst.K = 2;
    inst.models = {RewardModel::gaussian(0.0, 0.1), RewardModel::gaussian(0.25, 0.1)};
    inst.means = {0.0, 0.25};
    const auto g2 = gaps(inst);
    CHECK(g2[0] == doctest::Approx(0.25));
    CHECK(g2[1] == doctest::Approx(0.0));
}

TEST_CASE("reward models validate their parameters") {
    CHECK_THROWS_AS(RewardModel::bounded_beta(0.0), parameter_error);
    CHECK_THROWS_AS(RewardModel::bounded_beta(1.0), parameter_error);
    CHECK_THROWS_AS(RewardModel::gaussian(0.0, 0.0), parameter_error);
}
