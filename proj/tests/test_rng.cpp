#include <cmath>

#include "doctest.h"
#include "icq/rng.hpp"

using namespace icq;

TEST_CASE("streams are deterministic and fork independently") {
    Rng a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
    }
    CHECK(a.next_u64() != c.next_u64());

    Rng f1 = fork_rng(42, 1), f2 = fork_rng(42, 2), f1b = fork_rng(42, 1);
    CHECK(f1.next_u64() == f1b.next_u64());
    CHECK(f1.next_u64() != f2.next_u64());
    CHECK(mix_seed(1, 2) != mix_seed(2, 1));
}

TEST_CASE("uniform draws cover [0,1)") {
    Rng rng(7);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.next_unit();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("normal draws match the first two moments") {
    Rng rng(11);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.next_normal();
        sum += z;
        sq += z * z;
    }
    CHECK(sum / n == doctest::Approx(0.0).epsilon(0.02));
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(sq / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("beta draws stay in (0,1) with mean gamma") {
    Rng rng(13);
    for (double g : {0.1, 0.5, 0.9}) {
        const int n = 100000;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = rng.next_beta_sub1(g, 1.0 - g);
            REQUIRE(x >= 0.0);
            REQUIRE(x <= 1.0);
            sum += x;
        }
        CHECK(sum / n == doctest::Approx(g).epsilon(0.02));
    }
}
