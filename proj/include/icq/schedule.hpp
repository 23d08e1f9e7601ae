#pragma once
#include <cstdint>

#include "icq/errors.hpp"

namespace icq {

// Exponentially sparse pull schedule: cumulative pulls per active arm are
// t(i) = alpha^i for rounds i >= 1, with t(0) = 0 so that b(1) = alpha.
struct Schedule {
    int alpha = 2;

    explicit Schedule(int a) : alpha(a) {
        if (a < 2) throw parameter_error("schedule base alpha must be >= 2");
    }

    std::int64_t t(int i) const {
        if (i < 0) throw parameter_error("schedule round must be >= 0");
        if (i == 0) return 0;
        std::int64_t v = 1;
        for (int k = 0; k < i; ++k) {
            if (v > kMaxT / alpha) throw schedule_error("schedule overflow: alpha^i too large");
            v *= alpha;
        }
        return v;
    }

    std::int64_t b(int i) const {
        if (i < 1) throw parameter_error("schedule pull count needs i >= 1");
        return t(i) - t(i - 1);
    }

private:
    static constexpr std::int64_t kMaxT = std::int64_t{1} << 62;
};

} // namespace icq
