#pragma once
#include <cmath>
#include <cstdint>
#include <string>

#include "icq/errors.hpp"

namespace icq {

// Closed real interval used as the quantization range.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double width() const { return hi - lo; }

    void validate() const {
        if (!(lo < hi)) throw parameter_error("interval must have lo < hi");
    }

    bool operator==(const Interval&) const = default;
};

// A payload of exactly `length` bits, MSB first, interpretable as an unsigned
// bin index. Lengths up to 32 cover every payload this codebase emits.
struct BitString {
    std::uint32_t value = 0;
    int length = 0;

    BitString() = default;
    BitString(std::uint32_t v, int len) : value(v), length(len) {
        if (len < 1 || len > 32) throw parameter_error("bit string length out of range");
        if (len < 32 && (v >> len) != 0) throw parameter_error("bit string value exceeds length");
    }

    int bit(int i) const { return (value >> (length - 1 - i)) & 1u; } // i = 0 is the MSB

    std::string to_string() const {
        std::string s(static_cast<std::size_t>(length), '0');
        for (int i = 0; i < length; ++i) s[static_cast<std::size_t>(i)] = bit(i) ? '1' : '0';
        return s;
    }

    static BitString parse(const std::string& s) {
        std::uint32_t v = 0;
        for (char c : s) {
            if (c != '0' && c != '1') throw parameter_error("bit string must be 0/1");
            v = (v << 1) | static_cast<std::uint32_t>(c - '0');
        }
        return BitString(v, static_cast<int>(s.size()));
    }

    bool operator==(const BitString&) const = default;
};

// Index of the bin whose midpoint is nearest to x when iv is split into 2^B
// equal bins. Values outside iv saturate to the extreme bins; a value exactly
// on a bin boundary (equidistant midpoints) takes the lower index.
inline std::uint32_t quantize_index(double x, int B, const Interval& iv) {
    if (B < 1 || B > 31) throw parameter_error("B must lie in [1,31]");
    iv.validate();
    if (!std::isfinite(x)) throw encoding_error("cannot encode non-finite value");
    const double bins = std::ldexp(1.0, B); // 2^B
    const double r = (x - iv.lo) / iv.width() * bins;
    double k = std::ceil(r - 1.0); // nearest midpoint, ties to the lower bin
    if (k < 0.0) k = 0.0;
    if (k > bins - 1.0) k = bins - 1.0;
    return static_cast<std::uint32_t>(k);
}

inline BitString enc(double x, int B, const Interval& iv) {
    return BitString(quantize_index(x, B, iv), B);
}

inline double midpoint(std::uint32_t index, int B, const Interval& iv) {
    const double bins = std::ldexp(1.0, B);
    return iv.lo + (static_cast<double>(index) + 0.5) * iv.width() / bins;
}

inline double dec(const BitString& s, int B, const Interval& iv) {
    if (s.length != B) throw protocol_error("bit string length does not match B");
    iv.validate();
    return midpoint(s.value, B, iv);
}

// Worst-case |dec(enc(x)) - x| over x inside iv: width / 2^(B+1).
inline double error_bound(int B, const Interval& iv) {
    iv.validate();
    return iv.width() / std::ldexp(1.0, B + 1);
}

} // namespace icq
