#pragma once
#include <cstdint>
#include <cstdlib>
#include <vector>

#include "icq/errors.hpp"

namespace icq {

// Self-delimiting code for small signed grid offsets, used by the adaptive
// per-estimate quantizer payloads and the unbounded first-round bootstrap.
//
// A signed offset d is first folded to a nonnegative index n (zigzag):
//   d >= 0 -> 2d,  d < 0 -> -2d - 1,
// then emitted as L zeros, a one, and L literal bits of n, where
// L = ceil(log2(1 + n)). Total length 1 + 2L, so n = 0 costs a single bit and
// the cost grows with the distance from the grid center.

inline std::uint64_t zigzag(std::int64_t d) {
    return d >= 0 ? 2ULL * static_cast<std::uint64_t>(d)
                  : 2ULL * static_cast<std::uint64_t>(-d) - 1ULL;
}

inline std::int64_t unzigzag(std::uint64_t n) {
    return (n & 1ULL) ? -static_cast<std::int64_t>((n + 1ULL) / 2ULL)
                      : static_cast<std::int64_t>(n / 2ULL);
}

inline int ceil_log2_1p(std::uint64_t n) {
    int L = 0;
    while ((1ULL << L) < n + 1ULL) ++L;
    return L;
}

inline int offset_code_length(std::int64_t d) {
    return 1 + 2 * ceil_log2_1p(zigzag(d));
}

inline void encode_offset(std::int64_t d, std::vector<bool>& bits) {
    const std::uint64_t n = zigzag(d);
    const int L = ceil_log2_1p(n);
    for (int k = 0; k < L; ++k) bits.push_back(false);
    bits.push_back(true);
    for (int k = L - 1; k >= 0; --k) bits.push_back((n >> k) & 1ULL);
}

inline std::vector<bool> encode_offset(std::int64_t d) {
    std::vector<bool> bits;
    encode_offset(d, bits);
    return bits;
}

// Decodes one offset starting at bits[pos]; advances pos past the codeword.
inline std::int64_t decode_offset(const std::vector<bool>& bits, std::size_t& pos) {
    int L = 0;
    while (pos < bits.size() && !bits[pos]) {
        ++L;
        ++pos;
    }
    if (pos >= bits.size()) throw protocol_error("truncated offset codeword");
    ++pos; // marker bit
    if (L > 62 || pos + static_cast<std::size_t>(L) > bits.size())
        throw protocol_error("truncated offset codeword payload");
    std::uint64_t n = 0;
    for (int k = 0; k < L; ++k) n = (n << 1) | static_cast<std::uint64_t>(bits[pos++] ? 1 : 0);
    return unzigzag(n);
}

} // namespace icq
