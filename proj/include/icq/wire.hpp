#pragma once
#include <cstdint>
#include <vector>

#include "icq/errors.hpp"
#include "icq/quantizer.hpp"

namespace icq {

// One agent-to-learner transmission. The payload is the quantizer output:
// exactly B bits for the interval quantizer, variable length for the
// adaptive baselines.
struct UplinkMessage {
    std::uint32_t round = 0;
    std::uint16_t arm = 0;
    std::vector<bool> payload; // MSB first

    bool operator==(const UplinkMessage&) const = default;
};

// One learner-to-agents broadcast. The downlink is not bit-constrained, so it
// is kept as a plain struct and never bit-accounted.
struct DownlinkAction {
    std::uint32_t round = 0;
    std::vector<int> active_set;
    std::int64_t pulls = 0;
};

inline std::vector<bool> to_bits(const BitString& s) {
    std::vector<bool> bits(static_cast<std::size_t>(s.length));
    for (int i = 0; i < s.length; ++i) bits[static_cast<std::size_t>(i)] = s.bit(i) != 0;
    return bits;
}

// Canonical wire frame:
//   round  : u32 big-endian
//   arm    : u16 big-endian
//   bitlen : u16 big-endian
//   payload: bitlen bits MSB-first, zero-padded to a byte boundary
std::vector<std::uint8_t> pack(const UplinkMessage& msg);
UplinkMessage unpack(const std::vector<std::uint8_t>& bytes);

// Parses a concatenation of frames (the --dump-wire file format).
std::vector<UplinkMessage> unpack_stream(const std::vector<std::uint8_t>& bytes);

// Total uplink cost in bits: the sum of payload bit lengths. Frame headers
// are excluded; the metric counts quantizer output bits only.
inline std::int64_t account_bits(const std::vector<UplinkMessage>& log) {
    std::int64_t total = 0;
    for (const auto& m : log) total += static_cast<std::int64_t>(m.payload.size());
    return total;
}

} // namespace icq
