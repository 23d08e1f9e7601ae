#include "icq/wire.hpp"

namespace icq {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

std::uint16_t get_u16(const std::vector<std::uint8_t>& in, std::size_t pos) {
    return static_cast<std::uint16_t>((in[pos] << 8) | in[pos + 1]);
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t pos) {
    return (static_cast<std::uint32_t>(in[pos]) << 24) |
           (static_cast<std::uint32_t>(in[pos + 1]) << 16) |
           (static_cast<std::uint32_t>(in[pos + 2]) << 8) |
           static_cast<std::uint32_t>(in[pos + 3]);
}

constexpr std::size_t kHeaderBytes = 8;

UplinkMessage unpack_at(const std::vector<std::uint8_t>& bytes, std::size_t& pos) {
    if (bytes.size() - pos < kHeaderBytes) throw protocol_error("truncated frame header");
    UplinkMessage msg;
    msg.round = get_u32(bytes, pos);
    msg.arm = get_u16(bytes, pos + 4);
    const std::uint16_t bitlen = get_u16(bytes, pos + 6);
    if (bitlen == 0) throw protocol_error("frame declares empty payload");
    const std::size_t payload_bytes = (static_cast<std::size_t>(bitlen) + 7) / 8;
    if (bytes.size() - pos - kHeaderBytes < payload_bytes)
        throw protocol_error("declared bit length exceeds available bytes");
    msg.payload.resize(bitlen);
    for (std::size_t i = 0; i < bitlen; ++i) {
        const std::uint8_t byte = bytes[pos + kHeaderBytes + i / 8];
        msg.payload[i] = (byte >> (7 - i % 8)) & 1u;
    }
    pos += kHeaderBytes + payload_bytes;
    return msg;
}

} // namespace

std::vector<std::uint8_t> pack(const UplinkMessage& msg) {
    if (msg.payload.empty()) throw protocol_error("cannot pack empty payload");
    if (msg.payload.size() > 0xffff) throw protocol_error("payload exceeds 16-bit length field");
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderBytes + (msg.payload.size() + 7) / 8);
    put_u32(out, msg.round);
    put_u16(out, msg.arm);
    put_u16(out, static_cast<std::uint16_t>(msg.payload.size()));
    std::uint8_t cur = 0;
    int filled = 0;
    for (bool bit : msg.payload) {
        cur = static_cast<std::uint8_t>((cur << 1) | (bit ? 1 : 0));
        if (++filled == 8) {
            out.push_back(cur);
            cur = 0;
            filled = 0;
        }
    }
    if (filled > 0) out.push_back(static_cast<std::uint8_t>(cur << (8 - filled)));
    return out;
}

UplinkMessage unpack(const std::vector<std::uint8_t>& bytes) {
    std::size_t pos = 0;
    UplinkMessage msg = unpack_at(bytes, pos);
    if (pos != bytes.size()) throw protocol_error("trailing bytes after frame");
    return msg;
}

std::vector<UplinkMessage> unpack_stream(const std::vector<std::uint8_t>& bytes) {
    std::vector<UplinkMessage> out;
    std::size_t pos = 0;
    while (pos < bytes.size()) out.push_back(unpack_at(bytes, pos));
    return out;
}

} // namespace icq
