#include "eaplab/crypto.hpp"

#include <stdexcept>

namespace eaplab {

Password::Password(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {
    if (bytes_.empty() || bytes_.size() > 64)
        throw std::invalid_argument("password must be 1..64 bytes");
}

Password Password::from_text(std::string_view text) {
    return Password(std::vector<std::uint8_t>(text.begin(), text.end()));
}

Block16 xor128(const Block16& a, const Block16& b) {
    Block16 out;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
}

Block16 widen_id(IdByte id) {
    Block16 out{};
    out[15] = id;
    return out;
}

Block16 pad_password(const Password& p) {
    Block16 out{};
    const auto& b = p.bytes();
    for (std::size_t i = 0; i < out.size() && i < b.size(); ++i) out[i] = b[i];
    return out;
}

Block16 widen_timestamp(Timestamp t) {
    Block16 out{};
    for (int i = 0; i < 8; ++i)
        out[8 + i] = static_cast<std::uint8_t>(t.unix_millis >> (8 * (7 - i)));
    return out;
}

IdByte increment_id(IdByte id) {
    return static_cast<IdByte>(id + 1);
}

Challenge generate_challenge(int entropy_bits, ChallengeRng& rng) {
    if (entropy_bits < 1 || entropy_bits > 128)
        throw std::invalid_argument("entropy_bits must be in 1..128");

    std::uint64_t hi = rng();
    std::uint64_t lo = rng();
    if (entropy_bits <= 64) {
        hi = 0;
        if (entropy_bits < 64) lo &= (std::uint64_t{1} << entropy_bits) - 1;
    } else if (entropy_bits < 128) {
        hi &= (std::uint64_t{1} << (entropy_bits - 64)) - 1;
    }

    Challenge c;
    c.effective_bits = entropy_bits;
    for (int i = 0; i < 8; ++i) {
        c.bytes[i] = static_cast<std::uint8_t>(hi >> (8 * (7 - i)));
        c.bytes[8 + i] = static_cast<std::uint8_t>(lo >> (8 * (7 - i)));
    }
    return c;
}

Challenge challenge_from_value(std::uint64_t value, int effective_bits) {
    if (effective_bits < 1 || effective_bits > 128)
        throw std::invalid_argument("effective_bits must be in 1..128");
    if (effective_bits < 64 && value >= (std::uint64_t{1} << effective_bits))
        throw std::invalid_argument("challenge value exceeds effective_bits");

    Challenge c;
    c.effective_bits = effective_bits;
    for (int i = 0; i < 8; ++i)
        c.bytes[8 + i] = static_cast<std::uint8_t>(value >> (8 * (7 - i)));
    return c;
}

std::uint64_t challenge_value(const Challenge& c) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | c.bytes[8 + i];
    return v;
}

} // namespace eaplab
