#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "eaplab/md5.hpp"

namespace eaplab {

using IdByte = std::uint8_t;

/// Server nonce. Full width is 16 bytes; effective_bits restricts the entropy
/// for desk-scale attack experiments (128 = production). Interpreted as a
/// big-endian 128-bit integer, all bits at positions >= effective_bits are zero.
struct Challenge {
    Block16 bytes{};
    int effective_bits = 128;

    // effective_bits is experiment bookkeeping, not part of the value.
    friend bool operator==(const Challenge& a, const Challenge& b) { return a.bytes == b.bytes; }
};

/// Secret byte sequence, 1..64 bytes. 16+ bytes is the recommended minimum;
/// shorter passwords are legal but meets_recommended_length() reports them.
class Password {
public:
    explicit Password(std::vector<std::uint8_t> bytes);
    static Password from_text(std::string_view text);

    const std::vector<std::uint8_t>& bytes() const { return bytes_; }
    std::size_t size() const { return bytes_.size(); }

    friend bool operator==(const Password&, const Password&) = default;

private:
    std::vector<std::uint8_t> bytes_;
};

constexpr std::size_t kRecommendedPasswordBytes = 16;

inline bool meets_recommended_length(const Password& p) {
    return p.size() >= kRecommendedPasswordBytes;
}

/// Milliseconds since the Unix epoch.
struct Timestamp {
    std::uint64_t unix_millis = 0;

    friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

Block16 xor128(const Block16& a, const Block16& b);

/// ID occupies the least-significant (final) byte of a zero block.
Block16 widen_id(IdByte id);

/// Truncate-or-zero-pad the password to the 16-byte mask width.
Block16 pad_password(const Password& p);

/// 8 zero bytes, then unix_millis big-endian.
Block16 widen_timestamp(Timestamp t);

IdByte increment_id(IdByte id);

using ChallengeRng = std::mt19937_64;

inline ChallengeRng make_rng(std::uint64_t seed) { return ChallengeRng{seed}; }

/// Uniform over 2^entropy_bits values, high bits zero. Throws
/// std::invalid_argument unless 1 <= entropy_bits <= 128.
Challenge generate_challenge(int entropy_bits, ChallengeRng& rng);

/// Challenge whose big-endian integer value is `value`; used by the
/// challenge-space enumeration. Requires value < 2^effective_bits.
Challenge challenge_from_value(std::uint64_t value, int effective_bits);

/// Big-endian integer value of a low-entropy challenge (effective_bits <= 64).
std::uint64_t challenge_value(const Challenge& c);

} // namespace eaplab
