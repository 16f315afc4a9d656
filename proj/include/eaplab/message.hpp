#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "eaplab/crypto.hpp"
#include "eaplab/errors.hpp"

namespace eaplab {

// Both protocol variants share one message vocabulary. Wire format:
// 1-byte type tag, 2-byte big-endian payload length, payload.

struct Start {
    friend bool operator==(const Start&, const Start&) = default;
};

struct IdentityRequest {
    IdByte id = 0;
    friend bool operator==(const IdentityRequest&, const IdentityRequest&) = default;
};

struct IdentityResponse {
    IdByte id = 0;
    std::string username;  // non-empty, at most 64 bytes
    friend bool operator==(const IdentityResponse&, const IdentityResponse&) = default;
};

/// Baseline step 5: plaintext challenge alongside ID+1.
struct ChallengePlain {
    IdByte id_plus1 = 0;
    Challenge challenge;
    friend bool operator==(const ChallengePlain&, const ChallengePlain&) = default;
};

/// Hardened step 5: the masked challenge carrier hash(ID^Challenge)^Password.
struct ChallengeMasked {
    IdByte id = 0;
    Block16 request{};
    friend bool operator==(const ChallengeMasked&, const ChallengeMasked&) = default;
};

struct BaselineResponse {
    Digest128 digest{};
    friend bool operator==(const BaselineResponse&, const BaselineResponse&) = default;
};

struct HardenedResponse {
    Digest128 digest{};
    Timestamp timestamp;
    friend bool operator==(const HardenedResponse&, const HardenedResponse&) = default;
};

struct Verdict {
    bool accept = false;
    friend bool operator==(const Verdict&, const Verdict&) = default;
};

using Message = std::variant<Start, IdentityRequest, IdentityResponse, ChallengePlain,
                             ChallengeMasked, BaselineResponse, HardenedResponse, Verdict>;

constexpr std::size_t kMaxUsernameBytes = 64;
constexpr std::size_t kFrameHeaderBytes = 3;

/// Encodes a full frame: tag, length, payload.
std::vector<std::uint8_t> encode_message(const Message& m);

/// Decodes a full frame; throws DecodeError on unknown tag, truncated or
/// oversized payload, or trailing bytes.
Message decode_message(std::span<const std::uint8_t> frame);

/// Payload length promised by a 3-byte frame header.
std::size_t frame_payload_length(std::span<const std::uint8_t, kFrameHeaderBytes> header);

const char* message_type_name(const Message& m);

} // namespace eaplab
