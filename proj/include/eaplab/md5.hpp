#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace eaplab {

using Block16 = std::array<std::uint8_t, 16>;

/// 16-byte MD5 output.
using Digest128 = Block16;

/// Incremental MD5 (RFC 1321). One-shot callers use md5_digest() below.
class Md5 {
public:
    Md5() { reset(); }

    void reset();
    void update(std::span<const std::uint8_t> data);
    Digest128 finish();

private:
    void compress(const std::uint8_t* block);

    std::array<std::uint32_t, 4> state_{};
    std::uint64_t total_len_ = 0;
    std::array<std::uint8_t, 64> buffer_{};
    std::size_t buffered_ = 0;
};

Digest128 md5_digest(std::span<const std::uint8_t> input);
Digest128 md5_digest(std::string_view input);

} // namespace eaplab
