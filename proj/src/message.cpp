#include "eaplab/message.hpp"

namespace eaplab {

namespace {

enum : std::uint8_t {
    kTagStart = 0x01,
    kTagIdentityRequest = 0x02,
    kTagIdentityResponse = 0x03,
    kTagChallengePlain = 0x04,
    kTagChallengeMasked = 0x05,
    kTagBaselineResponse = 0x06,
    kTagHardenedResponse = 0x07,
    kTagVerdict = 0x08,
};

struct Encoder {
    std::vector<std::uint8_t> payload;

    void byte(std::uint8_t b) { payload.push_back(b); }
    void block(const Block16& b) { payload.insert(payload.end(), b.begin(), b.end()); }
    void u64_be(std::uint64_t v) {
        for (int i = 7; i >= 0; --i) payload.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
};

std::uint8_t tag_of(const Message& m) {
    return std::visit(
        [](const auto& v) -> std::uint8_t {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Start>) return kTagStart;
            if constexpr (std::is_same_v<T, IdentityRequest>) return kTagIdentityRequest;
            if constexpr (std::is_same_v<T, IdentityResponse>) return kTagIdentityResponse;
            if constexpr (std::is_same_v<T, ChallengePlain>) return kTagChallengePlain;
            if constexpr (std::is_same_v<T, ChallengeMasked>) return kTagChallengeMasked;
            if constexpr (std::is_same_v<T, BaselineResponse>) return kTagBaselineResponse;
            if constexpr (std::is_same_v<T, HardenedResponse>) return kTagHardenedResponse;
            if constexpr (std::is_same_v<T, Verdict>) return kTagVerdict;
        },
        m);
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint8_t byte() {
        require(1);
        return data_[pos_++];
    }
    Block16 block() {
        require(16);
        Block16 out;
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(pos_), 16, out.begin());
        pos_ += 16;
        return out;
    }
    std::uint64_t u64_be() {
        require(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | data_[pos_++];
        return v;
    }
    std::string rest() {
        std::string out(data_.begin() + static_cast<std::ptrdiff_t>(pos_), data_.end());
        pos_ = data_.size();
        return out;
    }
    void expect_done(const char* what) {
        if (pos_ != data_.size()) throw DecodeError(std::string("trailing bytes in ") + what);
    }

private:
    void require(std::size_t n) {
        if (data_.size() - pos_ < n) throw DecodeError("truncated payload");
    }

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

} // namespace

std::vector<std::uint8_t> encode_message(const Message& m) {
    Encoder enc;
    std::visit(
        [&enc](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Start>) {
                // empty payload
            } else if constexpr (std::is_same_v<T, IdentityRequest>) {
                enc.byte(v.id);
            } else if constexpr (std::is_same_v<T, IdentityResponse>) {
                enc.byte(v.id);
                enc.payload.insert(enc.payload.end(), v.username.begin(), v.username.end());
            } else if constexpr (std::is_same_v<T, ChallengePlain>) {
                enc.byte(v.id_plus1);
                enc.block(v.challenge.bytes);
            } else if constexpr (std::is_same_v<T, ChallengeMasked>) {
                enc.byte(v.id);
                enc.block(v.request);
            } else if constexpr (std::is_same_v<T, BaselineResponse>) {
                enc.block(v.digest);
            } else if constexpr (std::is_same_v<T, HardenedResponse>) {
                enc.block(v.digest);
                enc.u64_be(v.timestamp.unix_millis);
            } else if constexpr (std::is_same_v<T, Verdict>) {
                enc.byte(v.accept ? 0x01 : 0x00);
            }
        },
        m);

    std::vector<std::uint8_t> frame;
    frame.reserve(kFrameHeaderBytes + enc.payload.size());
    frame.push_back(tag_of(m));
    frame.push_back(static_cast<std::uint8_t>(enc.payload.size() >> 8));
    frame.push_back(static_cast<std::uint8_t>(enc.payload.size() & 0xff));
    frame.insert(frame.end(), enc.payload.begin(), enc.payload.end());
    return frame;
}

std::size_t frame_payload_length(std::span<const std::uint8_t, kFrameHeaderBytes> header) {
    return (static_cast<std::size_t>(header[1]) << 8) | header[2];
}

Message decode_message(std::span<const std::uint8_t> frame) {
    if (frame.size() < kFrameHeaderBytes) throw DecodeError("frame shorter than header");
    const std::uint8_t tag = frame[0];
    const std::size_t len = frame_payload_length(frame.first<kFrameHeaderBytes>());
    if (frame.size() - kFrameHeaderBytes != len)
        throw DecodeError("frame length does not match header");

    Reader rd(frame.subspan(kFrameHeaderBytes));
    switch (tag) {
        case kTagStart: {
            rd.expect_done("Start");
            return Start{};
        }
        case kTagIdentityRequest: {
            IdentityRequest m{rd.byte()};
            rd.expect_done("IdentityRequest");
            return m;
        }
        case kTagIdentityResponse: {
            IdentityResponse m;
            m.id = rd.byte();
            m.username = rd.rest();
            if (m.username.empty()) throw DecodeError("empty username");
            if (m.username.size() > kMaxUsernameBytes) throw DecodeError("username exceeds 64 bytes");
            return m;
        }
        case kTagChallengePlain: {
            ChallengePlain m;
            m.id_plus1 = rd.byte();
            m.challenge.bytes = rd.block();
            m.challenge.effective_bits = 128;
            rd.expect_done("ChallengePlain");
            return m;
        }
        case kTagChallengeMasked: {
            ChallengeMasked m;
            m.id = rd.byte();
            m.request = rd.block();
            rd.expect_done("ChallengeMasked");
            return m;
        }
        case kTagBaselineResponse: {
            BaselineResponse m{rd.block()};
            rd.expect_done("BaselineResponse");
            return m;
        }
        case kTagHardenedResponse: {
            HardenedResponse m;
            m.digest = rd.block();
            m.timestamp = Timestamp{rd.u64_be()};
            rd.expect_done("HardenedResponse");
            return m;
        }
        case kTagVerdict: {
            const std::uint8_t b = rd.byte();
            rd.expect_done("Verdict");
            if (b > 0x01) throw DecodeError("invalid verdict byte");
            return Verdict{b == 0x01};
        }
        default:
            throw DecodeError("unknown message type tag");
    }
}

const char* message_type_name(const Message& m) {
    return std::visit(
        [](const auto& v) -> const char* {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Start>) return "Start";
            if constexpr (std::is_same_v<T, IdentityRequest>) return "IdentityRequest";
            if constexpr (std::is_same_v<T, IdentityResponse>) return "IdentityResponse";
            if constexpr (std::is_same_v<T, ChallengePlain>) return "ChallengePlain";
            if constexpr (std::is_same_v<T, ChallengeMasked>) return "ChallengeMasked";
            if constexpr (std::is_same_v<T, BaselineResponse>) return "BaselineResponse";
            if constexpr (std::is_same_v<T, HardenedResponse>) return "HardenedResponse";
            if constexpr (std::is_same_v<T, Verdict>) return "Verdict";
        },
        m);
}

} // namespace eaplab
