#include "eaplab/protocol.hpp"

#include <stdexcept>

namespace eaplab {

const char* variant_name(ProtocolVariant v) {
    return v == ProtocolVariant::Baseline ? "baseline" : "hardened";
}

ProtocolVariant variant_from_name(const std::string& name) {
    if (name == "baseline") return ProtocolVariant::Baseline;
    if (name == "hardened") return ProtocolVariant::Hardened;
    throw std::invalid_argument("unknown protocol variant: " + name);
}

Digest128 baseline_response(IdByte id_plus1, const Password& password, const Challenge& challenge) {
    Md5 ctx;
    ctx.update(std::span<const std::uint8_t>(&id_plus1, 1));
    ctx.update(password.bytes());
    ctx.update(challenge.bytes);
    return ctx.finish();
}

Block16 make_request(IdByte id, const Challenge& challenge, const Password& password) {
    const Digest128 c = md5_digest(xor128(widen_id(id), challenge.bytes));
    return xor128(c, pad_password(password));
}

Digest128 recover_c(const Block16& request, const Password& password) {
    return xor128(request, pad_password(password));
}

Digest128 make_response(const Digest128& c, Timestamp t) {
    return md5_digest(xor128(c, widen_timestamp(t)));
}

Digest128 server_expected_response(IdByte id, const Challenge& challenge, Timestamp t) {
    return make_response(md5_digest(xor128(widen_id(id), challenge.bytes)), t);
}

} // namespace eaplab
