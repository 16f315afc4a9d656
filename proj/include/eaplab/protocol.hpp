#pragma once

#include <string>

#include "eaplab/crypto.hpp"

namespace eaplab {

enum class ProtocolVariant { Baseline, Hardened };

const char* variant_name(ProtocolVariant v);
ProtocolVariant variant_from_name(const std::string& name);  // throws std::invalid_argument

/// Baseline challenge response: MD5 over ID+1, the raw password bytes, and the
/// 16 challenge bytes, concatenated in that order.
Digest128 baseline_response(IdByte id_plus1, const Password& password, const Challenge& challenge);

/// Masked challenge carrier: hash(ID ^ Challenge) ^ Password.
Block16 make_request(IdByte id, const Challenge& challenge, const Password& password);

/// Applicant side unmasking: Request ^ Password = hash(ID ^ Challenge).
Digest128 recover_c(const Block16& request, const Password& password);

/// hash(C ^ TimeStamp).
Digest128 make_response(const Digest128& c, Timestamp t);

/// Server recomputation: hash(hash(ID ^ Challenge) ^ TimeStamp).
Digest128 server_expected_response(IdByte id, const Challenge& challenge, Timestamp t);

} // namespace eaplab
