#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eaplab/harness.hpp"

namespace eaplab {

/// Ordered candidate passwords; attack cost is measured in hash evaluations
/// until the first match, so order is significant.
struct Dictionary {
    std::vector<Password> words;

    std::size_t size() const { return words.size(); }
};

enum class AttackStrategy { BaselineDictionary, HardenedChallengeBruteForce, HardenedTranscriptProbe };

const char* strategy_name(AttackStrategy s);
AttackStrategy strategy_from_name(const std::string& name);  // throws std::invalid_argument

struct AttackReport {
    AttackStrategy strategy = AttackStrategy::BaselineDictionary;
    std::optional<Password> found;
    std::optional<std::size_t> found_index;
    std::uint64_t hash_evaluations = 0;
    std::uint64_t elapsed_millis = 0;
    int entropy_bits = 128;

    /// Single-line key=value record.
    std::string to_kv() const;
    /// Row for the CSV schema below.
    std::string to_csv_row() const;
    static const char* csv_header();  // strategy,found,index,hash_evaluations,elapsed_millis,entropy_bits
};

constexpr int kDefaultEntropyCap = 24;

/// Recovers the password from a plaintext-challenge capture by walking the
/// dictionary in order; one MD5 evaluation per candidate, stops at the first
/// match. Throws std::invalid_argument if the transcript lacks the needed
/// messages. jobs > 1 shards the dictionary; the report is identical to the
/// sequential run's.
AttackReport baseline_dictionary_attack(const Transcript& t, const Dictionary& d, int jobs = 1);

/// The exhaustive attack on the masked variant: for every candidate password,
/// every challenge value in 2^entropy_bits is tried (ascending), each costing
/// one MD5 for the trial request plus one more to verify a request hit against
/// the captured response/timestamp. entropy_bits above `entropy_cap` is
/// rejected as infeasible at desk scale.
AttackReport hardened_challenge_bruteforce(const Transcript& t, const Dictionary& d,
                                           int entropy_bits, int jobs = 1,
                                           int entropy_cap = kDefaultEntropyCap);

/// Composition probe on the masked variant using only on-the-wire values:
/// unmask the request with the candidate, hash in the captured timestamp,
/// compare with the captured response. One MD5 per candidate.
AttackReport hardened_transcript_probe(const Transcript& t, const Dictionary& d, int jobs = 1);

} // namespace eaplab
