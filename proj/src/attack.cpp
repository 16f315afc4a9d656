#include "eaplab/attack.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "eaplab/hex.hpp"

namespace eaplab {

namespace {

struct CandidateResult {
    std::uint64_t full_cost = 0;     // MD5 calls to process the candidate completely
    bool matched = false;
    std::uint64_t partial_cost = 0;  // MD5 calls up to and including the match
};

struct ScanResult {
    std::optional<std::size_t> index;
    std::uint64_t evaluations = 0;
};

// First-match scan over the dictionary. The sequential pass processes
// candidates in order, paying full_cost for every miss and partial_cost for
// the hit. The parallel pass shards the index range but must report exactly
// the sequential outcome: per-candidate costs are kept so the merged count is
// sum(full_cost[i] for i < k) + partial_cost[k] for the earliest match k.
template <typename Eval>
ScanResult first_match_scan(std::size_t n, int jobs, const Eval& eval) {
    ScanResult out;
    if (jobs <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) {
            const CandidateResult r = eval(i);
            if (r.matched) {
                out.index = i;
                out.evaluations += r.partial_cost;
                return out;
            }
            out.evaluations += r.full_cost;
        }
        return out;
    }

    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    std::vector<std::uint64_t> costs(n, 0);
    std::atomic<std::size_t> best{n};
    std::vector<std::uint64_t> best_partial(workers, 0);
    std::vector<std::thread> pool;
    pool.reserve(workers);

    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::size_t lo = n * w / workers;
            const std::size_t hi = n * (w + 1) / workers;
            for (std::size_t i = lo; i < hi; ++i) {
                if (i >= best.load(std::memory_order_acquire)) break;
                const CandidateResult r = eval(i);
                costs[i] = r.full_cost;
                if (r.matched) {
                    best_partial[w] = r.partial_cost;
                    std::size_t cur = best.load(std::memory_order_acquire);
                    while (i < cur &&
                           !best.compare_exchange_weak(cur, i, std::memory_order_acq_rel)) {
                    }
                    break;  // everything after i in this shard is moot
                }
            }
        });
    }
    for (auto& t : pool) t.join();

    const std::size_t k = best.load(std::memory_order_acquire);
    if (k == n) {
        for (std::uint64_t c : costs) out.evaluations += c;
        return out;
    }
    out.index = k;
    for (std::size_t i = 0; i < k; ++i) out.evaluations += costs[i];
    // Recover which worker's block held index k.
    std::size_t owner = workers - 1;
    for (std::size_t w = 0; w < workers; ++w) {
        if (n * w / workers <= k && k < n * (w + 1) / workers) {
            owner = w;
            break;
        }
    }
    out.evaluations += best_partial[owner];
    return out;
}

std::uint64_t elapsed_ms_since(std::chrono::steady_clock::time_point start) {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - start)
                                          .count());
}

} // namespace

const char* strategy_name(AttackStrategy s) {
    switch (s) {
        case AttackStrategy::BaselineDictionary: return "dictionary";
        case AttackStrategy::HardenedChallengeBruteForce: return "challenge-bruteforce";
        case AttackStrategy::HardenedTranscriptProbe: return "transcript-probe";
    }
    return "?";
}

AttackStrategy strategy_from_name(const std::string& name) {
    if (name == "dictionary") return AttackStrategy::BaselineDictionary;
    if (name == "challenge-bruteforce") return AttackStrategy::HardenedChallengeBruteForce;
    if (name == "transcript-probe") return AttackStrategy::HardenedTranscriptProbe;
    throw std::invalid_argument("unknown attack strategy: " + name);
}

std::string AttackReport::to_kv() const {
    std::ostringstream out;
    out << "strategy=" << strategy_name(strategy) << " found=" << (found ? 1 : 0) << " index="
        << (found_index ? std::to_string(*found_index) : std::string("-"))
        << " password_hex=" << (found ? to_hex(found->bytes()) : std::string("-"))
        << " hash_evaluations=" << hash_evaluations << " elapsed_millis=" << elapsed_millis
        << " entropy_bits=" << entropy_bits;
    return out.str();
}

std::string AttackReport::to_csv_row() const {
    std::ostringstream out;
    out << strategy_name(strategy) << ',' << (found ? 1 : 0) << ','
        << (found_index ? std::to_string(*found_index) : std::string("")) << ','
        << hash_evaluations << ',' << elapsed_millis << ',' << entropy_bits;
    return out.str();
}

const char* AttackReport::csv_header() {
    return "strategy,found,index,hash_evaluations,elapsed_millis,entropy_bits";
}

AttackReport baseline_dictionary_attack(const Transcript& t, const Dictionary& d, int jobs) {
    const auto start = std::chrono::steady_clock::now();
    const ChallengePlain* challenge = t.find<ChallengePlain>();
    const BaselineResponse* response = t.find<BaselineResponse>();
    if (!challenge || !response)
        throw std::invalid_argument(
            "transcript lacks ChallengePlain/BaselineResponse; not a baseline capture");

    const ScanResult scan = first_match_scan(d.size(), jobs, [&](std::size_t i) {
        CandidateResult r;
        r.full_cost = r.partial_cost = 1;
        r.matched =
            baseline_response(challenge->id_plus1, d.words[i], challenge->challenge) ==
            response->digest;
        return r;
    });

    AttackReport report;
    report.strategy = AttackStrategy::BaselineDictionary;
    report.found_index = scan.index;
    if (scan.index) report.found = d.words[*scan.index];
    report.hash_evaluations = scan.evaluations;
    report.elapsed_millis = elapsed_ms_since(start);
    return report;
}

AttackReport hardened_challenge_bruteforce(const Transcript& t, const Dictionary& d,
                                           int entropy_bits, int jobs, int entropy_cap) {
    const auto start = std::chrono::steady_clock::now();
    if (entropy_bits < 1 || entropy_bits > entropy_cap)
        throw std::invalid_argument("entropy_bits " + std::to_string(entropy_bits) +
                                    " outside 1.." + std::to_string(entropy_cap) +
                                    " (desk-scale cap)");
    const ChallengeMasked* masked = t.find<ChallengeMasked>();
    const HardenedResponse* response = t.find<HardenedResponse>();
    if (!masked || !response)
        throw std::invalid_argument(
            "transcript lacks ChallengeMasked/HardenedResponse; not a hardened capture");

    const std::uint64_t space = std::uint64_t{1} << entropy_bits;
    const Block16 wide_ts = widen_timestamp(response->timestamp);

    const ScanResult scan = first_match_scan(d.size(), jobs, [&](std::size_t i) {
        CandidateResult r;
        const Block16 mask = pad_password(d.words[i]);
        for (std::uint64_t v = 0; v < space; ++v) {
            const Challenge guess = challenge_from_value(v, entropy_bits);
            const Digest128 inner = md5_digest(xor128(widen_id(masked->id), guess.bytes));
            ++r.full_cost;
            if (xor128(inner, mask) == masked->request) {
                // Request hit; verify against the captured response/timestamp.
                const Digest128 check = md5_digest(xor128(inner, wide_ts));
                ++r.full_cost;
                if (check == response->digest) {
                    r.matched = true;
                    r.partial_cost = r.full_cost;
                    return r;
                }
            }
        }
        return r;
    });

    AttackReport report;
    report.strategy = AttackStrategy::HardenedChallengeBruteForce;
    report.found_index = scan.index;
    if (scan.index) report.found = d.words[*scan.index];
    report.hash_evaluations = scan.evaluations;
    report.elapsed_millis = elapsed_ms_since(start);
    report.entropy_bits = entropy_bits;
    return report;
}

AttackReport hardened_transcript_probe(const Transcript& t, const Dictionary& d, int jobs) {
    const auto start = std::chrono::steady_clock::now();
    const ChallengeMasked* masked = t.find<ChallengeMasked>();
    const HardenedResponse* response = t.find<HardenedResponse>();
    if (!masked || !response)
        throw std::invalid_argument(
            "transcript lacks ChallengeMasked/HardenedResponse; not a hardened capture");

    const Block16 wide_ts = widen_timestamp(response->timestamp);

    const ScanResult scan = first_match_scan(d.size(), jobs, [&](std::size_t i) {
        CandidateResult r;
        r.full_cost = r.partial_cost = 1;
        const Digest128 unmasked = recover_c(masked->request, d.words[i]);
        r.matched = md5_digest(xor128(unmasked, wide_ts)) == response->digest;
        return r;
    });

    AttackReport report;
    report.strategy = AttackStrategy::HardenedTranscriptProbe;
    report.found_index = scan.index;
    if (scan.index) report.found = d.words[*scan.index];
    report.hash_evaluations = scan.evaluations;
    report.elapsed_millis = elapsed_ms_since(start);
    return report;
}

} // namespace eaplab
