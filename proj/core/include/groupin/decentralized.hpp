#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "groupin/match.hpp"

namespace groupin {

struct SprEntry {
    DeviceId a;  // a < b
    DeviceId b;
    double spr = 0.0;
    std::size_t support = 0;  // co-observed sampling slots
};

/// One scanner's local pairwise results for one interval. Entries are unique
/// per pair and sorted; an empty entry list is still a valid message.
struct SprMessage {
    ScannerId scanner;
    std::int64_t interval_index = 0;
    std::vector<SprEntry> entries;
};

struct UprParams {
    double omega = 9.0;  // max possible SPR; 10^1 - 10^0 for nrssi in [0,1]

    void validate() const {
        if (!(omega > 0.0)) {
            throw ConfigError("omega must be > 0");
        }
    }
};

/// Local comparison for one scanner: for every pair of devices this scanner
/// co-observed in at least one slot, the mean of |10^nrssi_a - 10^nrssi_b|
/// over those slots. Traces must all belong to the given scanner.
SprMessage spr_local(const ScannerId& scanner, std::int64_t interval_index,
                     std::span<const WirelessTrace> traces, int slots_per_interval);

/// Server-side unification: UPR = 1 - sum(SPR) / (|S| * omega) per pair,
/// with each SPR clamped to [0, omega]. Result values lie in [0, 1], larger
/// means more similar; output sorted by canonical pair.
std::vector<PairScore> upr_unify(std::span<const SprMessage> messages,
                                 const UprParams& params);

/// Wire format: 4-byte little-endian length prefix followed by a JSON object
/// with fixed field order {scanner_id, interval_index, entries:[{a,b,spr,support}]}.
void write_spr_message(std::ostream& out, const SprMessage& message);

/// Reads one length-prefixed message; nullopt at clean end of stream.
std::optional<SprMessage> read_spr_message(std::istream& in);

/// Same JSON object as one line (offline runs).
void write_spr_jsonl(std::ostream& out, const SprMessage& message);
std::vector<SprMessage> read_spr_jsonl(std::istream& in);

}  // namespace groupin
