#include "groupin/decentralized.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>

#include <json.hpp>

namespace groupin {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const SprMessage& message) {
    ordered_json j;
    j["scanner_id"] = message.scanner.value;
    j["interval_index"] = message.interval_index;
    ordered_json entries = ordered_json::array();
    for (const auto& e : message.entries) {
        ordered_json entry;
        entry["a"] = e.a.value;
        entry["b"] = e.b.value;
        entry["spr"] = e.spr;
        entry["support"] = e.support;
        entries.push_back(std::move(entry));
    }
    j["entries"] = std::move(entries);
    return j;
}

SprMessage from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("scanner_id") || !j.contains("interval_index") ||
        !j.contains("entries") || !j["entries"].is_array()) {
        throw InputError("malformed SPR message");
    }
    SprMessage message;
    message.scanner = ScannerId{j["scanner_id"].get<std::string>()};
    message.interval_index = j["interval_index"].get<std::int64_t>();
    for (const auto& e : j["entries"]) {
        SprEntry entry;
        entry.a = DeviceId{e.at("a").get<std::string>()};
        entry.b = DeviceId{e.at("b").get<std::string>()};
        entry.spr = e.at("spr").get<double>();
        entry.support = e.at("support").get<std::size_t>();
        if (!(entry.a < entry.b) || entry.spr < 0.0 || entry.support == 0) {
            throw InputError("malformed SPR entry");
        }
        message.entries.push_back(std::move(entry));
    }
    return message;
}

}  // namespace

SprMessage spr_local(const ScannerId& scanner, std::int64_t interval_index,
                     std::span<const WirelessTrace> traces, int slots_per_interval) {
    // slot -> device -> nrssi, as seen by this scanner only
    std::vector<std::map<DeviceId, double>> slots(slots_per_interval);
    for (const auto& trace : traces) {
        if (trace.scanner != scanner) {
            throw InputError("spr_local received a trace from a different scanner");
        }
        slots.at(trace.slot).emplace(trace.device, trace.nrssi);
    }

    struct Acc {
        double sum = 0.0;
        std::size_t count = 0;
    };
    std::map<std::pair<DeviceId, DeviceId>, Acc> pairs;
    for (const auto& slot : slots) {
        for (auto it_a = slot.begin(); it_a != slot.end(); ++it_a) {
            for (auto it_b = std::next(it_a); it_b != slot.end(); ++it_b) {
                auto& acc = pairs[{it_a->first, it_b->first}];
                acc.sum += std::abs(std::pow(10.0, it_a->second) -
                                    std::pow(10.0, it_b->second));
                ++acc.count;
            }
        }
    }

    SprMessage message{scanner, interval_index, {}};
    for (const auto& [pair, acc] : pairs) {
        message.entries.push_back(SprEntry{pair.first, pair.second,
                                           acc.sum / static_cast<double>(acc.count),
                                           acc.count});
    }
    return message;
}

std::vector<PairScore> upr_unify(std::span<const SprMessage> messages,
                                 const UprParams& params) {
    params.validate();
    struct Acc {
        double sum = 0.0;
        std::size_t scanners = 0;
        std::size_t support = 0;
    };
    std::map<std::pair<DeviceId, DeviceId>, Acc> pairs;
    for (const auto& message : messages) {
        for (const auto& entry : message.entries) {
            auto& acc = pairs[{entry.a, entry.b}];
            acc.sum += std::clamp(entry.spr, 0.0, params.omega);
            acc.scanners += 1;
            acc.support += entry.support;
        }
    }
    std::vector<PairScore> scores;
    scores.reserve(pairs.size());
    for (const auto& [pair, acc] : pairs) {
        const double upr =
            1.0 - acc.sum / (static_cast<double>(acc.scanners) * params.omega);
        scores.push_back(PairScore{pair.first, pair.second, upr, acc.support});
    }
    return scores;
}

void write_spr_message(std::ostream& out, const SprMessage& message) {
    const std::string payload = to_json(message).dump();
    const auto size = static_cast<std::uint32_t>(payload.size());
    char prefix[4] = {static_cast<char>(size & 0xff), static_cast<char>((size >> 8) & 0xff),
                      static_cast<char>((size >> 16) & 0xff),
                      static_cast<char>((size >> 24) & 0xff)};
    out.write(prefix, 4);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

std::optional<SprMessage> read_spr_message(std::istream& in) {
    char prefix[4];
    if (!in.read(prefix, 4)) {
        if (in.gcount() == 0) return std::nullopt;  // clean end of stream
        throw InputError("truncated SPR message length prefix");
    }
    const std::uint32_t size = static_cast<std::uint8_t>(prefix[0]) |
                               (static_cast<std::uint32_t>(static_cast<std::uint8_t>(prefix[1])) << 8) |
                               (static_cast<std::uint32_t>(static_cast<std::uint8_t>(prefix[2])) << 16) |
                               (static_cast<std::uint32_t>(static_cast<std::uint8_t>(prefix[3])) << 24);
    std::string payload(size, '\0');
    if (!in.read(payload.data(), static_cast<std::streamsize>(size))) {
        throw InputError("truncated SPR message payload");
    }
    ordered_json j = ordered_json::parse(payload, nullptr, false);
    if (j.is_discarded()) {
        throw InputError("SPR message payload is not valid JSON");
    }
    return from_json(j);
}

void write_spr_jsonl(std::ostream& out, const SprMessage& message) {
    out << to_json(message).dump() << '\n';
}

std::vector<SprMessage> read_spr_jsonl(std::istream& in) {
    std::vector<SprMessage> messages;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ordered_json j = ordered_json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            throw InputError("SPR JSONL line is not valid JSON");
        }
        messages.push_back(from_json(j));
    }
    return messages;
}

}  // namespace groupin
