#include "groupin/preprocess.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace groupin {

double aggregate(std::vector<double> values, Aggregation mode) {
    if (values.empty()) {
        throw InputError("aggregate over empty value set");
    }
    if (mode == Aggregation::kMean) {
        return std::accumulate(values.begin(), values.end(), 0.0) /
               static_cast<double>(values.size());
    }
    const std::size_t mid = (values.size() - 1) / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                     values.end());
    return values[mid];
}

std::vector<SampledReading> sample(std::span<const WirelessPacket> packets,
                                   const TimeGrid& grid,
                                   const NormalizationConfig& cfg) {
    cfg.validate();
    struct Bucket {
        std::vector<double> rssi;
        std::vector<double> ref_rssi;
    };
    using Key = std::tuple<std::int64_t, int, ScannerId, DeviceId>;
    std::map<Key, Bucket> buckets;
    for (const auto& packet : packets) {
        const SlotRef slot = grid.assign(packet.time);
        auto& bucket = buckets[{slot.interval_index, slot.slot_index, packet.scanner,
                                packet.device}];
        bucket.rssi.push_back(packet.rssi);
        if (packet.ref_rssi) bucket.ref_rssi.push_back(*packet.ref_rssi);
    }

    std::vector<SampledReading> readings;
    readings.reserve(buckets.size());
    for (auto& [key, bucket] : buckets) {
        SampledReading reading;
        reading.scanner = std::get<2>(key);
        reading.device = std::get<3>(key);
        reading.slot = SlotRef{std::get<0>(key), std::get<1>(key)};
        reading.count = bucket.rssi.size();
        reading.mr = aggregate(std::move(bucket.rssi), cfg.mode);
        if (!bucket.ref_rssi.empty()) {
            reading.mrr = aggregate(std::move(bucket.ref_rssi), cfg.mode);
        }
        readings.push_back(std::move(reading));
    }
    return readings;
}

WirelessTrace normalize(const SampledReading& reading, const NormalizationConfig& cfg) {
    cfg.validate();
    double shifted = reading.mr;
    if (reading.mrr) {
        shifted += cfg.global_ref_rssi - *reading.mrr;
    }
    const double scaled = (shifted - cfg.rssi_min) / (cfg.rssi_max - cfg.rssi_min);
    return WirelessTrace{reading.scanner, reading.device, reading.slot.slot_index,
                         std::clamp(scaled, 0.0, 1.0)};
}

FingerprintSet build_fingerprints(std::span<const WirelessTrace> traces,
                                  int slots_per_interval) {
    FingerprintSet fingerprints;
    for (const auto& trace : traces) {
        auto [it, inserted] = fingerprints.try_emplace(trace.device, trace.device,
                                                       slots_per_interval);
        it->second.add_trace(trace);
    }
    return fingerprints;
}

}  // namespace groupin
