#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "groupin/model.hpp"

namespace groupin {

enum class Aggregation { kMedian, kMean };

struct NormalizationConfig {
    Aggregation mode = Aggregation::kMedian;
    double rssi_min = -100.0;  // dBm
    double rssi_max = -40.0;   // dBm
    double global_ref_rssi = -59.0;  // dBm, expected RefRSSI at 1 m

    void validate() const {
        if (!(rssi_min < rssi_max)) {
            throw ConfigError("rssi_min must be < rssi_max");
        }
    }
};

/// Aggregated raw packets of one (scanner, device, slot).
struct SampledReading {
    ScannerId scanner;
    DeviceId device;
    SlotRef slot;
    double mr = 0.0;  // median (or mean) RSSI, dBm
    std::optional<double> mrr;  // median reference RSSI, dBm
    std::size_t count = 0;  // raw packets aggregated
};

/// Median as the lower-middle element of the sorted values, so the result
/// is always an observed value. Mean mode averages arithmetically.
double aggregate(std::vector<double> values, Aggregation mode);

/// Buckets packets into (scanner, device, slot) groups and aggregates each.
/// Packets may arrive in any order. One reading per non-empty bucket, in
/// deterministic (interval, slot, scanner, device) order.
std::vector<SampledReading> sample(std::span<const WirelessPacket> packets,
                                   const TimeGrid& grid,
                                   const NormalizationConfig& cfg);

/// RefRSSI shift then min-max scaling, clamped into [0, 1].
WirelessTrace normalize(const SampledReading& reading, const NormalizationConfig& cfg);

/// Device -> per-slot ordered trace lists for one interval.
using FingerprintSet = std::map<DeviceId, WirelessFingerprint>;

/// Groups an interval's traces into per-device fingerprints.
FingerprintSet build_fingerprints(std::span<const WirelessTrace> traces,
                                  int slots_per_interval);

}  // namespace groupin
