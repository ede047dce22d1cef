#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "groupin/decentralized.hpp"
#include "groupin/preprocess.hpp"
#include "groupin/store.hpp"

namespace groupin {

/// Full configuration of one detection run. Clustering's min_edge_weight
/// defaults depend on the scheme (UPR weights live compressed near 1), so
/// it is optional here and resolved by effective_cluster_params().
struct RunConfig {
    double sample_seconds = 5.0;
    double interval_seconds = 120.0;
    std::optional<double> origin;  // default: interval-aligned floor of first packet
    double lateness_seconds = -1.0;  // < 0 means 2 * sample_seconds

    NormalizationConfig normalization;
    Scheme scheme = Scheme::kCentralizedWfm;
    MatcherConfig matcher;
    UprParams upr;
    ClusterParams cluster;
    std::optional<double> min_edge_weight;  // overrides the scheme default

    double lateness() const {
        return lateness_seconds < 0.0 ? 2.0 * sample_seconds : lateness_seconds;
    }
    ClusterParams effective_cluster_params() const;
    TimeGrid make_grid(double first_packet_time) const;

    /// Canonical JSON of every parameter; what the digest hashes and what
    /// the store records as run metadata.
    std::string to_json() const;
    static RunConfig from_json(const std::string& json_text);

    /// FNV-1a hex digest of to_json(); stable for identical configs.
    std::string params_digest() const;
};

/// Pinned default pruning thresholds per scheme.
double default_min_edge_weight(Scheme scheme);

/// Runs preprocessing, matching (per scheme), graph building and clustering
/// for the packets of one interval. Packets outside the interval are
/// rejected. Zero observed devices yield an empty record.
GroupRecord detect_interval(std::span<const WirelessPacket> packets,
                            std::int64_t interval_index, const TimeGrid& grid,
                            const RunConfig& cfg);

/// Streaming runner: feed packets in watermark order, records come out once
/// their interval is sealed (watermark past interval end + lateness).
/// Indices are contiguous; idle intervals produce empty records. Packets
/// arriving for already-sealed slots are dropped and counted.
class StreamRunner {
public:
    using RecordSink = std::function<void(const GroupRecord&)>;

    StreamRunner(const RunConfig& cfg, RecordSink sink);
    ~StreamRunner();

    void push(const WirelessPacket& packet);

    /// Seals and emits everything buffered; called automatically on
    /// destruction if not already done.
    void finish();

    std::size_t dropped_late() const { return dropped_late_; }

private:
    void seal_up_to(std::int64_t interval_index);

    RunConfig cfg_;
    RecordSink sink_;
    std::optional<TimeGrid> grid_;
    std::map<std::int64_t, std::vector<WirelessPacket>> pending_;
    std::int64_t next_to_emit_ = 0;
    double watermark_ = 0.0;
    std::size_t dropped_late_ = 0;
    bool finished_ = false;
};

}  // namespace groupin
