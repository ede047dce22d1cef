#include "groupin/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <set>

#include <json.hpp>

namespace groupin {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string matcher_name(Matcher matcher) {
    return matcher == Matcher::kWfm ? "wfm" : "mdd";
}

std::string algorithm_name(ClusterAlgorithm algorithm) {
    switch (algorithm) {
        case ClusterAlgorithm::kHcs: return "hcs";
        case ClusterAlgorithm::kMaxClique: return "maxclique";
        case ClusterAlgorithm::kDenGraph: return "dengraph";
    }
    throw ConfigError("unknown clustering algorithm");
}

ClusterAlgorithm algorithm_from_name(const std::string& name) {
    if (name == "hcs") return ClusterAlgorithm::kHcs;
    if (name == "maxclique") return ClusterAlgorithm::kMaxClique;
    if (name == "dengraph") return ClusterAlgorithm::kDenGraph;
    throw ConfigError("unknown clustering algorithm: " + name);
}

}  // namespace

double default_min_edge_weight(Scheme scheme) {
    // UPR similarities concentrate near 1 because observed NRSSI spans only
    // part of [0, 1]; its pruning threshold sits much higher than WFM/MDD's.
    return scheme == Scheme::kDecentralized ? 0.965 : 0.5;
}

ClusterParams RunConfig::effective_cluster_params() const {
    ClusterParams params = cluster;
    params.min_edge_weight = min_edge_weight.value_or(default_min_edge_weight(scheme));
    params.validate();
    return params;
}

TimeGrid RunConfig::make_grid(double first_packet_time) const {
    if (origin) {
        return TimeGrid(sample_seconds, interval_seconds, *origin);
    }
    return TimeGrid::aligned(sample_seconds, interval_seconds, first_packet_time);
}

std::string RunConfig::to_json() const {
    ordered_json j;
    j["sample_seconds"] = sample_seconds;
    j["interval_seconds"] = interval_seconds;
    if (origin) j["origin"] = *origin;
    j["lateness_seconds"] = lateness();
    j["aggregation"] = normalization.mode == Aggregation::kMedian ? "median" : "mean";
    j["rssi_min"] = normalization.rssi_min;
    j["rssi_max"] = normalization.rssi_max;
    j["global_ref_rssi"] = normalization.global_ref_rssi;
    j["scheme"] = scheme_name(scheme);
    j["matcher"] = matcher_name(matcher.matcher);
    j["zeta"] = matcher.mdd.zeta;
    j["upsilon"] = matcher.upsilon.weights();
    j["omega"] = upr.omega;
    j["cluster"] = algorithm_name(cluster.algorithm);
    j["min_edge_weight"] = min_edge_weight.value_or(default_min_edge_weight(scheme));
    j["threshold"] = cluster.threshold;
    j["cluster_distance"] = cluster.cluster_distance;
    return j.dump();
}

RunConfig RunConfig::from_json(const std::string& json_text) {
    ordered_json j = ordered_json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ConfigError("malformed run config json");
    }
    RunConfig cfg;
    cfg.sample_seconds = j.at("sample_seconds").get<double>();
    cfg.interval_seconds = j.at("interval_seconds").get<double>();
    if (j.contains("origin")) cfg.origin = j["origin"].get<double>();
    cfg.lateness_seconds = j.at("lateness_seconds").get<double>();
    cfg.normalization.mode = j.at("aggregation").get<std::string>() == "mean"
                                 ? Aggregation::kMean
                                 : Aggregation::kMedian;
    cfg.normalization.rssi_min = j.at("rssi_min").get<double>();
    cfg.normalization.rssi_max = j.at("rssi_max").get<double>();
    cfg.normalization.global_ref_rssi = j.at("global_ref_rssi").get<double>();
    cfg.scheme = scheme_from_name(j.at("scheme").get<std::string>());
    cfg.matcher.matcher =
        j.at("matcher").get<std::string>() == "mdd" ? Matcher::kMdd : Matcher::kWfm;
    cfg.matcher.mdd.zeta = j.at("zeta").get<double>();
    cfg.matcher.upsilon = MatchScoreVector(j.at("upsilon").get<std::vector<double>>());
    cfg.upr.omega = j.at("omega").get<double>();
    cfg.cluster.algorithm = algorithm_from_name(j.at("cluster").get<std::string>());
    cfg.min_edge_weight = j.at("min_edge_weight").get<double>();
    cfg.cluster.threshold = j.at("threshold").get<double>();
    cfg.cluster.cluster_distance = j.at("cluster_distance").get<double>();
    return cfg;
}

std::string RunConfig::params_digest() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(to_json())));
    return buf;
}

GroupRecord detect_interval(std::span<const WirelessPacket> packets,
                            std::int64_t interval_index, const TimeGrid& grid,
                            const RunConfig& cfg) {
    GroupRecord record;
    record.interval_index = interval_index;
    record.interval_start = grid.interval_start(interval_index);
    record.interval_end = grid.interval_end(interval_index);
    record.scheme = cfg.scheme;
    record.params_digest = cfg.params_digest();

    for (const auto& packet : packets) {
        if (grid.assign(packet.time).interval_index != interval_index) {
            throw InputError("packet outside the interval passed to detect_interval");
        }
    }

    const auto readings = sample(packets, grid, cfg.normalization);
    std::vector<WirelessTrace> traces;
    traces.reserve(readings.size());
    std::set<ScannerId> scanners;
    for (const auto& reading : readings) {
        traces.push_back(normalize(reading, cfg.normalization));
        scanners.insert(reading.scanner);
    }
    const FingerprintSet fingerprints =
        build_fingerprints(traces, grid.slots_per_interval());

    for (const auto& [device, fp] : fingerprints) {
        (void)fp;
        record.present.insert(device);
    }
    if (record.present.empty()) {
        return record;  // empty interval, persisted for continuity
    }

    std::vector<PairScore> scores;
    if (cfg.scheme == Scheme::kDecentralized) {
        std::vector<SprMessage> messages;
        for (const auto& scanner : scanners) {
            std::vector<WirelessTrace> scanner_traces;
            for (const auto& trace : traces) {
                if (trace.scanner == scanner) scanner_traces.push_back(trace);
            }
            messages.push_back(spr_local(scanner, interval_index, scanner_traces,
                                         grid.slots_per_interval()));
        }
        scores = upr_unify(messages, cfg.upr);
    } else {
        MatcherConfig matcher = cfg.matcher;
        matcher.matcher =
            cfg.scheme == Scheme::kCentralizedMdd ? Matcher::kMdd : Matcher::kWfm;
        scores = match_interval(fingerprints, scanners.size(), matcher);
    }

    const ClusterParams params = cfg.effective_cluster_params();
    const SimilarityGraph graph = build_graph(scores, record.present,
                                              params.min_edge_weight);
    record.labeling = cluster(graph, params);
    return record;
}

StreamRunner::StreamRunner(const RunConfig& cfg, RecordSink sink)
    : cfg_(cfg), sink_(std::move(sink)) {}

StreamRunner::~StreamRunner() {
    try {
        finish();
    } catch (...) {
        // destructor must not throw; callers needing errors call finish()
    }
}

void StreamRunner::push(const WirelessPacket& packet) {
    if (finished_) {
        throw InputError("push after finish");
    }
    if (!grid_) {
        grid_ = cfg_.make_grid(packet.time);
    }
    watermark_ = std::max(watermark_, packet.time);

    const SlotRef slot = grid_->assign(packet.time);
    if (slot.interval_index < next_to_emit_) {
        ++dropped_late_;  // interval already sealed
        return;
    }
    // Slot-level lateness: drop packets whose slot end + lateness has passed.
    const double slot_end = grid_->interval_start(slot.interval_index) +
                            (slot.slot_index + 1) * grid_->sample_seconds();
    if (watermark_ > slot_end + cfg_.lateness()) {
        ++dropped_late_;
        return;
    }
    pending_[slot.interval_index].push_back(packet);

    // Seal intervals the watermark has fully passed.
    const auto sealed_before = static_cast<std::int64_t>(
        std::floor((watermark_ - cfg_.lateness() - grid_->origin()) /
                   grid_->interval_seconds()));
    if (sealed_before > next_to_emit_) {
        seal_up_to(sealed_before);
    }
}

void StreamRunner::seal_up_to(std::int64_t interval_index) {
    while (next_to_emit_ < interval_index) {
        auto it = pending_.find(next_to_emit_);
        std::vector<WirelessPacket> packets;
        if (it != pending_.end()) {
            packets = std::move(it->second);
            pending_.erase(it);
        }
        sink_(detect_interval(packets, next_to_emit_, *grid_, cfg_));
        ++next_to_emit_;
    }
}

void StreamRunner::finish() {
    if (finished_) return;
    finished_ = true;
    if (!grid_) return;  // no packets at all
    std::int64_t last = next_to_emit_;
    if (!pending_.empty()) {
        last = std::max(last, pending_.rbegin()->first + 1);
    }
    seal_up_to(last);
}

}  // namespace groupin
