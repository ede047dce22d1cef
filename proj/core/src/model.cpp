#include "groupin/model.hpp"

#include <algorithm>
#include <cmath>

namespace groupin {

TimeGrid::TimeGrid(double sample_seconds, double interval_seconds, double origin)
    : sample_seconds_(sample_seconds),
      interval_seconds_(interval_seconds),
      origin_(origin) {
    if (!(sample_seconds > 0.0)) {
        throw ConfigError("sample_seconds must be > 0");
    }
    if (interval_seconds < sample_seconds) {
        throw ConfigError("interval_seconds must be >= sample_seconds");
    }
    const double ratio = interval_seconds / sample_seconds;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * rounded) {
        throw ConfigError("interval_seconds must be an integer multiple of sample_seconds");
    }
    slots_per_interval_ = static_cast<int>(rounded);
}

SlotRef TimeGrid::assign(double t) const {
    if (t < origin_) {
        throw InputError("timestamp before grid origin");
    }
    const auto global_slot = static_cast<std::int64_t>(std::floor((t - origin_) / sample_seconds_));
    return SlotRef{global_slot / slots_per_interval_,
                   static_cast<int>(global_slot % slots_per_interval_)};
}

double TimeGrid::interval_start(std::int64_t interval_index) const {
    return origin_ + static_cast<double>(interval_index) * interval_seconds_;
}

double TimeGrid::interval_end(std::int64_t interval_index) const {
    return interval_start(interval_index) + interval_seconds_;
}

TimeGrid TimeGrid::aligned(double sample_seconds, double interval_seconds,
                           double first_packet_time) {
    const double origin = std::floor(first_packet_time / interval_seconds) * interval_seconds;
    return TimeGrid(sample_seconds, interval_seconds, origin);
}

std::vector<WirelessTrace> order_slot_traces(std::vector<WirelessTrace> traces) {
    std::sort(traces.begin(), traces.end(), [](const WirelessTrace& a, const WirelessTrace& b) {
        if (a.nrssi != b.nrssi) return a.nrssi > b.nrssi;
        return a.scanner < b.scanner;
    });
    return traces;
}

void WirelessFingerprint::add_trace(const WirelessTrace& trace) {
    auto& list = slots_.at(trace.slot);
    const auto pos = std::find_if(list.begin(), list.end(), [&](const WirelessTrace& t) {
        if (t.nrssi != trace.nrssi) return t.nrssi < trace.nrssi;
        return trace.scanner < t.scanner;
    });
    list.insert(pos, trace);
}

bool WirelessFingerprint::present() const {
    return std::any_of(slots_.begin(), slots_.end(),
                       [](const auto& list) { return !list.empty(); });
}

}  // namespace groupin
