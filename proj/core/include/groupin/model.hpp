#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace groupin {

/// Raised when a configuration value violates its documented range.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when input data cannot be used (bad file, bad record, bad domain).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Pre-hashed device identifier. Ordering is total so pair iteration is
/// deterministic everywhere in the engine.
struct DeviceId {
    std::string value;

    auto operator<=>(const DeviceId&) const = default;
};

struct ScannerId {
    std::string value;

    auto operator<=>(const ScannerId&) const = default;
};

/// One scanner observation of one device at one instant.
struct WirelessPacket {
    double time = 0.0;  // UNIX epoch seconds
    double rssi = 0.0;  // dBm
    std::optional<double> ref_rssi;  // dBm, expected RSSI at 1 m
    DeviceId device;
    ScannerId scanner;
};

/// Position of a sampling slot inside the run's interval sequence.
struct SlotRef {
    std::int64_t interval_index = 0;
    int slot_index = 0;

    auto operator<=>(const SlotRef&) const = default;
};

/// Discretization of time into sampling slots of sample_seconds, grouped
/// into detection intervals of interval_seconds. interval_seconds must be
/// an integer multiple of sample_seconds. Slots are half-open
/// [start, start + sample_seconds).
class TimeGrid {
public:
    TimeGrid(double sample_seconds, double interval_seconds, double origin);

    double sample_seconds() const { return sample_seconds_; }
    double interval_seconds() const { return interval_seconds_; }
    double origin() const { return origin_; }
    int slots_per_interval() const { return slots_per_interval_; }

    /// Maps a timestamp to its (interval, slot). Throws InputError for
    /// timestamps before the origin.
    SlotRef assign(double t) const;

    double interval_start(std::int64_t interval_index) const;
    double interval_end(std::int64_t interval_index) const;

    /// Grid whose origin is the interval-aligned floor of first_packet_time.
    static TimeGrid aligned(double sample_seconds, double interval_seconds,
                            double first_packet_time);

private:
    double sample_seconds_;
    double interval_seconds_;
    double origin_;
    int slots_per_interval_;
};

/// Per-(scanner, device, slot) normalized reading, nrssi in [0, 1].
struct WirelessTrace {
    ScannerId scanner;
    DeviceId device;
    int slot = 0;
    double nrssi = 0.0;
};

/// Orders the traces of one slot by descending nrssi; ties broken by
/// ascending scanner id so the result is unique.
std::vector<WirelessTrace> order_slot_traces(std::vector<WirelessTrace> traces);

/// One device's per-slot ordered trace lists over a single interval.
/// Slot lists may be empty (no observation at that sampling time).
class WirelessFingerprint {
public:
    WirelessFingerprint() = default;
    WirelessFingerprint(DeviceId device, int slots_per_interval)
        : device_(std::move(device)), slots_(slots_per_interval) {}

    const DeviceId& device() const { return device_; }
    int slot_count() const { return static_cast<int>(slots_.size()); }

    /// Ordered list for a slot (possibly empty).
    const std::vector<WirelessTrace>& slot(int index) const { return slots_.at(index); }

    /// Inserts a trace into its slot keeping the Eq.-style ordering.
    void add_trace(const WirelessTrace& trace);

    /// True if the device has at least one trace in the given slot.
    bool present_in_slot(int index) const { return !slots_.at(index).empty(); }

    /// True if any slot is non-empty.
    bool present() const;

private:
    DeviceId device_;
    std::vector<std::vector<WirelessTrace>> slots_;
};

}  // namespace groupin
