#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "groupin/model.hpp"

namespace groupin {

struct PacketReadResult {
    std::vector<WirelessPacket> packets;
    std::size_t skipped = 0;  // malformed lines counted and skipped
};

/// Called once per malformed line with (line number, reason).
using WarnFn = std::function<void(std::size_t, const std::string&)>;

/// JSON Lines input: one object per line with keys
/// time, rssi, ref_rssi (nullable), device_id, scanner_id.
PacketReadResult read_packets_jsonl(std::istream& in, const WarnFn& warn = nullptr);

/// CSV input with the same column order: time,rssi,ref_rssi,device_id,scanner_id.
/// An optional header row is detected and skipped; empty ref_rssi means absent.
PacketReadResult read_packets_csv(std::istream& in, const WarnFn& warn = nullptr);

/// Dispatches between the two formats by file extension (.csv vs anything else).
PacketReadResult read_packets_file(const std::string& path, const WarnFn& warn = nullptr);

void write_packet_jsonl(std::ostream& out, const WirelessPacket& packet);

/// Fixed-format decimal used for every CSV the engine writes, so repeated
/// runs emit byte-identical files.
std::string format_double(double value);

}  // namespace groupin
