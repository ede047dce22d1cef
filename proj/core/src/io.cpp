#include "groupin/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace groupin {

namespace {

using ordered_json = nlohmann::ordered_json;

bool parse_json_packet(const std::string& line, WirelessPacket& out, std::string& reason) {
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        reason = "not a JSON object";
        return false;
    }
    if (!j.contains("time") || !j.contains("rssi") || !j.contains("device_id") ||
        !j.contains("scanner_id")) {
        reason = "missing required key";
        return false;
    }
    if (!j["time"].is_number() || !j["rssi"].is_number() || !j["device_id"].is_string() ||
        !j["scanner_id"].is_string()) {
        reason = "wrong field type";
        return false;
    }
    out.time = j["time"].get<double>();
    out.rssi = j["rssi"].get<double>();
    out.ref_rssi.reset();
    if (j.contains("ref_rssi") && j["ref_rssi"].is_number()) {
        out.ref_rssi = j["ref_rssi"].get<double>();
    }
    out.device = DeviceId{j["device_id"].get<std::string>()};
    out.scanner = ScannerId{j["scanner_id"].get<std::string>()};
    if (out.device.value.empty() || out.scanner.value.empty()) {
        reason = "empty identifier";
        return false;
    }
    if (!std::isfinite(out.time) || !std::isfinite(out.rssi) || out.time < 0.0 ||
        (out.ref_rssi && !std::isfinite(*out.ref_rssi))) {
        reason = "non-finite or negative-time value";
        return false;
    }
    return true;
}

bool parse_number(const std::string& s, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size() && std::isfinite(out);
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_csv_packet(const std::string& line, WirelessPacket& out, std::string& reason) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    if (fields.size() != 5) {
        reason = "expected 5 columns";
        return false;
    }
    if (!parse_number(fields[0], out.time) || !parse_number(fields[1], out.rssi)) {
        reason = "bad numeric column";
        return false;
    }
    out.ref_rssi.reset();
    if (!fields[2].empty()) {
        double ref = 0.0;
        if (!parse_number(fields[2], ref)) {
            reason = "bad ref_rssi column";
            return false;
        }
        out.ref_rssi = ref;
    }
    out.device = DeviceId{fields[3]};
    out.scanner = ScannerId{fields[4]};
    if (out.device.value.empty() || out.scanner.value.empty()) {
        reason = "empty identifier";
        return false;
    }
    if (out.time < 0.0) {
        reason = "negative time";
        return false;
    }
    return true;
}

template <typename ParseFn>
PacketReadResult read_lines(std::istream& in, const WarnFn& warn, ParseFn parse,
                            bool allow_header) {
    PacketReadResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        WirelessPacket packet;
        std::string reason;
        if (parse(line, packet, reason)) {
            result.packets.push_back(std::move(packet));
        } else if (allow_header && line_no == 1) {
            continue;  // header row
        } else {
            ++result.skipped;
            if (warn) warn(line_no, reason);
        }
    }
    return result;
}

}  // namespace

PacketReadResult read_packets_jsonl(std::istream& in, const WarnFn& warn) {
    return read_lines(in, warn, parse_json_packet, /*allow_header=*/false);
}

PacketReadResult read_packets_csv(std::istream& in, const WarnFn& warn) {
    return read_lines(in, warn, parse_csv_packet, /*allow_header=*/true);
}

PacketReadResult read_packets_file(const std::string& path, const WarnFn& warn) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open packet file: " + path);
    }
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
        return read_packets_csv(in, warn);
    }
    return read_packets_jsonl(in, warn);
}

void write_packet_jsonl(std::ostream& out, const WirelessPacket& packet) {
    ordered_json j;
    j["time"] = packet.time;
    j["rssi"] = packet.rssi;
    if (packet.ref_rssi) {
        j["ref_rssi"] = *packet.ref_rssi;
    } else {
        j["ref_rssi"] = nullptr;
    }
    j["device_id"] = packet.device.value;
    j["scanner_id"] = packet.scanner.value;
    out << j.dump() << '\n';
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

}  // namespace groupin
