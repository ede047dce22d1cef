#include "groupin/store.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace groupin {

namespace {
using ordered_json = nlohmann::ordered_json;
}

std::string scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::kCentralizedWfm: return "centralized-wfm";
        case Scheme::kCentralizedMdd: return "centralized-mdd";
        case Scheme::kDecentralized: return "decentralized";
    }
    throw ConfigError("unknown scheme");
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "centralized-wfm") return Scheme::kCentralizedWfm;
    if (name == "centralized-mdd") return Scheme::kCentralizedMdd;
    if (name == "decentralized") return Scheme::kDecentralized;
    throw ConfigError("unknown scheme: " + name);
}

std::string record_to_json(const GroupRecord& record) {
    ordered_json j;
    j["interval_index"] = record.interval_index;
    j["interval_start"] = record.interval_start;
    j["interval_end"] = record.interval_end;
    j["scheme"] = scheme_name(record.scheme);
    ordered_json present = ordered_json::array();
    for (const auto& device : record.present) present.push_back(device.value);
    j["present"] = std::move(present);
    ordered_json labeling = ordered_json::object();
    for (const auto& [device, label] : record.labeling) labeling[device.value] = label;
    j["labeling"] = std::move(labeling);
    j["params_digest"] = record.params_digest;
    return j.dump();
}

GroupRecord record_from_json(const std::string& line) {
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw InputError("malformed group record");
    }
    GroupRecord record;
    record.interval_index = j.at("interval_index").get<std::int64_t>();
    record.interval_start = j.at("interval_start").get<double>();
    record.interval_end = j.at("interval_end").get<double>();
    record.scheme = scheme_from_name(j.at("scheme").get<std::string>());
    for (const auto& device : j.at("present")) {
        record.present.insert(DeviceId{device.get<std::string>()});
    }
    for (const auto& [key, value] : j.at("labeling").items()) {
        record.labeling[DeviceId{key}] = value.get<int>();
    }
    record.params_digest = j.at("params_digest").get<std::string>();
    if (record.present.size() != record.labeling.size()) {
        throw InputError("group record labeling domain differs from present set");
    }
    return record;
}

GroupStore GroupStore::create(const std::filesystem::path& dir, const std::string& meta_json) {
    std::filesystem::create_directories(dir);
    GroupStore store(dir);
    store.records_out_.open(store.records_path(), std::ios::trunc);
    store.index_out_.open(store.index_path(), std::ios::trunc);
    if (!store.records_out_ || !store.index_out_) {
        throw InputError("cannot create store in " + dir.string());
    }
    std::ofstream meta(store.meta_path(), std::ios::trunc);
    meta << meta_json;
    if (!meta_json.empty() && meta_json.back() != '\n') meta << '\n';
    store.writable_ = true;
    return store;
}

GroupStore GroupStore::open(const std::filesystem::path& dir) {
    if (!std::filesystem::exists(dir) || !std::filesystem::is_directory(dir)) {
        throw InputError("store directory not found: " + dir.string());
    }
    GroupStore store(dir);
    if (!std::filesystem::exists(store.records_path())) {
        throw InputError("store has no records.jsonl: " + dir.string());
    }
    return store;
}

void GroupStore::append(const GroupRecord& record) {
    if (!writable_) {
        throw InputError("store opened read-only");
    }
    if (record.interval_index <= last_appended_) {
        throw InputError("non-monotone interval_index append rejected");
    }
    const std::string line = record_to_json(record);
    index_out_ << record.interval_index << '\t' << bytes_written_ << '\n';
    records_out_ << line << '\n';
    bytes_written_ += line.size() + 1;
    last_appended_ = record.interval_index;
}

void GroupStore::flush() {
    if (writable_) {
        records_out_.flush();
        index_out_.flush();
    }
}

std::vector<GroupRecord> GroupStore::all() const {
    std::ifstream in(records_path());
    std::vector<GroupRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) records.push_back(record_from_json(line));
    }
    return records;
}

std::vector<GroupRecord> GroupStore::query(double from, double to) const {
    // The sidecar index gives byte offsets per interval; records are in
    // interval order, so scan forward from the first overlapping offset and
    // stop once past the range.
    std::ifstream idx(index_path());
    std::vector<std::pair<std::int64_t, std::uint64_t>> index;
    std::int64_t interval = 0;
    std::uint64_t offset = 0;
    while (idx >> interval >> offset) index.emplace_back(interval, offset);

    std::ifstream in(records_path());
    if (!in) return {};
    std::vector<GroupRecord> out;
    std::string line;

    if (!index.empty()) {
        // Binary search the first record whose end might exceed `from`.
        // Interval length is uniform per run, so peek one record for bounds.
        std::getline(in, line);
        if (line.empty()) return {};
        const GroupRecord first = record_from_json(line);
        const double length = first.interval_end - first.interval_start;
        if (length > 0.0) {
            const double base = first.interval_start -
                                static_cast<double>(first.interval_index) * length;
            const auto first_needed = static_cast<std::int64_t>(
                std::floor((from - base) / length));
            auto it = std::lower_bound(index.begin(), index.end(), first_needed,
                                       [](const auto& entry, std::int64_t needed) {
                                           return entry.first < needed;
                                       });
            if (it == index.end()) return {};
            in.clear();
            in.seekg(static_cast<std::streamoff>(it->second));
        } else {
            in.clear();
            in.seekg(0);
        }
    }

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        GroupRecord record = record_from_json(line);
        if (record.interval_start >= to) break;
        if (record.interval_end > from && record.interval_start < to) {
            out.push_back(std::move(record));
        }
    }
    return out;
}

std::string GroupStore::meta_json() const {
    std::ifstream in(meta_path());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace groupin
