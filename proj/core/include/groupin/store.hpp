#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "groupin/cluster.hpp"

namespace groupin {

enum class Scheme { kCentralizedWfm, kCentralizedMdd, kDecentralized };

std::string scheme_name(Scheme scheme);
Scheme scheme_from_name(const std::string& name);

/// Per-interval clustering output; the unit of persistence and of linkage
/// aggregation. Empty intervals are persisted too so downstream statistics
/// have well-defined denominators.
struct GroupRecord {
    std::int64_t interval_index = 0;
    double interval_start = 0.0;
    double interval_end = 0.0;
    Scheme scheme = Scheme::kCentralizedWfm;
    GroupLabeling labeling;           // domain == present
    std::set<DeviceId> present;
    std::string params_digest;        // stable hash of the full run config

    bool empty() const { return present.empty(); }
};

/// Append-only, time-indexed record store backed by a JSON Lines file plus
/// a sidecar (interval_index -> byte offset) index for range queries.
/// Layout: <dir>/records.jsonl, <dir>/records.idx, <dir>/meta.json.
class GroupStore {
public:
    /// Creates the directory (if needed) and truncates any previous run.
    /// meta_json is stored verbatim as meta.json.
    static GroupStore create(const std::filesystem::path& dir, const std::string& meta_json);

    /// Opens an existing store for reading.
    static GroupStore open(const std::filesystem::path& dir);

    /// Appends one record. Indices must be strictly increasing.
    void append(const GroupRecord& record);
    void flush();

    /// All records whose [interval_start, interval_end) intersects [from, to).
    std::vector<GroupRecord> query(double from, double to) const;

    /// Every record, in interval order.
    std::vector<GroupRecord> all() const;

    const std::filesystem::path& dir() const { return dir_; }
    std::string meta_json() const;

private:
    explicit GroupStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

    std::filesystem::path records_path() const { return dir_ / "records.jsonl"; }
    std::filesystem::path index_path() const { return dir_ / "records.idx"; }
    std::filesystem::path meta_path() const { return dir_ / "meta.json"; }

    std::filesystem::path dir_;
    std::ofstream records_out_;
    std::ofstream index_out_;
    std::int64_t last_appended_ = -1;
    std::uint64_t bytes_written_ = 0;
    bool writable_ = false;
};

std::string record_to_json(const GroupRecord& record);
GroupRecord record_from_json(const std::string& line);

}  // namespace groupin
