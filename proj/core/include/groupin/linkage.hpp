#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "groupin/store.hpp"

namespace groupin {

struct LinkageEdge {
    std::size_t co_group = 0;    // intervals listed in the same group
    std::size_t co_present = 0;  // intervals where both are present
    double linkage = 0.0;        // co_group / co_present
};

/// Long-term pairwise linkage graph folded from group records.
class LinkageGraph {
public:
    void fold(const GroupRecord& record);

    /// Edges with co_present >= min_co_present, canonical pair order.
    std::map<std::pair<DeviceId, DeviceId>, LinkageEdge> edges(
        std::size_t min_co_present) const;

    const std::set<DeviceId>& vertices() const { return vertices_; }

private:
    std::set<DeviceId> vertices_;
    std::map<std::pair<DeviceId, DeviceId>, LinkageEdge> raw_;
};

LinkageGraph linkage_build(std::span<const GroupRecord> records);

/// CSV columns: a,b,linkage,co_group,co_present.
void write_linkage_csv(std::ostream& out, const LinkageGraph& graph,
                       std::size_t min_co_present);

/// Weighted edge list as a DOT graph for external visualization.
void write_linkage_dot(std::ostream& out, const LinkageGraph& graph,
                       std::size_t min_co_present);

struct IntervalStats {
    std::int64_t interval_index = 0;
    std::size_t people = 0;
    std::size_t groups = 0;
    double people_per_group = 0.0;  // 0 when no groups
};

struct GroupStats {
    std::vector<IntervalStats> series;
    std::map<std::size_t, std::size_t> size_histogram;  // group size -> count
};

GroupStats stats_build(std::span<const GroupRecord> records);

/// CSV columns: interval_index,people,groups,people_per_group.
void write_stats_csv(std::ostream& out, const GroupStats& stats);

/// CSV columns: group_size,count.
void write_histogram_csv(std::ostream& out, const GroupStats& stats);

}  // namespace groupin
