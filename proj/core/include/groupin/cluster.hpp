#pragma once

#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "groupin/match.hpp"

namespace groupin {

/// Undirected weighted graph over observed devices. No self loops, edge
/// keys canonical (a < b), weights in [0, 1].
struct SimilarityGraph {
    std::set<DeviceId> vertices;
    std::map<std::pair<DeviceId, DeviceId>, double> edges;

    double weight(const DeviceId& a, const DeviceId& b) const;
};

enum class ClusterAlgorithm { kHcs, kMaxClique, kDenGraph };

struct ClusterParams {
    ClusterAlgorithm algorithm = ClusterAlgorithm::kHcs;
    double min_edge_weight = 0.5;   // [0, 1]; edges below this are pruned
    double threshold = 0.5;         // (0, 1.5]; HCS connectivity scale
    double cluster_distance = 0.2;  // (0, 1]; DenGraph epsilon
    std::size_t max_cliques = 1000000;

    void validate() const;
};

/// Device -> dense group label starting at 0. Groups are numbered by their
/// lexicographically smallest member, so labeling is deterministic.
using GroupLabeling = std::map<DeviceId, int>;

/// Keeps every observed device as a vertex (isolated if unscored) and drops
/// edges whose weight is below min_edge_weight.
SimilarityGraph build_graph(std::span<const PairScore> scores,
                            const std::set<DeviceId>& devices,
                            double min_edge_weight);

/// Highly-connected-subgraphs clustering: a connected component is accepted
/// as one group when its weighted global min-cut is >= threshold * |C| / 2,
/// otherwise it is split along the min-cut and both sides recurse.
GroupLabeling cluster_hcs(const SimilarityGraph& graph, const ClusterParams& params);

/// Enumerates maximal cliques (Bron-Kerbosch with pivoting) and assigns them
/// greedily by (size, total edge weight, lexicographic member order); the
/// unassigned members of each taken clique form one group.
/// Throws ConfigError when the clique cap is exceeded.
GroupLabeling cluster_maxclique(const SimilarityGraph& graph, const ClusterParams& params);

/// Density clustering on the graph with node distance 1 - w for existing
/// edges. A vertex is core when it has at least two neighbors within
/// cluster_distance; noise vertices become singletons.
GroupLabeling cluster_dengraph(const SimilarityGraph& graph, const ClusterParams& params);

/// Dispatch on params.algorithm.
GroupLabeling cluster(const SimilarityGraph& graph, const ClusterParams& params);

/// Relabels groups densely from 0 ordered by smallest member id.
GroupLabeling canonicalize_labels(const std::vector<std::set<DeviceId>>& groups);

}  // namespace groupin
