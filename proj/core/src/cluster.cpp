#include "groupin/cluster.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace groupin {

namespace {

/// Index-based view of a vertex subset with a dense adjacency matrix.
/// Small components dominate in practice, so O(V^2) storage is fine.
struct DenseSubgraph {
    std::vector<DeviceId> ids;  // sorted
    std::vector<std::vector<double>> w;

    static DenseSubgraph from(const SimilarityGraph& graph,
                              const std::vector<DeviceId>& members) {
        DenseSubgraph sub;
        sub.ids = members;
        std::sort(sub.ids.begin(), sub.ids.end());
        const std::size_t n = sub.ids.size();
        sub.w.assign(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double weight = graph.weight(sub.ids[i], sub.ids[j]);
                sub.w[i][j] = weight;
                sub.w[j][i] = weight;
            }
        }
        return sub;
    }
};

/// Stoer-Wagner global minimum cut. Returns (cut value, one side of the
/// cut as indices into the subgraph). Deterministic: ties pick the lowest
/// index. Requires n >= 2.
std::pair<double, std::vector<std::size_t>> stoer_wagner(const DenseSubgraph& sub) {
    const std::size_t n = sub.ids.size();
    std::vector<std::vector<double>> w = sub.w;
    // merged[i] lists the original vertices currently contracted into i
    std::vector<std::vector<std::size_t>> merged(n);
    for (std::size_t i = 0; i < n; ++i) merged[i] = {i};
    std::vector<std::size_t> active(n);
    std::iota(active.begin(), active.end(), 0);

    double best_cut = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_side;

    while (active.size() > 1) {
        // Maximum adjacency order starting from the first active vertex.
        std::vector<std::size_t> order;
        std::vector<double> conn(n, 0.0);
        std::vector<bool> added(n, false);
        order.push_back(active[0]);
        added[active[0]] = true;
        for (std::size_t v : active) {
            if (!added[v]) conn[v] = w[active[0]][v];
        }
        while (order.size() < active.size()) {
            std::size_t next = n;
            double best = -1.0;
            for (std::size_t v : active) {
                if (added[v]) continue;
                if (conn[v] > best) {
                    best = conn[v];
                    next = v;
                }
            }
            order.push_back(next);
            added[next] = true;
            for (std::size_t v : active) {
                if (!added[v]) conn[v] += w[next][v];
            }
        }
        const std::size_t t = order.back();
        const std::size_t s = order[order.size() - 2];
        const double cut_of_phase = conn[t];
        if (cut_of_phase < best_cut) {
            best_cut = cut_of_phase;
            best_side = merged[t];
        }
        // Contract t into s.
        for (std::size_t v : active) {
            if (v == s || v == t) continue;
            w[s][v] += w[t][v];
            w[v][s] = w[s][v];
        }
        merged[s].insert(merged[s].end(), merged[t].begin(), merged[t].end());
        active.erase(std::remove(active.begin(), active.end(), t), active.end());
    }
    std::sort(best_side.begin(), best_side.end());
    return {best_cut, best_side};
}

std::vector<std::vector<DeviceId>> connected_components(
    const SimilarityGraph& graph, const std::vector<DeviceId>& members) {
    std::set<DeviceId> in_scope(members.begin(), members.end());
    std::map<DeviceId, std::vector<DeviceId>> adjacency;
    for (const auto& [pair, weight] : graph.edges) {
        if (in_scope.count(pair.first) && in_scope.count(pair.second)) {
            adjacency[pair.first].push_back(pair.second);
            adjacency[pair.second].push_back(pair.first);
        }
    }
    std::vector<std::vector<DeviceId>> components;
    std::set<DeviceId> seen;
    for (const auto& v : members) {
        if (seen.count(v)) continue;
        std::vector<DeviceId> stack{v};
        std::vector<DeviceId> component;
        seen.insert(v);
        while (!stack.empty()) {
            DeviceId u = stack.back();
            stack.pop_back();
            component.push_back(u);
            auto it = adjacency.find(u);
            if (it == adjacency.end()) continue;
            for (const auto& nb : it->second) {
                if (seen.insert(nb).second) stack.push_back(nb);
            }
        }
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
    }
    return components;
}

void hcs_recurse(const SimilarityGraph& graph, const std::vector<DeviceId>& component,
                 double threshold, std::vector<std::set<DeviceId>>& groups) {
    if (component.size() == 1) {
        groups.push_back({component.front()});
        return;
    }
    const DenseSubgraph sub = DenseSubgraph::from(graph, component);
    const auto [cut, side_indices] = stoer_wagner(sub);
    if (cut >= threshold * static_cast<double>(component.size()) / 2.0) {
        groups.emplace_back(component.begin(), component.end());
        return;
    }
    std::vector<bool> in_side(sub.ids.size(), false);
    for (std::size_t i : side_indices) in_side[i] = true;
    std::vector<DeviceId> side_a;
    std::vector<DeviceId> side_b;
    for (std::size_t i = 0; i < sub.ids.size(); ++i) {
        (in_side[i] ? side_a : side_b).push_back(sub.ids[i]);
    }
    for (const auto& side : {side_a, side_b}) {
        for (const auto& sub_component : connected_components(graph, side)) {
            hcs_recurse(graph, sub_component, threshold, groups);
        }
    }
}

/// Bron-Kerbosch with pivoting over an adjacency-set representation.
void bron_kerbosch(const std::vector<std::set<std::size_t>>& adj,
                   std::set<std::size_t>& r, std::set<std::size_t> p,
                   std::set<std::size_t> x, std::size_t cap,
                   std::vector<std::vector<std::size_t>>& cliques) {
    if (p.empty() && x.empty()) {
        if (cliques.size() >= cap) {
            throw ConfigError(
                "maximal clique cap exceeded; raise min_edge_weight to thin the graph");
        }
        cliques.emplace_back(r.begin(), r.end());
        return;
    }
    // Pivot: vertex of P union X with the most neighbors in P.
    std::size_t pivot = 0;
    std::size_t best = 0;
    bool found = false;
    for (const auto& candidate_set : {p, x}) {
        for (std::size_t u : candidate_set) {
            std::size_t count = 0;
            for (std::size_t v : p) {
                if (adj[u].count(v)) ++count;
            }
            if (!found || count > best) {
                pivot = u;
                best = count;
                found = true;
            }
        }
    }
    std::vector<std::size_t> candidates;
    for (std::size_t v : p) {
        if (!adj[pivot].count(v)) candidates.push_back(v);
    }
    for (std::size_t v : candidates) {
        std::set<std::size_t> p_next;
        std::set<std::size_t> x_next;
        for (std::size_t u : p) {
            if (adj[v].count(u)) p_next.insert(u);
        }
        for (std::size_t u : x) {
            if (adj[v].count(u)) x_next.insert(u);
        }
        r.insert(v);
        bron_kerbosch(adj, r, std::move(p_next), std::move(x_next), cap, cliques);
        r.erase(v);
        p.erase(v);
        x.insert(v);
    }
}

}  // namespace

double SimilarityGraph::weight(const DeviceId& a, const DeviceId& b) const {
    const auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    const auto it = edges.find(key);
    return it == edges.end() ? 0.0 : it->second;
}

void ClusterParams::validate() const {
    if (min_edge_weight < 0.0 || min_edge_weight > 1.0) {
        throw ConfigError("min_edge_weight must be in [0, 1]");
    }
    if (!(threshold > 0.0 && threshold <= 1.5)) {
        throw ConfigError("threshold must be in (0, 1.5]");
    }
    if (!(cluster_distance > 0.0 && cluster_distance <= 1.0)) {
        throw ConfigError("cluster_distance must be in (0, 1]");
    }
}

SimilarityGraph build_graph(std::span<const PairScore> scores,
                            const std::set<DeviceId>& devices,
                            double min_edge_weight) {
    SimilarityGraph graph;
    graph.vertices = devices;
    for (const auto& score : scores) {
        if (score.value < min_edge_weight) continue;
        if (!(score.a < score.b)) {
            throw InputError("pair scores must be canonically ordered");
        }
        graph.vertices.insert(score.a);
        graph.vertices.insert(score.b);
        graph.edges[{score.a, score.b}] = score.value;
    }
    return graph;
}

GroupLabeling cluster_hcs(const SimilarityGraph& graph, const ClusterParams& params) {
    params.validate();
    std::vector<DeviceId> all(graph.vertices.begin(), graph.vertices.end());
    std::vector<std::set<DeviceId>> groups;
    for (const auto& component : connected_components(graph, all)) {
        hcs_recurse(graph, component, params.threshold, groups);
    }
    return canonicalize_labels(groups);
}

GroupLabeling cluster_maxclique(const SimilarityGraph& graph, const ClusterParams& params) {
    params.validate();
    const std::vector<DeviceId> ids(graph.vertices.begin(), graph.vertices.end());
    std::map<DeviceId, std::size_t> index;
    for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
    std::vector<std::set<std::size_t>> adj(ids.size());
    for (const auto& [pair, weight] : graph.edges) {
        adj[index.at(pair.first)].insert(index.at(pair.second));
        adj[index.at(pair.second)].insert(index.at(pair.first));
    }

    std::vector<std::vector<std::size_t>> cliques;
    std::set<std::size_t> r;
    std::set<std::size_t> p;
    std::set<std::size_t> x;
    for (std::size_t i = 0; i < ids.size(); ++i) p.insert(i);
    if (!ids.empty()) {
        bron_kerbosch(adj, r, std::move(p), std::move(x), params.max_cliques, cliques);
    }

    struct RankedClique {
        std::vector<std::size_t> members;  // sorted indices
        double total_weight = 0.0;
    };
    std::vector<RankedClique> ranked;
    ranked.reserve(cliques.size());
    for (auto& clique : cliques) {
        RankedClique rc;
        rc.members = std::move(clique);
        for (std::size_t i = 0; i < rc.members.size(); ++i) {
            for (std::size_t j = i + 1; j < rc.members.size(); ++j) {
                rc.total_weight += graph.weight(ids[rc.members[i]], ids[rc.members[j]]);
            }
        }
        ranked.push_back(std::move(rc));
    }
    std::sort(ranked.begin(), ranked.end(), [&](const RankedClique& a, const RankedClique& b) {
        if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
        if (a.total_weight != b.total_weight) return a.total_weight > b.total_weight;
        return std::lexicographical_compare(
            a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
            [&](std::size_t lhs, std::size_t rhs) { return ids[lhs] < ids[rhs]; });
    });

    std::vector<bool> assigned(ids.size(), false);
    std::vector<std::set<DeviceId>> groups;
    for (const auto& clique : ranked) {
        std::set<DeviceId> members;
        for (std::size_t i : clique.members) {
            if (!assigned[i]) {
                members.insert(ids[i]);
                assigned[i] = true;
            }
        }
        if (!members.empty()) groups.push_back(std::move(members));
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (!assigned[i]) groups.push_back({ids[i]});
    }
    return canonicalize_labels(groups);
}

GroupLabeling cluster_dengraph(const SimilarityGraph& graph, const ClusterParams& params) {
    params.validate();
    const std::vector<DeviceId> ids(graph.vertices.begin(), graph.vertices.end());
    std::map<DeviceId, std::size_t> index;
    for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;

    // epsilon-neighborhood: graph neighbors with distance 1 - w <= epsilon
    std::vector<std::vector<std::size_t>> eps_adj(ids.size());
    for (const auto& [pair, weight] : graph.edges) {
        if (1.0 - weight <= params.cluster_distance) {
            eps_adj[index.at(pair.first)].push_back(index.at(pair.second));
            eps_adj[index.at(pair.second)].push_back(index.at(pair.first));
        }
    }
    for (auto& neighbors : eps_adj) std::sort(neighbors.begin(), neighbors.end());

    constexpr std::size_t kMinNeighborhood = 2;
    std::vector<bool> core(ids.size(), false);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        core[i] = eps_adj[i].size() >= kMinNeighborhood;
    }

    // Expand clusters from cores in deterministic order; borders join the
    // first cluster that reaches them. Remaining vertices are noise.
    std::vector<int> label(ids.size(), -1);
    int next_label = 0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (!core[i] || label[i] != -1) continue;
        const int cluster_id = next_label++;
        std::vector<std::size_t> queue{i};
        label[i] = cluster_id;
        while (!queue.empty()) {
            const std::size_t u = queue.back();
            queue.pop_back();
            if (!core[u]) continue;  // borders do not expand
            for (std::size_t v : eps_adj[u]) {
                if (label[v] == -1) {
                    label[v] = cluster_id;
                    queue.push_back(v);
                }
            }
        }
    }

    std::vector<std::set<DeviceId>> groups(static_cast<std::size_t>(next_label));
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (label[i] >= 0) {
            groups[static_cast<std::size_t>(label[i])].insert(ids[i]);
        } else {
            groups.push_back({ids[i]});  // noise -> singleton
        }
    }
    groups.erase(std::remove_if(groups.begin(), groups.end(),
                                [](const auto& g) { return g.empty(); }),
                 groups.end());
    return canonicalize_labels(groups);
}

GroupLabeling cluster(const SimilarityGraph& graph, const ClusterParams& params) {
    switch (params.algorithm) {
        case ClusterAlgorithm::kHcs:
            return cluster_hcs(graph, params);
        case ClusterAlgorithm::kMaxClique:
            return cluster_maxclique(graph, params);
        case ClusterAlgorithm::kDenGraph:
            return cluster_dengraph(graph, params);
    }
    throw ConfigError("unknown clustering algorithm");
}

GroupLabeling canonicalize_labels(const std::vector<std::set<DeviceId>>& groups) {
    std::vector<const std::set<DeviceId>*> sorted;
    sorted.reserve(groups.size());
    for (const auto& group : groups) {
        if (!group.empty()) sorted.push_back(&group);
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const auto* a, const auto* b) { return *a->begin() < *b->begin(); });
    GroupLabeling labeling;
    int label = 0;
    for (const auto* group : sorted) {
        for (const auto& device : *group) {
            labeling[device] = label;
        }
        ++label;
    }
    return labeling;
}

}  // namespace groupin
