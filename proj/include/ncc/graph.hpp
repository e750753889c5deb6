#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace ncc {

using node_t = std::uint32_t;
using edge_pair = std::pair<node_t, node_t>;

// Immutable undirected simple graph in CSR form. Neighbor lists are sorted
// ascending; no self-loops, no parallel edges.
class Graph {
public:
    Graph() : offsets_{0} {}

    // edges must be unique, self-loop free, normalized (u < v) and
    // lexicographically sorted; endpoints must be < n.
    static Graph from_clean_edges(node_t n, std::span<const edge_pair> edges) {
        Graph g;
        g.n_ = n;
        std::vector<std::uint64_t> deg(n, 0);
        for (auto [u, v] : edges) {
            ++deg[u];
            ++deg[v];
        }
        g.offsets_.assign(n + 1, 0);
        for (node_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
        g.adj_.resize(g.offsets_[n]);
        std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
        for (auto [u, v] : edges) {
            g.adj_[cursor[u]++] = v;
            g.adj_[cursor[v]++] = u;
        }
        // Inserting sorted (u,v) pairs in order leaves every list sorted
        // except for interleaving of "left" and "right" endpoints.
        for (node_t v = 0; v < n; ++v) {
            auto first = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
            auto last = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
            if (!std::is_sorted(first, last)) std::sort(first, last);
        }
        return g;
    }

    node_t num_nodes() const { return n_; }
    std::uint64_t num_edges() const { return adj_.size() / 2; }

    std::uint64_t degree(node_t v) const { return offsets_[v + 1] - offsets_[v]; }

    std::span<const node_t> neighbors(node_t v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }

    bool has_edge(node_t u, node_t v) const {
        if (u >= n_ || v >= n_ || u == v) return false;
        auto nb = degree(u) <= degree(v) ? neighbors(u) : neighbors(v);
        node_t probe = degree(u) <= degree(v) ? v : u;
        return std::binary_search(nb.begin(), nb.end(), probe);
    }

    // Edges as normalized pairs (u < v), lexicographically sorted.
    std::vector<edge_pair> edge_list() const {
        std::vector<edge_pair> out;
        out.reserve(num_edges());
        for (node_t u = 0; u < n_; ++u)
            for (node_t v : neighbors(u))
                if (u < v) out.emplace_back(u, v);
        return out;
    }

private:
    node_t n_ = 0;
    std::vector<std::uint64_t> offsets_;
    std::vector<node_t> adj_;
};

enum class DedupPolicy {
    Drop,   // silently drop self-loops and duplicates, but count them
    Error,  // throw on the first self-loop or duplicate
};

struct BuildResult {
    Graph graph;
    std::uint64_t self_loops_dropped = 0;
    std::uint64_t duplicates_dropped = 0;
};

// Builds a simple graph from an arbitrary edge list. Node count is
// max(n_hint, 1 + max endpoint); pass n_hint = 0 to infer entirely from the
// edges. The result is independent of input order.
inline BuildResult build_graph(std::span<const edge_pair> edges, node_t n_hint = 0,
                               DedupPolicy policy = DedupPolicy::Drop) {
    BuildResult r;
    node_t n = n_hint;
    std::vector<edge_pair> norm;
    norm.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u >= n) {
            if (u == std::numeric_limits<node_t>::max())
                throw OutOfRange("node id too large");
            n = u + 1;
        }
        if (v >= n) {
            if (v == std::numeric_limits<node_t>::max())
                throw OutOfRange("node id too large");
            n = v + 1;
        }
        if (u == v) {
            if (policy == DedupPolicy::Error) throw Error("self-loop on node " + std::to_string(u));
            ++r.self_loops_dropped;
            continue;
        }
        norm.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(norm.begin(), norm.end());
    auto firstDup = std::unique(norm.begin(), norm.end());
    r.duplicates_dropped = static_cast<std::uint64_t>(norm.end() - firstDup);
    if (r.duplicates_dropped && policy == DedupPolicy::Error)
        throw Error("duplicate edge " + std::to_string(firstDup[-1].first) + "-" +
                    std::to_string(firstDup[-1].second));
    norm.erase(firstDup, norm.end());
    r.graph = Graph::from_clean_edges(n, norm);
    return r;
}

// Multigraph under construction: self-loops and parallel edges permitted.
struct MultiGraphDraft {
    node_t n = 0;
    std::vector<edge_pair> edges;

    std::uint64_t num_edges() const { return edges.size(); }
};

// Collapses a draft to a simple graph: drops self-loops, merges parallels.
inline Graph simplify(const MultiGraphDraft& draft) {
    return build_graph(draft.edges, draft.n).graph;
}

// Subgraph induced by a node subset, together with the mapping back: new id i
// corresponds to original node original_ids[i]; original_ids is ascending.
struct InducedSubgraph {
    Graph graph;
    std::vector<node_t> original_ids;
};

inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const node_t> nodes) {
    InducedSubgraph out;
    out.original_ids.assign(nodes.begin(), nodes.end());
    std::sort(out.original_ids.begin(), out.original_ids.end());
    out.original_ids.erase(std::unique(out.original_ids.begin(), out.original_ids.end()),
                           out.original_ids.end());
    if (!out.original_ids.empty() && out.original_ids.back() >= g.num_nodes())
        throw OutOfRange("induced_subgraph: node id " + std::to_string(out.original_ids.back()) +
                         " out of range");
    const auto& ids = out.original_ids;
    auto rank_of = [&ids](node_t orig) {
        return static_cast<node_t>(std::lower_bound(ids.begin(), ids.end(), orig) - ids.begin());
    };
    std::vector<edge_pair> edges;
    for (node_t u = 0; u < ids.size(); ++u) {
        for (node_t w : g.neighbors(ids[u])) {
            if (w <= ids[u]) continue;
            node_t v = rank_of(w);
            if (v < ids.size() && ids[v] == w) edges.emplace_back(u, v);
        }
    }
    out.graph = Graph::from_clean_edges(static_cast<node_t>(ids.size()), edges);
    return out;
}

// Induced subgraph on a center vertex and its neighbors.
inline InducedSubgraph ego_network(const Graph& g, node_t center) {
    if (center >= g.num_nodes())
        throw OutOfRange("ego_network: node id " + std::to_string(center) + " out of range");
    auto nb = g.neighbors(center);
    std::vector<node_t> nodes(nb.begin(), nb.end());
    nodes.push_back(center);
    return induced_subgraph(g, nodes);
}

// Dense node labels in [0, k).
struct NodeLabeling {
    std::vector<std::uint32_t> labels;
    std::uint32_t k = 0;

    void validate(node_t n) const {
        if (labels.size() != n)
            throw OutOfRange("labeling covers " + std::to_string(labels.size()) + " nodes, graph has " +
                             std::to_string(n));
        for (auto l : labels)
            if (l >= k) throw OutOfRange("label " + std::to_string(l) + " outside [0, k)");
    }
};

}  // namespace ncc
