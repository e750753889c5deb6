#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graph.hpp"
#include "subgraph_stats.hpp"

namespace ncc {

// One bill: its sponsor and the senators who cosponsored it.
struct SponsorshipRecord {
    node_t sponsor;
    std::vector<node_t> cosponsors;
};

struct WpcOptions {
    double threshold = 0.1;
    // false: connect i,j when either direction clears the threshold.
    // true: require both directions.
    bool require_both_directions = false;
    node_t n = 0;  // node count; 0 infers from the records
};

// Weighted propensity of cosponsorship from i toward sponsor j:
//   wpc(i, j) = (sum over j's bills cosponsored by i of 1/c) / (sum over all
//               of j's bills of 1/c),
// where c is the bill's cosponsor count. Bills with no cosponsors are
// skipped. Accumulation is grouped by cosponsor count and summed in
// ascending-count order, so the result is invariant to record order.
inline Graph build_wpc_network(std::span<const SponsorshipRecord> records, const WpcOptions& opt = {}) {
    if (opt.threshold < 0.0 || opt.threshold > 1.0)
        throw OutOfRange("wpc threshold must be in [0, 1]");
    node_t n = opt.n;
    for (const auto& rec : records) {
        n = std::max(n, rec.sponsor + 1);
        for (node_t c : rec.cosponsors) n = std::max(n, c + 1);
    }
    // multiplicity histograms keyed by cosponsor count
    std::map<std::pair<node_t, node_t>, std::map<std::uint32_t, std::uint32_t>> pair_hist;
    std::map<node_t, std::map<std::uint32_t, std::uint32_t>> sponsor_hist;
    for (const auto& rec : records) {
        auto c = static_cast<std::uint32_t>(rec.cosponsors.size());
        if (c == 0) continue;
        sponsor_hist[rec.sponsor][c] += 1;
        for (node_t i : rec.cosponsors) {
            if (i == rec.sponsor)
                throw OutOfRange("sponsor " + std::to_string(i) + " listed as own cosponsor");
            pair_hist[{i, rec.sponsor}][c] += 1;
        }
    }
    auto weight_sum = [](const std::map<std::uint32_t, std::uint32_t>& hist) {
        double s = 0.0;
        for (auto [c, count] : hist) s += static_cast<double>(count) / c;
        return s;
    };
    std::map<node_t, double> denom;
    for (const auto& [j, hist] : sponsor_hist) denom[j] = weight_sum(hist);
    std::map<std::pair<node_t, node_t>, double> wpc;
    for (const auto& [ij, hist] : pair_hist) wpc[ij] = weight_sum(hist) / denom.at(ij.second);

    std::vector<edge_pair> edges;
    for (const auto& [ij, w] : wpc) {
        auto [i, j] = ij;
        if (i > j) continue;  // handle each unordered pair once, from (min,max)
        bool fwd = w >= opt.threshold;
        auto rev = wpc.find({j, i});
        bool bwd = rev != wpc.end() && rev->second >= opt.threshold;
        bool keep = opt.require_both_directions ? (fwd && bwd) : (fwd || bwd);
        if (keep) edges.emplace_back(i, j);
    }
    // pairs where only (max,min) has weight
    for (const auto& [ij, w] : wpc) {
        auto [i, j] = ij;
        if (i <= j) continue;
        if (wpc.count({j, i})) continue;  // already handled above
        if (!opt.require_both_directions && w >= opt.threshold) edges.emplace_back(j, i);
    }
    return build_graph(edges, n).graph;
}

// Ratio of observed within-group to between-group edge densities:
//   ratio = (within / within_pairs) / (between / between_pairs),
// which is 1 for a label-blind graph. Undefined (nullopt) when a pair class
// is empty or the graph has no between-group edges.
inline std::optional<double> true_in_out_ratio(const Graph& g, const NodeLabeling& lab) {
    lab.validate(g.num_nodes());
    std::uint64_t within = 0, between = 0;
    for (node_t u = 0; u < g.num_nodes(); ++u)
        for (node_t v : g.neighbors(u))
            if (u < v) (lab.labels[u] == lab.labels[v] ? within : between) += 1;
    std::vector<std::uint64_t> group_size(lab.k, 0);
    for (auto l : lab.labels) ++group_size[l];
    auto n = static_cast<std::uint64_t>(g.num_nodes());
    std::uint64_t within_pairs = 0;
    for (auto s : group_size) within_pairs += s * (s - 1) / 2;
    std::uint64_t between_pairs = n * (n - 1) / 2 - within_pairs;
    if (within_pairs == 0 || between_pairs == 0 || between == 0) return std::nullopt;
    double win = static_cast<double>(within) / static_cast<double>(within_pairs);
    double btw = static_cast<double>(between) / static_cast<double>(between_pairs);
    return win / btw;
}

// One time point of an evolving network.
struct Snapshot {
    std::string tag;
    Graph graph;
    std::optional<NodeLabeling> labels;
};

struct SnapshotRow {
    std::string tag;
    node_t n = 0;
    std::uint64_t edges = 0;
    std::optional<double> rho_hat;
    std::optional<double> cc_hat;
    std::optional<double> in_out_ratio;
};

// Per-snapshot summary statistics; undefined values stay unset.
inline std::vector<SnapshotRow> series_stats(std::span<const Snapshot> snaps, unsigned workers = 1) {
    std::vector<SnapshotRow> rows(snaps.size());
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        const Snapshot& s = snaps[i];
        SnapshotRow& row = rows[i];
        row.tag = s.tag;
        row.n = s.graph.num_nodes();
        row.edges = s.graph.num_edges();
        if (row.n >= 3) {
            GraphStats st = graph_stats(s.graph, workers);
            row.rho_hat = st.rho_hat;
            row.cc_hat = st.cc_hat;
        }
        if (s.labels) row.in_out_ratio = true_in_out_ratio(s.graph, *s.labels);
    }
    return rows;
}

}  // namespace ncc
