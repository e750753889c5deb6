#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "parallel.hpp"

namespace ncc {

struct SubgraphCounts {
    std::uint64_t edges = 0;
    std::uint64_t wedges = 0;     // paths on 3 distinct vertices, center counted once
    std::uint64_t triangles = 0;  // unordered vertex triples
};

namespace detail {

// Orientation by (degree, id): each triangle is visited exactly once, at its
// lowest-ranked vertex, and the per-vertex out-lists stay short on skewed
// degree sequences.
struct Orientation {
    std::vector<std::uint64_t> off;
    std::vector<node_t> adj;
};

inline Orientation orient_by_degree(const Graph& g) {
    node_t n = g.num_nodes();
    std::vector<std::uint64_t> rank(n);
    {
        std::vector<node_t> order(n);
        for (node_t v = 0; v < n; ++v) order[v] = v;
        std::sort(order.begin(), order.end(), [&g](node_t a, node_t b) {
            auto da = g.degree(a), db = g.degree(b);
            return da != db ? da < db : a < b;
        });
        for (node_t i = 0; i < n; ++i) rank[order[i]] = i;
    }
    Orientation o;
    o.off.assign(n + 1, 0);
    for (node_t u = 0; u < n; ++u) {
        std::uint64_t c = 0;
        for (node_t v : g.neighbors(u))
            if (rank[v] > rank[u]) ++c;
        o.off[u + 1] = o.off[u] + c;
    }
    o.adj.resize(o.off[n]);
    for (node_t u = 0; u < n; ++u) {
        std::uint64_t w = o.off[u];
        for (node_t v : g.neighbors(u))
            if (rank[v] > rank[u]) o.adj[w++] = v;  // id-sorted: filtered from a sorted list
    }
    return o;
}

inline std::uint64_t intersect_size(const node_t* a, const node_t* a_end, const node_t* b,
                                    const node_t* b_end) {
    std::uint64_t c = 0;
    while (a != a_end && b != b_end) {
        if (*a < *b)
            ++a;
        else if (*b < *a)
            ++b;
        else {
            ++c;
            ++a;
            ++b;
        }
    }
    return c;
}

}  // namespace detail

// Exact edge, wedge and triangle counts. Work is split into fixed vertex
// blocks; block sums are integers, so any worker count yields the same total.
inline SubgraphCounts count_subgraphs(const Graph& g, unsigned workers = 1) {
    SubgraphCounts c;
    node_t n = g.num_nodes();
    c.edges = g.num_edges();
    for (node_t v = 0; v < n; ++v) {
        std::uint64_t d = g.degree(v);
        c.wedges += d * (d - 1) / 2;
    }
    if (c.edges >= 3) {
        auto o = detail::orient_by_degree(g);
        unsigned nblocks = workers == 0 ? 1 : workers;
        std::vector<std::uint64_t> block_sum(nblocks, 0);
        parallel_blocks(nblocks, workers, [&](std::size_t bfirst, std::size_t blast) {
            for (std::size_t b = bfirst; b < blast; ++b) {
                node_t lo = static_cast<node_t>(std::uint64_t{n} * b / nblocks);
                node_t hi = static_cast<node_t>(std::uint64_t{n} * (b + 1) / nblocks);
                std::uint64_t sum = 0;
                for (node_t u = lo; u < hi; ++u) {
                    const node_t* ub = o.adj.data() + o.off[u];
                    const node_t* ue = o.adj.data() + o.off[u + 1];
                    for (const node_t* p = ub; p != ue; ++p) {
                        node_t v = *p;
                        sum += detail::intersect_size(ub, ue, o.adj.data() + o.off[v],
                                                      o.adj.data() + o.off[v + 1]);
                    }
                }
                block_sum[b] = sum;
            }
        });
        for (auto s : block_sum) c.triangles += s;
    }
    return c;
}

// Normalized subgraph densities and the clustering statistics built from
// them. rho_hat compares the triangle density against the value implied by
// the edge and wedge densities; cc_hat is the classic transitivity ratio.
struct GraphStats {
    node_t n = 0;
    SubgraphCounts counts;
    double e_hat = 0.0;  // edges / C(n,2)
    double v_hat = 0.0;  // wedges / (3 C(n,3))
    double t_hat = 0.0;  // triangles / C(n,3)
    std::optional<double> rho_hat;   // t_hat e_hat^3 / v_hat^3
    std::optional<double> cc_hat;    // 3 triangles / wedges
    std::optional<double> cc_ratio;  // 3 t_hat / v_hat = 9 triangles / wedges
};

inline GraphStats graph_stats(const Graph& g, unsigned workers = 1) {
    node_t n = g.num_nodes();
    if (n < 3)
        throw DegenerateGraph("statistics need at least 3 nodes, graph has " + std::to_string(n));
    GraphStats s;
    s.n = n;
    s.counts = count_subgraphs(g, workers);
    double nn = static_cast<double>(n);
    double c2 = nn * (nn - 1.0) / 2.0;
    double c3 = nn * (nn - 1.0) * (nn - 2.0) / 6.0;
    s.e_hat = static_cast<double>(s.counts.edges) / c2;
    s.v_hat = static_cast<double>(s.counts.wedges) / (3.0 * c3);
    s.t_hat = static_cast<double>(s.counts.triangles) / c3;
    if (s.counts.wedges > 0) {
        double ratio = s.e_hat / s.v_hat;
        s.rho_hat = s.t_hat * ratio * ratio * ratio;
        s.cc_hat = 3.0 * static_cast<double>(s.counts.triangles) / static_cast<double>(s.counts.wedges);
        s.cc_ratio = 3.0 * *s.cc_hat;
    }
    return s;
}

// Same statistic evaluated through adjacency-matrix functionals:
//   rho = (N-2)^2 tr(A^3) (1'A1)^3 / ( N(N-1) (1'A^2 1 - tr(A^2))^3 ).
// The walk sums are computed directly from neighborhoods (per-edge common
// neighbor counts for tr(A^3), degree sums for the rest), independently of
// count_subgraphs, so the two routes cross-check each other.
inline double rho_matrix_form(const Graph& g, unsigned workers = 1) {
    node_t n = g.num_nodes();
    if (n < 3)
        throw DegenerateGraph("statistics need at least 3 nodes, graph has " + std::to_string(n));
    std::uint64_t sum_deg = 0, sum_deg_sq = 0;
    for (node_t v = 0; v < n; ++v) {
        std::uint64_t d = g.degree(v);
        sum_deg += d;
        sum_deg_sq += d * d;
    }
    std::uint64_t two_w = sum_deg_sq - sum_deg;  // 1'A^2 1 - tr(A^2)
    if (two_w == 0) throw RhoUndefined("rho undefined: graph has no wedges");
    unsigned nblocks = workers == 0 ? 1 : workers;
    std::vector<std::uint64_t> closed_walks(nblocks, 0);  // per-block share of tr(A^3)
    parallel_blocks(nblocks, workers, [&](std::size_t bfirst, std::size_t blast) {
        for (std::size_t b = bfirst; b < blast; ++b) {
            node_t lo = static_cast<node_t>(std::uint64_t{n} * b / nblocks);
            node_t hi = static_cast<node_t>(std::uint64_t{n} * (b + 1) / nblocks);
            std::uint64_t sum = 0;
            for (node_t u = lo; u < hi; ++u) {
                auto nu = g.neighbors(u);
                for (node_t v : nu) {
                    auto nv = g.neighbors(v);
                    sum += detail::intersect_size(nu.data(), nu.data() + nu.size(), nv.data(),
                                                  nv.data() + nv.size());
                }
            }
            closed_walks[b] = sum;
        }
    });
    std::uint64_t tr_a3 = 0;
    for (auto s : closed_walks) tr_a3 += s;
    double nn = static_cast<double>(n);
    double num = (nn - 2.0) * (nn - 2.0) * static_cast<double>(tr_a3);
    double one_a_one = static_cast<double>(sum_deg);
    num *= one_a_one * one_a_one * one_a_one;
    double dw = static_cast<double>(two_w);
    double den = nn * (nn - 1.0) * dw * dw * dw;
    return num / den;
}

}  // namespace ncc
