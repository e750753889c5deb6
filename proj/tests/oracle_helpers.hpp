#pragma once

// Test-side reference implementations, deliberately independent of the
// library's algorithms: exhaustive triple enumeration, a one-sample KS
// test, midrank AUC, and a helper for shelling out to the CLI binary.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <ncc/graph.hpp>

namespace oracle {

// build_graph takes a span; this wraps list-literal call sites in tests.
inline ncc::Graph make_graph(std::vector<ncc::edge_pair> edges,
                             ncc::node_t n_hint = 0) {
    return ncc::build_graph(edges, n_hint).graph;
}

struct BruteCounts {
    std::uint64_t edges = 0;
    std::uint64_t wedges = 0;
    std::uint64_t triangles = 0;
};

// O(n^3) triple scan over an adjacency matrix. Counts every path on three
// distinct vertices once (by its middle vertex) and every triangle once.
inline BruteCounts brute_counts(const ncc::Graph& g) {
    const std::size_t n = g.num_nodes();
    std::vector<char> adj(n * n, 0);
    for (auto [u, v] : g.edge_list()) {
        adj[std::size_t(u) * n + v] = 1;
        adj[std::size_t(v) * n + u] = 1;
    }
    BruteCounts out;
    out.edges = g.num_edges();
    for (std::size_t mid = 0; mid < n; ++mid) {
        for (std::size_t a = 0; a < n; ++a) {
            if (a == mid || !adj[mid * n + a]) continue;
            for (std::size_t b = a + 1; b < n; ++b) {
                if (b == mid || !adj[mid * n + b]) continue;
                ++out.wedges;
            }
        }
    }
    // Triangles by smallest-vertex convention, so each is seen once.
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            if (!adj[a * n + b]) continue;
            for (std::size_t c = b + 1; c < n; ++c)
                if (adj[a * n + c] && adj[b * n + c]) ++out.triangles;
        }
    return out;
}

// Normalized clustering ratio recomputed from raw counts with fresh
// arithmetic (long double, binomials written out).
inline std::optional<long double> brute_rho(std::size_t n, const BruteCounts& c) {
    if (n < 3 || c.wedges == 0) return std::nullopt;
    const long double pairs = (long double)(n) * (n - 1) / 2.0L;
    const long double triples = pairs * (n - 2) / 3.0L;
    const long double e = c.edges / pairs;
    const long double v = c.wedges / (3.0L * triples);
    const long double t = c.triangles / triples;
    return t * (e / v) * (e / v) * (e / v);
}

inline double mean(const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
}

inline double sample_sd(const std::vector<double>& xs) {
    const double m = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return std::sqrt(acc / double(xs.size() - 1));
}

// One-sample Kolmogorov-Smirnov against N(0,1). Returns the p-value from
// the Stephens-corrected asymptotic series; good to a few percent for
// sample sizes in the hundreds.
inline double ks_pvalue_std_normal(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const double n = double(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double cdf = 0.5 * std::erfc(-xs[i] / std::sqrt(2.0));
        d = std::max(d, std::abs(cdf - double(i) / n));
        d = std::max(d, std::abs(double(i + 1) / n - cdf));
    }
    const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    double p = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * std::pow(-1.0, k - 1) *
                            std::exp(-2.0 * k * k * lambda * lambda);
        p += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(p, 0.0, 1.0);
}

// P(b > a) + P(b == a)/2 over all cross pairs, computed through midranks
// so ties are handled exactly (Mann-Whitney / ROC-AUC identity).
inline double auc_b_over_a(const std::vector<double>& a,
                           const std::vector<double>& b) {
    struct Obs { double x; bool is_b; };
    std::vector<Obs> all;
    all.reserve(a.size() + b.size());
    for (double x : a) all.push_back({x, false});
    for (double x : b) all.push_back({x, true});
    std::sort(all.begin(), all.end(),
              [](const Obs& l, const Obs& r) { return l.x < r.x; });
    double rank_sum_b = 0.0;
    std::size_t i = 0;
    while (i < all.size()) {
        std::size_t j = i;
        while (j < all.size() && all[j].x == all[i].x) ++j;
        const double midrank = 0.5 * double(i + 1 + j); // ranks are 1-based
        for (std::size_t k = i; k < j; ++k)
            if (all[k].is_b) rank_sum_b += midrank;
        i = j;
    }
    const double nb = double(b.size()), na = double(a.size());
    return (rank_sum_b - nb * (nb + 1) / 2.0) / (na * nb);
}

struct CliResult {
    int exit_code = -1;
    std::string out;
};

inline std::string read_whole_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs the CLI with stdout captured to a scratch file. `args` is appended
// verbatim after the binary path, so quoting is the caller's job.
inline CliResult run_cli(const std::string& args,
                         const std::string& stdin_file = "") {
    static int counter = 0;
    const std::string out_path =
        "/tmp/ncc_cli_out_" + std::to_string(++counter) + ".txt";
    std::string cmd = std::string(NCC_CLI_PATH) + " " + args;
    if (!stdin_file.empty()) cmd += " < " + stdin_file;
    cmd += " > " + out_path + " 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = (raw == -1) ? -1 : WEXITSTATUS(raw);
    r.out = read_whole_file(out_path);
    std::remove(out_path.c_str());
    return r;
}

inline void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    out << body;
}

} // namespace oracle
