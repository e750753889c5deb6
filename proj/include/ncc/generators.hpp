#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "rng.hpp"

namespace ncc {

// Distribution of node weights theta. With normalize_second_moment set, the
// law is rescaled so that E[theta^2] = 1, which pins the wedge density of a
// degree-corrected model to its block part.
struct ThetaLaw {
    enum class Kind { Constant, Discrete, PowerLaw };

    Kind kind = Kind::Constant;
    std::vector<double> values;  // Discrete
    std::vector<double> probs;   // Discrete
    double alpha = 4.2;          // PowerLaw: density ~ x^(-alpha) on [lower, inf)
    double lower = 1.0;
    bool normalize_second_moment = false;

    static ThetaLaw constant() { return {}; }

    static ThetaLaw discrete(std::vector<double> values, std::vector<double> probs,
                             bool normalize = false) {
        ThetaLaw law;
        law.kind = Kind::Discrete;
        law.values = std::move(values);
        law.probs = std::move(probs);
        law.normalize_second_moment = normalize;
        law.validate();
        return law;
    }

    static ThetaLaw power_law(double alpha, double lower = 1.0, bool normalize = false) {
        ThetaLaw law;
        law.kind = Kind::PowerLaw;
        law.alpha = alpha;
        law.lower = lower;
        law.normalize_second_moment = normalize;
        law.validate();
        return law;
    }

    void validate() const {
        switch (kind) {
            case Kind::Constant:
                return;
            case Kind::Discrete: {
                if (values.empty() || values.size() != probs.size())
                    throw OutOfRange("theta law: values and probs must be nonempty and aligned");
                double total = 0.0;
                for (std::size_t i = 0; i < values.size(); ++i) {
                    if (!(values[i] > 0.0)) throw OutOfRange("theta law: values must be positive");
                    if (!(probs[i] >= 0.0)) throw OutOfRange("theta law: probs must be nonnegative");
                    total += probs[i];
                }
                if (std::abs(total - 1.0) > 1e-9)
                    throw OutOfRange("theta law: probs sum to " + std::to_string(total));
                return;
            }
            case Kind::PowerLaw:
                if (!(alpha > 3.0))
                    throw OutOfRange("theta law: power-law exponent must exceed 3 for a finite "
                                     "second moment");
                if (!(lower > 0.0)) throw OutOfRange("theta law: power-law lower bound must be positive");
                return;
        }
    }

    double raw_mean() const {
        switch (kind) {
            case Kind::Constant:
                return 1.0;
            case Kind::Discrete:
                return std::inner_product(values.begin(), values.end(), probs.begin(), 0.0);
            case Kind::PowerLaw:
                return lower * (alpha - 1.0) / (alpha - 2.0);
        }
        return 1.0;
    }

    double raw_second_moment() const {
        switch (kind) {
            case Kind::Constant:
                return 1.0;
            case Kind::Discrete: {
                double s = 0.0;
                for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * values[i] * probs[i];
                return s;
            }
            case Kind::PowerLaw:
                return lower * lower * (alpha - 1.0) / (alpha - 3.0);
        }
        return 1.0;
    }

    double scale() const {
        return normalize_second_moment ? 1.0 / std::sqrt(raw_second_moment()) : 1.0;
    }

    double mean() const { return scale() * raw_mean(); }
    double second_moment() const { return scale() * scale() * raw_second_moment(); }

    double sample(Rng& rng) const {
        switch (kind) {
            case Kind::Constant:
                return 1.0;
            case Kind::Discrete: {
                double u = rng.uniform01();
                double acc = 0.0;
                for (std::size_t i = 0; i + 1 < values.size(); ++i) {
                    acc += probs[i];
                    if (u < acc) return scale() * values[i];
                }
                return scale() * values.back();
            }
            case Kind::PowerLaw: {
                double u = rng.uniform01();
                return scale() * lower * std::pow(1.0 - u, -1.0 / (alpha - 1.0));
            }
        }
        return 1.0;
    }
};

struct ErParams {
    node_t n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
};

namespace detail {

// Lexicographic rank -> pair (i, j), i < j, over all C(n,2) pairs.
inline edge_pair pair_from_index(node_t n, std::uint64_t idx) {
    double nn = static_cast<double>(n);
    double guess = nn - 0.5 - std::sqrt((nn - 0.5) * (nn - 0.5) - 2.0 * static_cast<double>(idx));
    auto i = static_cast<std::uint64_t>(std::max(0.0, guess));
    auto offset = [n](std::uint64_t row) { return row * (n - 1) - row * (row - 1) / 2; };
    while (offset(i + 1) <= idx) ++i;
    while (offset(i) > idx) --i;
    auto j = i + 1 + (idx - offset(i));
    return {static_cast<node_t>(i), static_cast<node_t>(j)};
}

}  // namespace detail

// Independent-edge graph via geometric gap skipping: one log per edge rather
// than one draw per pair, exact for any p.
inline Graph gen_er(const ErParams& par) {
    if (par.n < 1) throw OutOfRange("gen_er: n must be at least 1");
    if (!(par.p >= 0.0) || !(par.p <= 1.0)) throw OutOfRange("gen_er: p must be in [0, 1]");
    std::uint64_t total = std::uint64_t{par.n} * (par.n - 1) / 2;
    std::vector<edge_pair> edges;
    if (par.p >= 1.0) {
        edges.reserve(total);
        for (node_t i = 0; i < par.n; ++i)
            for (node_t j = i + 1; j < par.n; ++j) edges.emplace_back(i, j);
    } else if (par.p > 0.0) {
        Rng rng(par.seed);
        double log1mp = std::log1p(-par.p);
        edges.reserve(static_cast<std::size_t>(static_cast<double>(total) * par.p * 1.1) + 16);
        std::uint64_t idx = 0;
        while (idx < total) {
            double u = rng.uniform01();
            double skip = std::floor(std::log1p(-u) / log1mp);
            if (skip >= static_cast<double>(total - idx)) break;
            idx += static_cast<std::uint64_t>(skip);
            if (idx >= total) break;
            edges.push_back(detail::pair_from_index(par.n, idx));
            ++idx;
        }
    }
    return Graph::from_clean_edges(par.n, edges);
}

struct DcbmParams {
    node_t n = 0;
    std::uint32_t k = 2;
    std::vector<double> pi;  // block probabilities; empty means uniform
    double p = 0.0;          // within-block edge probability
    double q = 0.0;          // between-block edge probability
    ThetaLaw theta;
    std::uint64_t seed = 0;

    void validate() const {
        if (n < 1) throw OutOfRange("dcbm: n must be at least 1");
        if (k < 2) throw OutOfRange("dcbm: k must be at least 2");
        if (!(q > 0.0) || !(q <= p) || !(p <= 1.0)) throw OutOfRange("dcbm: need 0 < q <= p <= 1");
        if (!pi.empty()) {
            if (pi.size() != k) throw OutOfRange("dcbm: pi must have k entries");
            double total = 0.0;
            for (double x : pi) {
                if (!(x >= 0.0)) throw OutOfRange("dcbm: pi entries must be nonnegative");
                total += x;
            }
            if (std::abs(total - 1.0) > 1e-9)
                throw OutOfRange("dcbm: pi sums to " + std::to_string(total));
        }
        theta.validate();
    }
};

struct DcbmSample {
    Graph graph;
    NodeLabeling labels;
    std::vector<double> theta;
    std::uint64_t clamped_pairs = 0;  // pairs whose theta_i theta_j B exceeded 1
};

// Degree-corrected block model draw. Labels, then weights, then the C(n,2)
// pair sweep, all from one stream in a fixed order, so a seed pins the graph.
inline DcbmSample gen_dcbm(const DcbmParams& par) {
    par.validate();
    Rng rng(par.seed);
    DcbmSample out;
    out.labels.k = par.k;
    out.labels.labels.resize(par.n);
    for (node_t v = 0; v < par.n; ++v) {
        double u = rng.uniform01();
        if (par.pi.empty()) {
            auto z = static_cast<std::uint32_t>(u * par.k);
            out.labels.labels[v] = z >= par.k ? par.k - 1 : z;
        } else {
            double acc = 0.0;
            std::uint32_t z = par.k - 1;
            for (std::uint32_t g = 0; g + 1 < par.k; ++g) {
                acc += par.pi[g];
                if (u < acc) {
                    z = g;
                    break;
                }
            }
            out.labels.labels[v] = z;
        }
    }
    out.theta.resize(par.n);
    for (node_t v = 0; v < par.n; ++v) out.theta[v] = par.theta.sample(rng);
    std::vector<edge_pair> edges;
    edges.reserve(par.n * 8);
    for (node_t i = 0; i < par.n; ++i) {
        for (node_t j = i + 1; j < par.n; ++j) {
            double block = out.labels.labels[i] == out.labels.labels[j] ? par.p : par.q;
            double prob = out.theta[i] * out.theta[j] * block;
            if (prob > 1.0) {
                prob = 1.0;
                ++out.clamped_pairs;
            }
            if (rng.bernoulli(prob)) edges.emplace_back(i, j);
        }
    }
    out.graph = Graph::from_clean_edges(par.n, edges);
    return out;
}

// Solves for (p, q) so that a balanced model with ratio r = p/q and the given
// theta law has expected average degree lambda:
//   p = lambda K r / ((n-1) E[theta]^2 (r + K - 1)).
inline DcbmParams dcbm_from_degree(node_t n, std::uint32_t k, double r, double lambda,
                                   ThetaLaw theta = {}, std::uint64_t seed = 0) {
    if (n < 2) throw OutOfRange("dcbm_from_degree: n must be at least 2");
    if (k < 2) throw OutOfRange("dcbm_from_degree: k must be at least 2");
    if (!(r >= 1.0)) throw OutOfRange("dcbm_from_degree: r must be at least 1");
    if (!(lambda > 0.0)) throw OutOfRange("dcbm_from_degree: lambda must be positive");
    theta.validate();
    double mu = theta.mean();
    double kk = static_cast<double>(k);
    double p = lambda * kk * r / ((n - 1.0) * mu * mu * (r + kk - 1.0));
    if (p > 1.0)
        throw InfeasibleParams("dcbm_from_degree: required within-block probability " +
                               std::to_string(p) + " exceeds 1");
    DcbmParams par;
    par.n = n;
    par.k = k;
    par.p = p;
    par.q = p / r;
    par.theta = std::move(theta);
    par.seed = seed;
    par.validate();
    return par;
}

struct LcdParams {
    node_t n = 0;          // final vertex count
    std::uint32_t m = 1;   // edges attached per vertex
    std::uint64_t seed = 0;
};

struct LcdSample {
    MultiGraphDraft draft;  // exactly m * n edges, loops and parallels kept
    Graph graph;            // simplified
};

// Preferential-attachment draw: run the single-edge process for m*n steps,
// where each new endpoint is chosen proportionally to current degree with the
// in-progress vertex's own stub included, then merge consecutive groups of m
// vertices. Realized with a stub array, one uniform draw per edge.
inline LcdSample gen_lcd(const LcdParams& par) {
    if (par.n < 1) throw OutOfRange("gen_lcd: n must be at least 1");
    if (par.m < 1) throw OutOfRange("gen_lcd: m must be at least 1");
    Rng rng(par.seed);
    LcdSample out;
    out.draft.n = par.n;
    std::uint64_t total = std::uint64_t{par.n} * par.m;
    out.draft.edges.reserve(total);
    std::vector<node_t> stubs;
    stubs.reserve(2 * total);
    for (std::uint64_t t = 0; t < total; ++t) {
        std::uint64_t x = rng.uniform_below(2 * t + 1);
        node_t target = x < stubs.size() ? stubs[x] : static_cast<node_t>(t);
        stubs.push_back(static_cast<node_t>(t));
        stubs.push_back(target);
        out.draft.edges.emplace_back(static_cast<node_t>(t / par.m),
                                     static_cast<node_t>(target / par.m));
    }
    out.graph = simplify(out.draft);
    return out;
}

}  // namespace ncc
