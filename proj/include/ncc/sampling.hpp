#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "subgraph_stats.hpp"

namespace ncc {

enum class SampleMethod {
    NodeSampling,
    EdgeSampling,
    RandomWalk,
    RandomWalkFlyback,
    RandomWalkJump,
    ForestFire,
    Snowball,
};

inline const char* to_string(SampleMethod m) {
    switch (m) {
        case SampleMethod::NodeSampling: return "ns";
        case SampleMethod::EdgeSampling: return "es";
        case SampleMethod::RandomWalk: return "rws";
        case SampleMethod::RandomWalkFlyback: return "rwfs";
        case SampleMethod::RandomWalkJump: return "rwjs";
        case SampleMethod::ForestFire: return "ff";
        case SampleMethod::Snowball: return "ss";
    }
    return "?";
}

inline SampleMethod parse_sample_method(const std::string& name) {
    if (name == "ns") return SampleMethod::NodeSampling;
    if (name == "es") return SampleMethod::EdgeSampling;
    if (name == "rws") return SampleMethod::RandomWalk;
    if (name == "rwfs") return SampleMethod::RandomWalkFlyback;
    if (name == "rwjs") return SampleMethod::RandomWalkJump;
    if (name == "ff") return SampleMethod::ForestFire;
    if (name == "ss") return SampleMethod::Snowball;
    throw OutOfRange("unknown sampling method '" + name + "'");
}

inline std::span<const SampleMethod> all_sample_methods() {
    static constexpr SampleMethod all[] = {
        SampleMethod::NodeSampling,   SampleMethod::EdgeSampling, SampleMethod::RandomWalk,
        SampleMethod::RandomWalkFlyback, SampleMethod::RandomWalkJump, SampleMethod::ForestFire,
        SampleMethod::Snowball,
    };
    return all;
}

struct SampleSpec {
    SampleMethod method = SampleMethod::NodeSampling;
    double fraction = 0.1;
    double flyback_p = 0.15;      // random walk with flyback
    double jump_p = 0.15;         // random walk with jump
    double forward_p = 0.7;       // forest fire geometric parameter
    std::uint64_t stall_limit = 0;  // walk steps without progress before restart; 0 = 100 * target
    std::uint64_t seed = 0;
};

namespace detail {

// Node set under construction plus the pool of not-yet-visited nodes, so a
// uniform fresh node is O(1) and the process always makes progress.
class SampleState {
public:
    explicit SampleState(node_t n) : visited_(n, 0), pool_(n), pos_(n) {
        for (node_t v = 0; v < n; ++v) {
            pool_[v] = v;
            pos_[v] = v;
        }
    }

    bool add(node_t v) {
        if (visited_[v]) return false;
        visited_[v] = 1;
        taken_.push_back(v);
        node_t last = pool_.back();
        node_t at = pos_[v];
        pool_[at] = last;
        pos_[last] = at;
        pool_.pop_back();
        return true;
    }

    bool seen(node_t v) const { return visited_[v] != 0; }
    std::size_t size() const { return taken_.size(); }

    node_t fresh_uniform(Rng& rng) const {
        return pool_[rng.uniform_below(pool_.size())];
    }

    const std::vector<node_t>& taken() const { return taken_; }

private:
    std::vector<char> visited_;
    std::vector<node_t> taken_;
    std::vector<node_t> pool_;  // unvisited nodes, order immaterial
    std::vector<node_t> pos_;   // position of each unvisited node in pool_
};

inline void sample_nodes_uniform(std::size_t s, Rng& rng, SampleState& st) {
    for (std::size_t i = 0; i < s; ++i) st.add(st.fresh_uniform(rng));
}

inline void sample_edges_uniform(const Graph& g, std::size_t s, Rng& rng, SampleState& st) {
    std::vector<edge_pair> pool = g.edge_list();
    for (std::size_t i = 0; i < pool.size(); ++i) {
        std::size_t j = i + rng.uniform_below(pool.size() - i);
        std::swap(pool[i], pool[j]);
        auto [u, v] = pool[i];
        std::size_t gain = (st.seen(u) ? 0 : 1) + (st.seen(v) ? 0 : 1);
        if (st.size() + gain > s) break;  // stop without adding
        st.add(u);
        st.add(v);
    }
}

// Shared walk skeleton. Per step, in order: optional flyback (return to the
// walk's start), optional jump (teleport to a uniform node, visited or not),
// otherwise a uniform neighbor step. A walk that sits at a degree-zero node
// or makes no progress for stall_limit steps restarts at a fresh node.
inline void sample_walk(const Graph& g, std::size_t s, Rng& rng, SampleState& st, double flyback_p,
                        double jump_p, std::uint64_t stall_limit) {
    node_t cur = st.fresh_uniform(rng);
    st.add(cur);
    node_t start = cur;
    std::uint64_t stalled = 0;
    while (st.size() < s) {
        bool progressed = false;
        if (flyback_p > 0.0 && rng.uniform01() < flyback_p) {
            cur = start;
        } else if (jump_p > 0.0 && rng.uniform01() < jump_p) {
            cur = static_cast<node_t>(rng.uniform_below(g.num_nodes()));
            progressed = st.add(cur);
        } else if (g.degree(cur) == 0) {
            cur = st.fresh_uniform(rng);
            st.add(cur);
            start = cur;
            stalled = 0;
            continue;
        } else {
            auto nb = g.neighbors(cur);
            cur = nb[rng.uniform_below(nb.size())];
            progressed = st.add(cur);
        }
        if (progressed) {
            stalled = 0;
        } else if (++stalled >= stall_limit) {
            cur = st.fresh_uniform(rng);
            st.add(cur);
            start = cur;
            stalled = 0;
        }
    }
}

inline void sample_forest_fire(const Graph& g, std::size_t s, Rng& rng, SampleState& st,
                               double forward_p) {
    std::deque<node_t> frontier;
    auto ignite = [&](node_t v) {
        st.add(v);
        frontier.push_back(v);
    };
    ignite(st.fresh_uniform(rng));
    std::vector<node_t> cand;
    while (st.size() < s) {
        if (frontier.empty()) {
            ignite(st.fresh_uniform(rng));
            continue;
        }
        node_t w = frontier.front();
        frontier.pop_front();
        std::uint64_t burn = rng.geometric_failures(forward_p);
        if (burn == 0) continue;
        cand.clear();
        for (node_t v : g.neighbors(w))
            if (!st.seen(v)) cand.push_back(v);
        if (burn > cand.size()) burn = cand.size();
        for (std::uint64_t i = 0; i < burn && st.size() < s; ++i) {
            std::size_t j = i + rng.uniform_below(cand.size() - i);
            std::swap(cand[i], cand[j]);
            st.add(cand[i]);
            frontier.push_back(cand[i]);
        }
    }
}

inline void sample_snowball(const Graph& g, std::size_t s, Rng& rng, SampleState& st) {
    std::vector<char> in_next(g.num_nodes(), 0);
    std::vector<node_t> wave{st.fresh_uniform(rng)};
    st.add(wave[0]);
    std::vector<node_t> next;
    while (st.size() < s) {
        next.clear();
        for (node_t u : wave)
            for (node_t v : g.neighbors(u))
                if (!st.seen(v) && !in_next[v]) {
                    in_next[v] = 1;
                    next.push_back(v);
                }
        for (node_t v : next) in_next[v] = 0;
        if (next.empty()) {
            wave.assign(1, st.fresh_uniform(rng));
            st.add(wave[0]);
            continue;
        }
        std::size_t room = s - st.size();
        if (next.size() > room) {
            // truncate the final wave to a uniform subset
            for (std::size_t i = 0; i < room; ++i) {
                std::size_t j = i + rng.uniform_below(next.size() - i);
                std::swap(next[i], next[j]);
                st.add(next[i]);
            }
            break;
        }
        for (node_t v : next) st.add(v);
        wave = next;
    }
}

}  // namespace detail

// Draws a node subset by the requested method and returns the induced
// subgraph with its id mapping. Target size is round(fraction * n); every
// method hits it exactly except edge sampling, which stops one short when
// the next edge would overshoot.
inline InducedSubgraph sample_subgraph(const Graph& g, const SampleSpec& spec) {
    if (g.num_nodes() == 0) throw DegenerateGraph("sample_subgraph: empty graph");
    if (!(spec.fraction > 0.0) || spec.fraction > 1.0)
        throw OutOfRange("sample_subgraph: fraction must be in (0, 1]");
    auto s = static_cast<std::size_t>(std::llround(spec.fraction * g.num_nodes()));
    if (s < 1) throw OutOfRange("sample_subgraph: fraction * n rounds to zero nodes");
    if (s > g.num_nodes()) s = g.num_nodes();
    Rng rng(spec.seed);
    detail::SampleState st(g.num_nodes());
    std::uint64_t stall = spec.stall_limit ? spec.stall_limit : 100 * static_cast<std::uint64_t>(s);
    switch (spec.method) {
        case SampleMethod::NodeSampling:
            detail::sample_nodes_uniform(s, rng, st);
            break;
        case SampleMethod::EdgeSampling:
            detail::sample_edges_uniform(g, s, rng, st);
            break;
        case SampleMethod::RandomWalk:
            detail::sample_walk(g, s, rng, st, 0.0, 0.0, stall);
            break;
        case SampleMethod::RandomWalkFlyback:
            detail::sample_walk(g, s, rng, st, spec.flyback_p, 0.0, stall);
            break;
        case SampleMethod::RandomWalkJump:
            detail::sample_walk(g, s, rng, st, 0.0, spec.jump_p, stall);
            break;
        case SampleMethod::ForestFire:
            detail::sample_forest_fire(g, s, rng, st, spec.forward_p);
            break;
        case SampleMethod::Snowball:
            detail::sample_snowball(g, s, rng, st);
            break;
    }
    return induced_subgraph(g, st.taken());
}

struct MethodAccuracy {
    SampleMethod method = SampleMethod::NodeSampling;
    double fraction = 0.0;
    std::uint32_t reps = 0;
    std::uint32_t defined = 0;    // reps with a defined subsample rho
    std::uint32_t undefined = 0;
    std::optional<double> mean;   // over defined reps
    std::optional<double> sd;     // sample standard deviation, needs >= 2
    std::optional<double> bias;   // |mean - rho of the full graph|
    std::vector<std::optional<double>> rho;  // per rep
};

struct SamplerStudy {
    std::optional<double> rho_full;
    std::vector<MethodAccuracy> methods;
};

// Repeated subsampling accuracy study. Rep r of spec i runs with seed
// derive_seed(spec[i].seed, r) into its own slot, so worker count cannot
// change any number.
inline SamplerStudy evaluate_samplers(const Graph& g, std::span<const SampleSpec> specs,
                                      std::uint32_t reps, unsigned workers = 1) {
    if (reps == 0) throw OutOfRange("evaluate_samplers: reps must be positive");
    SamplerStudy study;
    if (g.num_nodes() >= 3) study.rho_full = graph_stats(g).rho_hat;
    study.methods.resize(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        study.methods[i].method = specs[i].method;
        study.methods[i].fraction = specs[i].fraction;
        study.methods[i].reps = reps;
        study.methods[i].rho.resize(reps);
    }
    parallel_for_index(specs.size() * reps, workers, [&](std::size_t idx) {
        std::size_t si = idx / reps;
        std::uint32_t rep = static_cast<std::uint32_t>(idx % reps);
        SampleSpec spec = specs[si];
        spec.seed = derive_seed(specs[si].seed, rep);
        InducedSubgraph sub = sample_subgraph(g, spec);
        std::optional<double> rho;
        if (sub.graph.num_nodes() >= 3) rho = graph_stats(sub.graph).rho_hat;
        study.methods[si].rho[rep] = rho;
    });
    for (auto& m : study.methods) {
        double sum = 0.0;
        for (const auto& r : m.rho) {
            if (r) {
                ++m.defined;
                sum += *r;
            } else {
                ++m.undefined;
            }
        }
        if (m.defined > 0) {
            m.mean = sum / m.defined;
            if (study.rho_full) m.bias = std::abs(*m.mean - *study.rho_full);
        }
        if (m.defined >= 2) {
            double ss = 0.0;
            for (const auto& r : m.rho)
                if (r) ss += (*r - *m.mean) * (*r - *m.mean);
            m.sd = std::sqrt(ss / (m.defined - 1));
        }
    }
    return study;
}

}  // namespace ncc
