#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "subgraph_stats.hpp"

namespace ncc {

inline constexpr double k_sqrt_2pi = 2.5066282746310002;

inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / k_sqrt_2pi;
}

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// Standard normal quantile: rational initial guess (Acklam) plus one Halley
// refinement against erfc, giving errors well below 1e-9 across (0, 1).
inline double inv_norm_cdf(double u) {
    if (!(u > 0.0) || !(u < 1.0))
        throw std::domain_error("inv_norm_cdf: argument must lie strictly between 0 and 1");
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    double x;
    if (u < p_low) {
        double q = std::sqrt(-2.0 * std::log(u));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (u <= 1.0 - p_low) {
        double q = u - 0.5;
        double t = q * q;
        x = (((((a[0] * t + a[1]) * t + a[2]) * t + a[3]) * t + a[4]) * t + a[5]) * q /
            (((((b[0] * t + b[1]) * t + b[2]) * t + b[3]) * t + b[4]) * t + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log1p(-u));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double e = normal_cdf(x) - u;
    double v = e * k_sqrt_2pi * std::exp(0.5 * x * x);
    return x - v / (1.0 + 0.5 * x * v);
}

struct RhoEstimate {
    node_t n = 0;
    std::uint64_t triangles = 0;
    double rho_hat = 0.0;
    double t_hat = 0.0;
    double std_err = 0.0;
    double alpha = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

// Plug-in confidence interval for rho at level 1 - alpha:
//   rho_hat * (1 -+ z_{1-alpha/2} / sqrt(C(n,3) t_hat)),
// with the lower end clipped at zero. C(n,3) t_hat equals the triangle
// count, so the width shrinks like one over root triangles.
inline RhoEstimate rho_confidence_interval(const Graph& g, double alpha = 0.05,
                                           unsigned workers = 1) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw OutOfRange("rho_confidence_interval: alpha must be in (0, 1)");
    GraphStats s = graph_stats(g, workers);
    if (!s.rho_hat) throw RhoUndefined("rho undefined: graph has no wedges");
    if (s.counts.triangles == 0)
        throw DegenerateStatistic("confidence interval needs a positive triangle count");
    RhoEstimate est;
    est.n = s.n;
    est.triangles = s.counts.triangles;
    est.rho_hat = *s.rho_hat;
    est.t_hat = s.t_hat;
    est.alpha = alpha;
    double z = inv_norm_cdf(1.0 - alpha / 2.0);
    double root = std::sqrt(static_cast<double>(est.triangles));
    est.std_err = est.rho_hat / root;
    est.lo = std::max(0.0, est.rho_hat * (1.0 - z / root));
    est.hi = est.rho_hat * (1.0 + z / root);
    return est;
}

// Rejection threshold for |rho_1 - rho_2| when both graphs stay within a
// k-block alternative with average degrees d1, d2:
//   z_{1-alpha/2} * k * sqrt(6) * sqrt(1/d1^3 + 1/d2^3).
inline double two_sample_threshold(double alpha, std::uint32_t k, double d1, double d2) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw OutOfRange("two_sample_threshold: alpha in (0, 1)");
    if (k < 1) throw OutOfRange("two_sample_threshold: k must be at least 1");
    if (!(d1 > 0.0) || !(d2 > 0.0))
        throw DegenerateStatistic("two_sample_threshold: average degrees must be positive");
    double z = inv_norm_cdf(1.0 - alpha / 2.0);
    return z * static_cast<double>(k) * std::sqrt(6.0) *
           std::sqrt(1.0 / (d1 * d1 * d1) + 1.0 / (d2 * d2 * d2));
}

struct TwoSampleResult {
    double rho1 = 0.0, rho2 = 0.0;
    double d1 = 0.0, d2 = 0.0;
    std::uint32_t k = 2;
    double alpha = 0.0;
    double statistic = 0.0;  // |rho1 - rho2|
    double threshold = 0.0;
    bool reject = false;
    std::optional<double> se1, se2;  // per-graph plug-in errors, when defined
};

// Tests whether two graphs share a population rho, against a k-block-bounded
// alternative. Conservative: the threshold uses the worst-case variance over
// the alternative, so size stays at or below alpha.
inline TwoSampleResult two_sample_test(const Graph& g1, const Graph& g2, std::uint32_t k,
                                       double alpha = 0.05, unsigned workers = 1) {
    GraphStats s1 = graph_stats(g1, workers);
    GraphStats s2 = graph_stats(g2, workers);
    if (!s1.rho_hat || !s2.rho_hat)
        throw RhoUndefined("two_sample_test: rho undefined for an input graph (no wedges)");
    TwoSampleResult res;
    res.rho1 = *s1.rho_hat;
    res.rho2 = *s2.rho_hat;
    res.d1 = 2.0 * static_cast<double>(s1.counts.edges) / static_cast<double>(s1.n);
    res.d2 = 2.0 * static_cast<double>(s2.counts.edges) / static_cast<double>(s2.n);
    res.k = k;
    res.alpha = alpha;
    res.threshold = two_sample_threshold(alpha, k, res.d1, res.d2);
    res.statistic = std::abs(res.rho1 - res.rho2);
    res.reject = res.statistic > res.threshold;
    if (s1.counts.triangles > 0)
        res.se1 = res.rho1 / std::sqrt(static_cast<double>(s1.counts.triangles));
    if (s2.counts.triangles > 0)
        res.se2 = res.rho2 / std::sqrt(static_cast<double>(s2.counts.triangles));
    return res;
}

struct PowerRow {
    double rho1 = 0.0, rho2 = 0.0;
    double statistic = 0.0;
    double threshold = 0.0;
    bool reject = false;
};

struct PowerResult {
    std::uint32_t reps = 0;
    std::uint32_t rejections = 0;
    double power = 0.0;
    std::vector<PowerRow> rows;
};

// Monte Carlo rejection rate of the two-sample test over independent draws
// from two model specs. Rep seeds are derived from the master seed by index,
// so results are identical for any worker count.
inline PowerResult power_experiment(const DcbmParams& spec1, const DcbmParams& spec2,
                                    std::uint32_t k, double alpha, std::uint32_t reps,
                                    std::uint64_t master_seed, unsigned workers = 1) {
    if (reps == 0) throw OutOfRange("power_experiment: reps must be positive");
    PowerResult out;
    out.reps = reps;
    out.rows.resize(reps);
    parallel_for_index(reps, workers, [&](std::size_t rep) {
        DcbmParams a = spec1;
        DcbmParams b = spec2;
        a.seed = derive_seed(master_seed, 2 * rep);
        b.seed = derive_seed(master_seed, 2 * rep + 1);
        DcbmSample ga = gen_dcbm(a);
        DcbmSample gb = gen_dcbm(b);
        TwoSampleResult r = two_sample_test(ga.graph, gb.graph, k, alpha, 1);
        out.rows[rep] = {r.rho1, r.rho2, r.statistic, r.threshold, r.reject};
    });
    for (const auto& row : out.rows)
        if (row.reject) ++out.rejections;
    out.power = static_cast<double>(out.rejections) / static_cast<double>(reps);
    return out;
}

}  // namespace ncc
