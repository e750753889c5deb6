#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "errors.hpp"

namespace ncc {

// Population value of rho for a balanced K-block model with within/between
// edge probability ratio r = p/q:
//   rho(r, K) = (K r^3 + 3K(K-1) r + K(K-1)(K-2)) / (r + K - 1)^3.
// Nondecreasing in r, equal to 1 at r = 1, approaching K as r grows.
inline double rho_of_r(double r, std::uint32_t k) {
    if (k < 2) throw OutOfRange("rho_of_r: k must be at least 2");
    if (!(r >= 1.0)) throw OutOfRange("rho_of_r: r must be at least 1");
    double kk = static_cast<double>(k);
    double num = kk * r * r * r + 3.0 * kk * (kk - 1.0) * r + kk * (kk - 1.0) * (kk - 2.0);
    double den = (r + kk - 1.0);
    return num / (den * den * den);
}

// Inverse of rho_of_r in r, by bisection. rho must lie strictly inside
// (1, K): at rho <= 1 the inverse collapses to the boundary r = 1, and
// rho >= K is unreachable (r would diverge).
inline double r_of_rho(double rho, std::uint32_t k) {
    if (k < 2) throw OutOfRange("r_of_rho: k must be at least 2");
    double kk = static_cast<double>(k);
    if (!(rho > 1.0))
        throw OutOfRange("r_of_rho: rho = " + std::to_string(rho) +
                         " is at or below the boundary value 1 (attained at r = 1)");
    if (!(rho < kk))
        throw OutOfRange("r_of_rho: rho = " + std::to_string(rho) + " is at or above k = " +
                         std::to_string(k) + "; rho(r, k) approaches k only as r diverges");
    double lo = 1.0, hi = 2.0;
    while (rho_of_r(hi, k) < rho) {
        lo = hi;
        hi *= 2.0;
    }
    while (hi - lo > 1e-13 * std::max(1.0, lo)) {
        double mid = 0.5 * (lo + hi);
        if (rho_of_r(mid, k) < rho)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Limiting rho of the m-attachment preferential-attachment process:
//   3 m (m-1) / (4 (m+1)^2).
// Zero at m = 1, increasing toward the supremum 3/4.
inline double lcd_rho_asymptote(std::uint64_t m) {
    if (m < 1) throw OutOfRange("lcd_rho_asymptote: m must be at least 1");
    double md = static_cast<double>(m);
    return 3.0 * md * (md - 1.0) / (4.0 * (md + 1.0) * (md + 1.0));
}

// Attachment count whose limiting rho is nearest to the given value; ties go
// to the smaller m. Defined for rho in [0, 3/4).
inline std::uint64_t lcd_m_of_rho(double rho) {
    if (!(rho >= 0.0) || !(rho < 0.75))
        throw OutOfRange("lcd_m_of_rho: rho = " + std::to_string(rho) +
                         " outside [0, 0.75); 3/4 is the supremum over all m");
    // Smallest real m with 3m(m-1) = 4 rho (m+1)^2, then scan its integer
    // neighborhood for the closest value.
    double a = 3.0 - 4.0 * rho;
    double b = 3.0 + 8.0 * rho;
    double c = 4.0 * rho;
    double m_real = (b + std::sqrt(b * b + 4.0 * a * c)) / (2.0 * a);
    auto lo_guess = m_real < 3.0 ? 1 : static_cast<std::int64_t>(m_real) - 2;
    std::uint64_t best = 1;
    double best_err = std::abs(lcd_rho_asymptote(1) - rho);
    for (std::int64_t m = std::max<std::int64_t>(1, lo_guess); m <= lo_guess + 5; ++m) {
        double err = std::abs(lcd_rho_asymptote(static_cast<std::uint64_t>(m)) - rho);
        if (err < best_err) {
            best_err = err;
            best = static_cast<std::uint64_t>(m);
        }
    }
    return best;
}

enum class ModelClass {
    Undefined,                 // rho itself undefined (no wedges)
    PreferentialAttachment,    // rho < 3/4
    ErCompatible,              // |rho - 1| <= half-width
    Community,                 // rho > 1 + half-width
    Ambiguous,                 // the gap between the bands
};

inline const char* to_string(ModelClass c) {
    switch (c) {
        case ModelClass::Undefined: return "undefined";
        case ModelClass::PreferentialAttachment: return "preferential-attachment";
        case ModelClass::ErCompatible: return "er-compatible";
        case ModelClass::Community: return "community";
        case ModelClass::Ambiguous: return "ambiguous";
    }
    return "?";
}

// Coarse model screen from a single rho value. er_halfwidth sets the band
// around 1 that still counts as independent-edge behavior; it must stay
// below 0.25 so the bands cannot overlap.
inline ModelClass classify_rho(std::optional<double> rho, double er_halfwidth = 0.1) {
    if (!(er_halfwidth >= 0.0) || er_halfwidth >= 0.25)
        throw OutOfRange("classify_rho: er_halfwidth must be in [0, 0.25)");
    if (!rho) return ModelClass::Undefined;
    if (*rho < 0.0) throw OutOfRange("classify_rho: rho must be nonnegative");
    if (*rho < 0.75) return ModelClass::PreferentialAttachment;
    if (std::abs(*rho - 1.0) <= er_halfwidth) return ModelClass::ErCompatible;
    if (*rho > 1.0 + er_halfwidth) return ModelClass::Community;
    return ModelClass::Ambiguous;
}

// Limiting subgraph densities of a degree-corrected balanced K-block model
// with within-block probability p, between-block probability q, mean weight
// mu = E[theta] and second moment s = E[theta^2].
struct DcbmClosedForm {
    double p, q;
    std::uint32_t k;
    double mu, s;
    double e;         // edge density
    double v;         // wedge density
    double t;         // triangle density
    double r;         // p / q
    double rho;       // t e^3 / v^3; free of theta moments
    double cc_hat;    // t / v
    double cc_ratio;  // 3 t / v
};

inline DcbmClosedForm dcbm_population(double p, double q, std::uint32_t k, double mean_theta = 1.0,
                                      double second_moment_theta = 1.0) {
    if (k < 2) throw OutOfRange("dcbm_population: k must be at least 2");
    if (!(q > 0.0) || !(q <= p) || !(p <= 1.0))
        throw OutOfRange("dcbm_population: need 0 < q <= p <= 1");
    if (!(mean_theta > 0.0) || !(second_moment_theta > 0.0))
        throw OutOfRange("dcbm_population: theta moments must be positive");
    DcbmClosedForm f{};
    f.p = p;
    f.q = q;
    f.k = k;
    f.mu = mean_theta;
    f.s = second_moment_theta;
    double kk = static_cast<double>(k);
    double bbar = (p + (kk - 1.0) * q) / kk;
    double g = p * p * p + 3.0 * (kk - 1.0) * p * q * q + (kk - 1.0) * (kk - 2.0) * q * q * q;
    f.e = f.mu * f.mu * bbar;
    f.v = f.mu * f.mu * f.s * bbar * bbar;
    f.t = f.s * f.s * f.s * g / (kk * kk);
    f.r = p / q;
    double ratio = f.e / f.v;
    f.rho = f.t * ratio * ratio * ratio;
    f.cc_hat = f.t / f.v;
    f.cc_ratio = 3.0 * f.cc_hat;
    return f;
}

}  // namespace ncc
