#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "bergman/types.hpp"

namespace bergman {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes by Newton iteration on P_n (Chebyshev initial guesses); cached per
/// order.  Deterministic: fixed iteration count bound and tolerance.
inline const GaussLegendreRule& gauss_legendre(int order) {
    static std::map<int, GaussLegendreRule> cache;
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // recompute P'_n at the converged node for the weight
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= order; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        rule.nodes[static_cast<std::size_t>(order - 1 - i)] = -x;  // ascending
        rule.weights[static_cast<std::size_t>(order - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    auto [pos, inserted] = cache.emplace(order, std::move(rule));
    (void)inserted;
    return pos->second;
}

template <typename F>
double integrate_panel(F&& f, double lo, double hi, const GaussLegendreRule& rule) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        acc += rule.weights[k] * f(mid + half * rule.nodes[k]);
    return acc * half;
}

/// Geometric panel edges t0, t0*r, t0*r^2, ... covering (t0, upper].
inline std::vector<double> geometric_edges(double t0, double ratio, double upper) {
    std::vector<double> edges{t0};
    double e = t0;
    while (e < upper) {
        e *= ratio;
        edges.push_back(std::min(e, upper));
        if (edges.size() > 4096) break;  // hard stop; callers bound their domains
    }
    return edges;
}

template <typename F>
double integrate_edges(F&& f, const std::vector<double>& edges, const GaussLegendreRule& rule) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k)
        acc += integrate_panel(f, edges[k], edges[k + 1], rule);
    return acc;
}

/// Half-line integral on geometrically graded panels [t0 r^k, t0 r^(k+1)],
/// truncated once the caller's analytic tail bound (log of the remaining
/// mass past the current edge) drops below 1e-16 relative to the running
/// total.
template <typename F, typename TailLogBound>
double integrate_half_line(F&& f, TailLogBound&& tail_log_bound, double t0 = 1e-8,
                           double ratio = 2.0, int order = 24, int max_panels = 400) {
    const GaussLegendreRule& rule = gauss_legendre(order);
    double acc = integrate_panel(f, 0.0, t0, rule);  // sliver below the first edge
    double lo = t0;
    for (int k = 0; k < max_panels; ++k) {
        double hi = lo * ratio;
        acc += integrate_panel(f, lo, hi, rule);
        lo = hi;
        double scale = std::max(std::abs(acc), 1e-300);
        if (tail_log_bound(lo) < std::log(1e-16 * scale)) break;
    }
    return acc;
}

}  // namespace bergman
