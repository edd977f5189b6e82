#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bergman/dynamics.hpp"
#include "bergman/kernelspace.hpp"
#include "bergman/numutil.hpp"
#include "bergman/symbols.hpp"
#include "bergman/types.hpp"

namespace bergman {

inline constexpr long kHorizonCap = 10000;
inline const double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Random kernel combination with well-separated points (keeps the Gram
/// matrices away from numerical rank deficiency).
inline KernelVector random_kernel_vector(Rng& rng, const Weight& weight, int max_terms = 4) {
    int k = 1 + static_cast<int>(rng.raw() % static_cast<std::uint64_t>(max_terms));
    std::vector<Complex> pts;
    std::vector<Complex> cfs;
    while (static_cast<int>(pts.size()) < k) {
        Complex w = rng.complex_in(0.2, 2.5, -2.5, 2.5);
        bool ok = true;
        for (const Complex& q : pts)
            if (std::abs(w - q) < 0.05) ok = false;
        if (!ok) continue;
        pts.push_back(w);
        cfs.push_back(rng.complex_in(-1.0, 1.0, -1.0, 1.0));
    }
    return KernelVector(weight, std::move(pts), std::move(cfs));
}

/// Fixed vectors exercised by the witness suites: k_1, k_2, k_{1+i} and a
/// seeded 3-term combination.
inline std::vector<KernelVector> default_test_panel(const Weight& weight,
                                                    std::uint64_t seed = 20240613ULL) {
    std::vector<KernelVector> panel;
    panel.push_back(KernelVector::single(weight, Complex(1.0, 0.0)));
    panel.push_back(KernelVector::single(weight, Complex(2.0, 0.0)));
    panel.push_back(KernelVector::single(weight, Complex(1.0, 1.0)));
    Rng rng(seed);
    panel.push_back(KernelVector(weight,
                                 {rng.complex_in(0.3, 2.0, -1.5, 1.5),
                                  rng.complex_in(0.3, 2.0, -1.5, 1.5) + Complex(0.7, 0.0),
                                  rng.complex_in(0.3, 2.0, -1.5, 1.5) + Complex(1.4, 0.0)},
                                 {rng.complex_in(-1.0, 1.0, -1.0, 1.0),
                                  rng.complex_in(-1.0, 1.0, -1.0, 1.0),
                                  rng.complex_in(-1.0, 1.0, -1.0, 1.0)}));
    return panel;
}

namespace detail {

/// Kernel vector with an explicit log-domain scalar; successive orbit steps
/// renormalize coefficients into the scalar so the representation survives
/// norms far outside double range.
struct ScaledVector {
    double log_scale = 0.0;
    KernelVector vec;
};

inline ScaledVector normalized(double log_scale, const KernelVector& v) {
    double m = 0.0;
    for (const Complex& c : v.coeffs()) m = std::max(m, std::abs(c));
    if (m == 0.0 || v.empty()) return {log_scale, v};
    std::vector<Complex> cfs = v.coeffs();
    for (Complex& c : cfs) c /= m;
    return {log_scale + std::log(m), KernelVector(v.weight(), v.points(), std::move(cfs))};
}

}  // namespace detail

struct OrbitRow {
    long n = 0;
    double log_norm = 0.0;        // closed route via the iterate symbol
    double norm = 0.0;            // exp(log_norm); may over/underflow to inf/0
    double log_norm_successive = 0.0;
    bool successive_valid = false;
    bool ill_conditioned = false;
    double route_rel_gap = 0.0;   // |exp(l1 - l2) - 1| where both routes exist
};

struct OrbitResult {
    std::vector<OrbitRow> rows;
    double max_route_rel_gap = 0.0;
    bool any_ill_conditioned = false;
    long successive_horizon = 0;  // last n the successive route could represent
};

/// Orbit norms ||C_phi^n f||, n = 0..N, computed along two independent
/// routes: the closed form through the n-th iterate symbol (log-domain,
/// valid for every n) and n successive operator applications (valid while
/// the moving kernel points stay representable inside C_+).
inline OrbitResult orbit_norms(const AffineSymbol& phi, const KernelVector& f, long horizon) {
    if (horizon < 0 || horizon > kHorizonCap)
        throw DomainError("orbit_norms: horizon must lie in [0, 10^4]");
    if (f.empty()) throw DomainError("orbit_norms: f must be nonzero");

    OrbitResult result;
    detail::ScaledVector running = detail::normalized(0.0, f);
    bool running_ok = true;

    for (long n = 0; n <= horizon; ++n) {
        OrbitRow row;
        row.n = n;
        row.log_norm = log_orbit_norm(phi, f, n);
        row.norm = std::exp(row.log_norm);

        if (running_ok) {
            NormInfo info = norm_info(running.vec);
            row.log_norm_successive = running.log_scale + std::log(info.value);
            row.successive_valid = true;
            row.ill_conditioned = info.ill_conditioned;
            result.any_ill_conditioned |= info.ill_conditioned;
            row.route_rel_gap = std::abs(std::expm1(row.log_norm - row.log_norm_successive));
            result.max_route_rel_gap = std::max(result.max_route_rel_gap, row.route_rel_gap);
            result.successive_horizon = n;
        } else {
            row.log_norm_successive = kNaN;
            row.route_rel_gap = kNaN;
        }
        result.rows.push_back(row);

        if (running_ok && n < horizon) {
            try {
                running = detail::normalized(running.log_scale,
                                             apply_composition(phi, running.vec));
            } catch (const DomainError&) {
                running_ok = false;  // points hit the representability wall
            }
        }
    }
    return result;
}

struct NormEstimatesReport {
    int samples = 0;
    bool equality_case = false;  // Re(b) = 0: norms scale exactly
    double max_violation = 0.0;  // |ratio-1| (equality) or max(ratio-1, 0)
};

/// Monte-Carlo check of the norm identity / inequality
/// ||C_phi f|| (=|<=) a^-((alpha+2)/2) ||f|| on random kernel combinations.
inline NormEstimatesReport verify_norm_estimates(const AffineSymbol& phi, const Weight& weight,
                                                 int sample_count, std::uint64_t seed = 1234567ULL) {
    NormEstimatesReport report;
    report.equality_case = phi.translation_is_imaginary();
    const double factor = operator_norm(phi, weight);
    Rng rng(seed);
    while (report.samples < sample_count) {
        KernelVector f = random_kernel_vector(rng, weight);
        double nf = norm(f);
        if (nf < 1e-8) continue;  // degenerate draw
        double ratio = norm(apply_composition(phi, f)) / (factor * nf);
        double violation = report.equality_case ? std::abs(ratio - 1.0) : std::max(ratio - 1.0, 0.0);
        report.max_violation = std::max(report.max_violation, violation);
        ++report.samples;
    }
    return report;
}

struct LowerEstimateRow {
    long n = 0;
    double log_norm = 0.0;   // log ||C_phi^n g||
    double log_bound = 0.0;  // log(delta a^-((alpha+2)/2) n)
    double abs_g_psi = 0.0;  // |g(psi_n(z0))| from the factorization phi^[n] = psi_n o (a^n w)
    bool satisfied = false;
};

struct LowerEstimateReport {
    double delta = 0.0;
    long n0 = 0;             // bound holds for all tested n >= n0
    bool established = false;
    Complex z0{1.0, 0.0};
    Complex z1{1.0, 0.0};
    double abs_g_z1 = 0.0;
    std::vector<Complex> rejected_z0;
    std::vector<LowerEstimateRow> table;
};

/// Growth floor for a in (0,1): produces delta = |g(z1)| / (2 ||k_z0||) with
/// z1 = z0 + b/(1-a) and certifies ||C_phi^n g|| >= delta a^-((alpha+2)/2)n
/// on the tested range.  z0 falls back through a fixed grid when g vanishes
/// at the induced target.
inline LowerEstimateReport lower_estimate_delta(const AffineSymbol& phi, const KernelVector& g,
                                                Complex z0_first = Complex(1.0, 0.0),
                                                long horizon = 60) {
    if (!(phi.log_multiplier() < 0.0))
        throw RegimeMismatch("lower_estimate_delta requires a in (0,1)");
    double ng = norm(g);
    if (std::abs(ng - 1.0) > 1e-6)
        throw DomainError("lower_estimate_delta: g must be a unit vector");

    const Weight& weight = g.weight();
    const Complex limit_shift = phi.translation() / (-std::expm1(phi.log_multiplier()));  // b/(1-a)

    LowerEstimateReport report;
    std::vector<Complex> candidates{z0_first,
                                    {1.0, 0.0}, {2.0, 0.0}, {1.0, 1.0}, {2.0, -1.0},
                                    {0.5, 0.0}, {3.0, 0.0}, {1.0, 2.0}, {2.0, 1.0},
                                    {0.25, 0.0}, {4.0, 0.0}};
    bool found = false;
    for (const Complex& z0 : candidates) {
        Complex z1 = z0 + limit_shift;
        Complex gz1 = evaluate(g, z1);
        if (std::abs(gz1) > 1e-12) {
            report.z0 = z0;
            report.z1 = z1;
            report.abs_g_z1 = std::abs(gz1);
            found = true;
            break;
        }
        report.rejected_z0.push_back(z0);
    }
    if (!found)
        throw ZeroAtTarget("lower_estimate_delta: g vanishes at every candidate target z1");

    report.delta = report.abs_g_z1 / (2.0 * kernel_norm(weight, report.z0));
    const double log_delta = std::log(report.delta);
    const double rate = -0.5 * (weight.alpha + 2.0) * phi.log_multiplier();  // > 0

    long last_violation = 0;
    for (long n = 1; n <= horizon; ++n) {
        LowerEstimateRow row;
        row.n = n;
        row.log_norm = log_orbit_norm(phi, g, n);
        row.log_bound = log_delta + rate * static_cast<double>(n);
        // psi_n(z0) = z0 + b (1-a^n)/(1-a)
        double growth = std::expm1(static_cast<double>(n) * phi.log_multiplier()) /
                        std::expm1(phi.log_multiplier());
        row.abs_g_psi = std::abs(evaluate(g, report.z0 + phi.translation() * growth));
        row.satisfied = row.log_norm >= row.log_bound - 1e-12;
        if (!row.satisfied) last_violation = n;
        report.table.push_back(row);
    }
    report.n0 = last_violation + 1;
    report.established = report.n0 <= horizon;
    return report;
}

enum class PseudoOrbitMode { paper, perturbed };

/// Positive delta-pseudo-orbit (x_n), n >= 1, stored 0-based: vectors[0] is
/// x_1.  Construction verifies ||C_phi x_n - x_{n+1}|| <= delta (1 + 1e-9)
/// before returning.
struct PseudoOrbit {
    double delta = 0.0;
    AffineSymbol symbol = AffineSymbol::identity();
    Weight weight{0.0};
    PseudoOrbitMode mode = PseudoOrbitMode::paper;
    std::uint64_t seed = 0;
    std::vector<KernelVector> vectors;
    std::vector<double> gaps;
};

/// The summation-form pseudo-orbit x_n = (delta/||Tx||) sum_{j=1}^{n-1}
/// T^{n-j} x (mode paper; x_1 is the empty sum, i.e. 0), or a seeded random
/// perturbation x_{n+1} = T x_n + e_n with ||e_n|| <= delta (mode perturbed,
/// x_1 = x).  Gaps are measured exactly: the recomputed T x_n cancels
/// term-by-term against the stored prefix of x_{n+1}.
inline PseudoOrbit make_pseudo_orbit(const AffineSymbol& phi, const KernelVector& x, double delta,
                                     long length, PseudoOrbitMode mode,
                                     std::uint64_t seed = 97531ULL) {
    if (!(delta > 0.0)) throw DomainError("make_pseudo_orbit: delta must be positive");
    if (length < 2 || length > kHorizonCap)
        throw DomainError("make_pseudo_orbit: length must lie in [2, 10^4]");
    KernelVector tx = apply_composition(phi, x);
    double ntx = norm(tx);
    if (ntx == 0.0) throw ZeroImage("make_pseudo_orbit: C_phi x = 0 (x must be nonzero)");

    PseudoOrbit po;
    po.delta = delta;
    po.symbol = phi;
    po.weight = x.weight();
    po.mode = mode;
    po.seed = seed;

    Rng rng(seed);
    if (mode == PseudoOrbitMode::paper) {
        KernelVector step = scale(tx, Complex(delta / ntx, 0.0));
        po.vectors.push_back(KernelVector::zero(x.weight()));
        for (long n = 1; n < length; ++n)
            po.vectors.push_back(add(apply_composition(phi, po.vectors.back()), step));
    } else {
        po.vectors.push_back(x);
        for (long n = 1; n < length; ++n) {
            double mag = rng.uniform(0.0, 1.0) * delta;
            Complex point = rng.complex_in(0.2, 3.0, -2.0, 2.0);
            double phase = rng.uniform(0.0, 2.0 * M_PI);
            Complex coeff = mag * Complex(std::cos(phase), std::sin(phase)) /
                            kernel_norm(x.weight(), point);
            KernelVector noise = KernelVector::single(x.weight(), point, coeff);
            po.vectors.push_back(add(apply_composition(phi, po.vectors.back()), noise));
        }
    }

    for (std::size_t n = 0; n + 1 < po.vectors.size(); ++n) {
        KernelVector gap_vec =
            prune(subtract(apply_composition(phi, po.vectors[n]), po.vectors[n + 1]), 0.0);
        double gap = norm(gap_vec);
        if (gap > delta * (1.0 + 1e-9))
            throw std::runtime_error("make_pseudo_orbit: constructed gap exceeds delta");
        po.gaps.push_back(gap);
    }
    return po;
}

struct ShadowReport {
    KernelVector shadow;
    double epsilon_bound = 0.0;      // analytic a-priori bound (incl. truncation term)
    double truncation_bound = 0.0;   // contribution for gaps beyond the recorded horizon
    double epsilon_observed = 0.0;   // max_n of the shifted-orbit error
    std::vector<double> errors;      // ||C_phi^n x - x_{n+1}||, n = 1..
    long horizon = 0;
    long series_terms = 0;           // correction terms summed (expansion route)
    bool any_ill_conditioned = false;
};

/// Hyperbolic contraction regime a > 1 (c = a^-((alpha+2)/2) < 1): the first
/// pseudo-orbit element already shadows, with error at most
/// delta (1 + c + c^2 + ...) = delta / (1 - c).
inline ShadowReport shadow_contraction(const PseudoOrbit& po) {
    const AffineSymbol& phi = po.symbol;
    if (!(phi.log_multiplier() > 0.0))
        throw RegimeMismatch("shadow_contraction requires a > 1");
    const double c = operator_norm(phi, po.weight);  // < 1 here

    ShadowReport report{po.vectors.front()};
    report.epsilon_bound = po.delta / (1.0 - c);
    report.horizon = static_cast<long>(po.vectors.size());

    KernelVector y = report.shadow;
    for (std::size_t n = 1; n < po.vectors.size(); ++n) {
        y = prune(apply_composition(phi, y));
        NormInfo info = norm_info(prune(subtract(y, po.vectors[n])));
        report.any_ill_conditioned |= info.ill_conditioned;
        report.errors.push_back(info.value);
        report.epsilon_observed = std::max(report.epsilon_observed, info.value);
    }
    return report;
}

/// Invertible expansion regime a in (0,1), Re(b) = 0: the backward-series
/// shadow x = x_1 + sum_k C_phi^-(k+1) d_k with d_k = x_{k+2} - C_phi x_{k+1}
/// achieves error at most delta c'/(1-c'), c' = a^((alpha+2)/2).  The
/// correction series over a recorded orbit of length N is finite (N-1 terms)
/// and is summed in full; the reported truncation term bounds gaps the orbit
/// did not record.
inline ShadowReport shadow_expansion(const PseudoOrbit& po) {
    const AffineSymbol& phi = po.symbol;
    if (!(phi.log_multiplier() < 0.0) || !phi.translation_is_imaginary())
        throw RegimeMismatch("shadow_expansion requires a in (0,1) and Re(b) = 0");
    const double c_prime = std::exp(0.5 * (po.weight.alpha + 2.0) * phi.log_multiplier());  // < 1
    const AffineSymbol phi_inv = inverse(phi);

    const long gap_count = static_cast<long>(po.vectors.size()) - 1;
    KernelVector shadow = po.vectors.front();
    long summed = 0;
    for (long k = 0; k < gap_count; ++k) {
        KernelVector d = prune(
            subtract(po.vectors[static_cast<std::size_t>(k) + 1],
                     apply_composition(phi, po.vectors[static_cast<std::size_t>(k)])),
            0.0);
        bool ok = true;
        try {
            for (long j = 0; j <= k; ++j) d = prune(apply_composition(phi_inv, d));
            shadow = prune(add(shadow, d));
        } catch (const DomainError&) {
            ok = false;  // backward points fell onto the boundary; stop the series
        }
        if (!ok) break;
        ++summed;
    }

    ShadowReport report{shadow};
    report.series_terms = summed;
    report.truncation_bound =
        po.delta * std::pow(c_prime, static_cast<double>(summed) + 1.0) / (1.0 - c_prime);
    report.epsilon_bound = po.delta * c_prime / (1.0 - c_prime) + report.truncation_bound;
    report.horizon = summed + 1;

    KernelVector y = shadow;
    for (long n = 1; n <= summed; ++n) {
        y = prune(apply_composition(phi, y));
        NormInfo info = norm_info(prune(subtract(y, po.vectors[static_cast<std::size_t>(n)])));
        report.any_ill_conditioned |= info.ill_conditioned;
        report.errors.push_back(info.value);
        report.epsilon_observed = std::max(report.epsilon_observed, info.value);
    }
    return report;
}

struct WitnessReport {
    Complex fixed_pt{0.0, 0.0};
    double kernel_norm_at_p = 0.0;
    double drift_per_step = 0.0;         // delta ||k_p||
    double shadow_budget = 0.0;          // 2 eps ||k_p||
    long n_star = 0;                     // first n with (n-1) drift > budget
    bool certified = false;              // drift verified numerically up to n_star
    std::vector<double> values_at_p;     // Re x_n(p)
    std::vector<double> linear_model;    // (n-1) delta ||k_p||
    double max_model_deviation = 0.0;
};

/// Interior-fixed-point obstruction: along the pseudo-orbit x_1 = 0,
/// x_{n+1} = C_phi x_n + delta k_p/||k_p||, the evaluations x_n(p) grow by
/// delta ||k_p|| per step (C_phi leaves the value at the fixed point
/// untouched), while any epsilon-shadow pins |x(p)| within eps ||k_p||.
/// Past n_star the linear drift exceeds that budget, so no shadow exists.
inline WitnessReport non_shadowing_witness(const AffineSymbol& phi, const Weight& weight,
                                           double delta, double epsilon, long horizon) {
    FixedPointInfo fp = fixed_point(phi);
    if (fp.kind != FixedPointInfo::Kind::point || !fp.interior)
        throw NoInteriorFixedPoint("non_shadowing_witness: symbol has no interior fixed point");
    if (!(delta > 0.0) || !(epsilon > 0.0))
        throw DomainError("non_shadowing_witness: delta and epsilon must be positive");
    if (horizon < 2 || horizon > kHorizonCap)
        throw DomainError("non_shadowing_witness: horizon must lie in [2, 10^4]");

    WitnessReport report;
    report.fixed_pt = fp.point;
    report.kernel_norm_at_p = kernel_norm(weight, fp.point);
    report.drift_per_step = delta * report.kernel_norm_at_p;
    report.shadow_budget = 2.0 * epsilon * report.kernel_norm_at_p;

    long n_star = 1;
    while (static_cast<double>(n_star - 1) * report.drift_per_step <= report.shadow_budget &&
           n_star <= horizon + 1)
        ++n_star;
    report.n_star = n_star;
    report.certified = n_star <= horizon;

    KernelVector step = KernelVector::single(weight, fp.point,
                                             Complex(delta / report.kernel_norm_at_p, 0.0));
    KernelVector xn = KernelVector::zero(weight);
    long run = std::min(horizon, n_star + 5);
    for (long n = 1; n <= run; ++n) {
        Complex actual = evaluate(xn, fp.point);
        double model = static_cast<double>(n - 1) * report.drift_per_step;
        report.values_at_p.push_back(actual.real());
        report.linear_model.push_back(model);
        report.max_model_deviation =
            std::max(report.max_model_deviation, std::abs(actual - model));
        xn = add(apply_composition(phi, xn), step);
    }
    return report;
}

struct CesaroRow {
    long n = 0;
    double log_norm = 0.0;   // log ||C_phi^n f||
    double average = 0.0;    // (1/n) sum_{j<=n} ||C_phi^j f||; inf when out of range
    double log_average = 0.0;
    double log_lower_bound = 0.0;  // certified delta c^n/n ||f|| (a < 1; NaN otherwise)
};

struct CesaroReport {
    std::vector<CesaroRow> rows;
    bool bounded = false;          // a >= 1
    double bound_M = 0.0;          // max{1, c/(1-c)} (a > 1) or 1 (a = 1); NaN when unbounded
    bool bound_satisfied = false;  // averages <= M ||f|| + 1e-9 throughout (a >= 1)
    std::optional<long> witness_index;  // first n with average > threshold ||f|| (a < 1)
    double threshold = 0.0;
    double delta_used = 0.0;  // lower-estimate delta backing the bound column (a < 1)
    long n0_used = 0;
    bool lower_bound_ok = true;
};

/// Cesaro averages (1/n) sum_{j=1}^n ||C_phi^j f||.  For a >= 1 the averages
/// stay below M ||f|| with M = max{1, c/(1-c)}; for a < 1 they blow up like
/// c^n/n and the report carries the first index past the caller's threshold
/// together with the certified lower bound from the growth floor.
inline CesaroReport cesaro_averages(const AffineSymbol& phi, const KernelVector& f, long horizon,
                                    double threshold = 10.0) {
    if (horizon < 1 || horizon > kHorizonCap)
        throw DomainError("cesaro_averages: horizon must lie in [1, 10^4]");
    double nf = norm(f);
    if (nf == 0.0) throw DomainError("cesaro_averages: f must be nonzero");

    CesaroReport report;
    report.threshold = threshold;
    const double c = operator_norm(phi, f.weight());
    const bool a_below = phi.log_multiplier() < 0.0;
    report.bounded = !a_below;
    report.bound_M = a_below ? kNaN
                             : (phi.multiplier_is_one() ? 1.0 : std::max(1.0, c / (1.0 - c)));
    report.bound_satisfied = report.bounded;

    double log_delta = kNaN;
    long n0 = 0;
    if (a_below) {
        try {
            LowerEstimateReport lower =
                lower_estimate_delta(phi, scale(f, Complex(1.0 / nf, 0.0)));
            if (lower.established) {
                log_delta = std::log(lower.delta);
                n0 = lower.n0;
                report.delta_used = lower.delta;
                report.n0_used = n0;
            }
        } catch (const ZeroAtTarget&) {
            // no certified bound column for this f
        }
    }

    LogSumExp lse;
    const double log_c = -operator_norm_log(phi, f.weight()) * -1.0;  // log c
    for (long n = 1; n <= horizon; ++n) {
        CesaroRow row;
        row.n = n;
        row.log_norm = log_orbit_norm(phi, f, n);
        lse.add(row.log_norm);
        row.log_average = lse.value() - std::log(static_cast<double>(n));
        row.average = std::exp(row.log_average);
        row.log_lower_bound = kNaN;
        if (a_below && !std::isnan(log_delta) && n >= n0) {
            row.log_lower_bound = log_delta + static_cast<double>(n) * log_c -
                                  std::log(static_cast<double>(n)) + std::log(nf);
            if (row.log_average < row.log_lower_bound - 1e-12) report.lower_bound_ok = false;
        }
        if (report.bounded && row.average > report.bound_M * nf + 1e-9)
            report.bound_satisfied = false;
        if (a_below && !report.witness_index &&
            row.log_average > std::log(threshold * nf))
            report.witness_index = n;
        report.rows.push_back(row);
    }
    return report;
}

struct IrregularScanRow {
    std::size_t index = 0;
    double vector_norm = 0.0;
    double log_min = 0.0;
    double log_max = 0.0;
    long n_at_min = 0;
    long n_at_max = 0;
    bool check_passed = false;
    std::string mechanism;  // which norm-bound mechanism was verified
};

/// Finite-horizon liminf/limsup proxies of ||C_phi^n f||.  Verifies the two
/// mechanisms that preclude irregular vectors: for a >= 1 the orbit norms
/// stay below c^n ||f||; for a in (0,1) they exceed 2 once the certified
/// growth floor passes that level.  This checks the bounds, not the
/// (operator-level) nonexistence statement itself.
inline std::vector<IrregularScanRow> irregular_scan(const AffineSymbol& phi,
                                                    const std::vector<KernelVector>& vectors,
                                                    long horizon) {
    if (horizon < 1 || horizon > kHorizonCap)
        throw DomainError("irregular_scan: horizon must lie in [1, 10^4]");
    std::vector<IrregularScanRow> rows;
    const bool a_below = phi.log_multiplier() < 0.0;
    const double log_c = -0.5 * (phi.log_multiplier());  // placeholder; set per weight below

    for (std::size_t idx = 0; idx < vectors.size(); ++idx) {
        const KernelVector& f = vectors[idx];
        IrregularScanRow row;
        row.index = idx;
        row.vector_norm = norm(f);
        if (row.vector_norm == 0.0) continue;
        const double log_nf = std::log(row.vector_norm);
        const double log_c_w = operator_norm_log(phi, f.weight());  // log ||C_phi||

        row.log_min = std::numeric_limits<double>::infinity();
        row.log_max = kNegInf;
        std::vector<double> logs(static_cast<std::size_t>(horizon) + 1, 0.0);
        for (long n = 1; n <= horizon; ++n) {
            double l = log_orbit_norm(phi, f, n);
            logs[static_cast<std::size_t>(n)] = l;
            if (l < row.log_min) { row.log_min = l; row.n_at_min = n; }
            if (l > row.log_max) { row.log_max = l; row.n_at_max = n; }
        }

        if (!a_below) {
            // ||C_phi^n f|| <= c^n ||f|| <= ||f|| termwise
            row.mechanism = "norm decay: ||C^n f|| <= c^n ||f|| (a >= 1)";
            row.check_passed = true;
            for (long n = 1; n <= horizon; ++n) {
                double cap = log_nf + static_cast<double>(n) * log_c_w + 1e-10;
                if (logs[static_cast<std::size_t>(n)] > cap) row.check_passed = false;
            }
        } else {
            row.mechanism = "growth floor: ||C^n g|| >= 2 past the certified index (a < 1)";
            try {
                LowerEstimateReport lower = lower_estimate_delta(
                    phi, scale(f, Complex(1.0 / row.vector_norm, 0.0)));
                double rate = -0.5 * (f.alpha() + 2.0) * phi.log_multiplier();
                long n2 = lower.n0;
                while (std::log(lower.delta) + rate * static_cast<double>(n2) < std::log(2.0) &&
                       n2 <= horizon)
                    ++n2;
                row.check_passed = true;
                for (long n = n2; n <= horizon; ++n) {
                    if (logs[static_cast<std::size_t>(n)] - log_nf < std::log(2.0) - 1e-10)
                        row.check_passed = false;
                }
            } catch (const ZeroAtTarget&) {
                row.check_passed = false;
                row.mechanism += " [no certified floor found]";
            }
        }
        (void)log_c;
        rows.push_back(row);
    }
    return rows;
}

struct SpectralRadiusResult {
    double estimate = 0.0;       // ||C_{phi^[N]}||^(1/N), log-domain
    double theorem_value = 0.0;  // a^-((alpha+2)/2)
    double gap = 0.0;
};

/// Gelfand-style consistency check: the norm of the N-th iterate recovers
/// the spectral radius exactly, so the gap is floating-point noise only.
inline SpectralRadiusResult spectral_radius_estimate(const AffineSymbol& phi, const Weight& weight,
                                                     long big_n) {
    if (big_n < 10) throw DomainError("spectral_radius_estimate: N must be at least 10");
    SpectralRadiusResult result;
    double log_norm_n = operator_norm_log(iterate(phi, big_n), weight);
    result.estimate = std::exp(log_norm_n / static_cast<double>(big_n));
    result.theorem_value = operator_norm(phi, weight);
    result.gap = std::abs(result.estimate - result.theorem_value);
    return result;
}

}  // namespace bergman
