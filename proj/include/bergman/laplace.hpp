#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "bergman/kernelspace.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/symbols.hpp"
#include "bergman/types.hpp"

namespace bergman {

/// One term gamma * t^beta * e^(-c t) of a profile function.
struct ProfileTerm {
    Complex gamma;
    double beta;
    Complex c;
};

/// F(t) = sum_j gamma_j t^beta_j e^(-c_j t) on the positive half-line.
/// This family is closed under the conjugated operator and its adjoint, and
/// membership in L^2(R_+, mu_alpha) is equivalent to beta_j > alpha/2 for
/// every term (given Re(c_j) > 0), which the constructor enforces.
class ProfileFunction {
public:
    ProfileFunction(Weight weight, std::vector<ProfileTerm> terms)
        : weight_(weight), terms_(std::move(terms)) {
        for (const ProfileTerm& t : terms_) {
            if (!(t.c.real() > 0.0))
                throw DomainError("profile term: decay must have Re(c) > 0");
            if (!(t.beta > weight_.alpha / 2.0))
                throw DomainError("profile term: beta must exceed alpha/2 for a finite mu-norm");
        }
    }

    static ProfileFunction zero(Weight weight) { return ProfileFunction(weight, {}); }
    static ProfileFunction single(Weight weight, Complex gamma, double beta, Complex c) {
        return ProfileFunction(weight, {ProfileTerm{gamma, beta, c}});
    }

    const Weight& weight() const { return weight_; }
    double alpha() const { return weight_.alpha; }
    const std::vector<ProfileTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    Complex eval(double t) const {
        Complex acc(0.0, 0.0);
        for (const ProfileTerm& term : terms_)
            acc += term.gamma * std::pow(t, term.beta) * std::exp(-term.c * t);
        return acc;
    }

private:
    Weight weight_;
    std::vector<ProfileTerm> terms_;
};

/// Inner product in L^2(R_+, mu_alpha), d mu_alpha = Gamma(1+alpha)/(2^alpha t^(alpha+1)) dt,
/// via the closed form  int t^(s-1) e^(-z t) dt = Gamma(s) / z^s  (principal
/// power, Re(z) > 0):
///
///   <F, G> = Gamma(1+alpha)/2^alpha * sum_{j,l} gamma_j conj(delta_l)
///            Gamma(beta_j + beta_l - alpha) / (c_j + conj(c_l))^(beta_j + beta_l - alpha)
inline Complex mu_inner_product(const ProfileFunction& f, const ProfileFunction& g) {
    if (!(f.weight() == g.weight()))
        throw WeightMismatch("mu_inner_product: weight alpha differs");
    const double alpha = f.alpha();
    const double front = std::tgamma(1.0 + alpha) / std::pow(2.0, alpha);
    Complex acc(0.0, 0.0);
    for (const ProfileTerm& tj : f.terms()) {
        for (const ProfileTerm& tl : g.terms()) {
            double s = tj.beta + tl.beta - alpha;
            if (!(s > 0.0))
                throw DivergentIntegral("mu_inner_product: beta_j + beta_l - alpha <= 0");
            Complex z = tj.c + std::conj(tl.c);
            acc += tj.gamma * std::conj(tl.gamma) * std::tgamma(s) *
                   std::exp(-s * std::log(z));
        }
    }
    return front * acc;
}

inline double mu_norm(const ProfileFunction& f) {
    if (f.empty()) return 0.0;
    return std::sqrt(std::max(mu_inner_product(f, f).real(), 0.0));
}

/// mu_alpha-norm by graded-panel quadrature (cross-check of the closed form).
inline double mu_norm_by_quadrature(const ProfileFunction& f) {
    if (f.empty()) return 0.0;
    const double alpha = f.alpha();
    const double front = std::tgamma(1.0 + alpha) / std::pow(2.0, alpha);
    double lambda = std::numeric_limits<double>::infinity();
    double amp = 0.0, beta_max = 0.0;
    for (const ProfileTerm& t : f.terms()) {
        lambda = std::min(lambda, 2.0 * t.c.real());
        amp += std::abs(t.gamma);
        beta_max = std::max(beta_max, t.beta);
    }
    const double poly = 2.0 * beta_max - (alpha + 1.0);
    auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        return front * std::norm(f.eval(t)) * std::pow(t, -(alpha + 1.0));
    };
    auto tail_log = [&](double edge) {
        // integrand <= front * amp^2 * t^poly e^(-lambda t); crude tail via
        // one extra e-folding of slack.
        return std::log(front * amp * amp + 1e-300) + poly * std::log(edge) -
               lambda * edge + std::log(2.0 / lambda);
    };
    double val = integrate_half_line(integrand, tail_log);
    return std::sqrt(std::max(val, 0.0));
}

/// Closed-form Laplace transform of a profile function:
///
///   (LF)(w) = sum_j gamma_j Gamma(beta_j + 1) / (w + c_j)^(beta_j + 1)
///
/// When every beta_j equals alpha + 1 the image is exactly a kernel
/// combination: gamma t^(alpha+1) e^(-conj(w0) t) maps to
/// gamma * Gamma(alpha+2) / (2^alpha (alpha+1)) * k_{w0}.
class LaplaceImage {
public:
    LaplaceImage(Weight weight, std::vector<ProfileTerm> terms,
                 std::optional<KernelVector> kernel_form)
        : weight_(weight), terms_(std::move(terms)), kernel_form_(std::move(kernel_form)) {}

    Complex eval(Complex w) const {
        if (!(w.real() > 0.0))
            throw DomainError("laplace image: evaluation point has nonpositive real part");
        Complex acc(0.0, 0.0);
        for (const ProfileTerm& t : terms_)
            acc += t.gamma * std::tgamma(t.beta + 1.0) *
                   std::exp(-(t.beta + 1.0) * std::log(w + t.c));
        return acc;
    }

    const std::optional<KernelVector>& as_kernel_vector() const { return kernel_form_; }
    const Weight& weight() const { return weight_; }
    const std::vector<ProfileTerm>& source_terms() const { return terms_; }

private:
    Weight weight_;
    std::vector<ProfileTerm> terms_;
    std::optional<KernelVector> kernel_form_;
};

inline LaplaceImage laplace_transform(const ProfileFunction& f) {
    const double alpha = f.alpha();
    bool kernel_family = true;
    for (const ProfileTerm& t : f.terms())
        if (std::abs(t.beta - (alpha + 1.0)) > 1e-12) kernel_family = false;

    std::optional<KernelVector> kernel;
    if (kernel_family) {
        double factor = std::tgamma(alpha + 2.0) / (std::pow(2.0, alpha) * (alpha + 1.0));
        std::vector<Complex> pts;
        std::vector<Complex> cfs;
        for (const ProfileTerm& t : f.terms()) {
            pts.push_back(std::conj(t.c));
            cfs.push_back(t.gamma * factor);
        }
        kernel = KernelVector(f.weight(), std::move(pts), std::move(cfs));
    }
    return LaplaceImage(f.weight(), f.terms(), std::move(kernel));
}

/// Conjugated operator (hat C_phi F)(t) = (1/a) e^(-b t / a) F(t / a);
/// termwise (gamma, beta, c) -> (gamma a^-(beta+1), beta, (c + b)/a).
inline ProfileFunction hat_apply(const AffineSymbol& phi, const ProfileFunction& f) {
    std::vector<ProfileTerm> terms;
    terms.reserve(f.terms().size());
    for (const ProfileTerm& t : f.terms()) {
        double factor = std::exp(-(t.beta + 1.0) * phi.log_multiplier());
        terms.push_back(ProfileTerm{t.gamma * factor, t.beta, (t.c + phi.translation()) / phi.a()});
    }
    return ProfileFunction(f.weight(), std::move(terms));
}

/// Adjoint (hat C_phi^* F)(t) = a^-(alpha+1) e^(-conj(b) t) F(a t);
/// termwise (gamma, beta, c) -> (gamma a^(beta-alpha-1), beta, a c + conj(b)).
inline ProfileFunction hat_adjoint_apply(const AffineSymbol& phi, const ProfileFunction& f) {
    const double alpha = f.alpha();
    std::vector<ProfileTerm> terms;
    terms.reserve(f.terms().size());
    for (const ProfileTerm& t : f.terms()) {
        double factor = std::exp((t.beta - alpha - 1.0) * phi.log_multiplier());
        terms.push_back(
            ProfileTerm{t.gamma * factor, t.beta, phi.a() * t.c + std::conj(phi.translation())});
    }
    return ProfileFunction(f.weight(), std::move(terms));
}

/// Max over the samples of |L(F)(phi(z)) - L(hat C_phi F)(z)|; the two sides
/// agree identically, so the deviation is pure floating-point noise.
inline double intertwining_check(const AffineSymbol& phi, const ProfileFunction& f,
                                 const std::vector<Complex>& sample_points) {
    LaplaceImage lf = laplace_transform(f);
    LaplaceImage lhat = laplace_transform(hat_apply(phi, f));
    double worst = 0.0;
    for (Complex z : sample_points) {
        if (!(z.real() > 0.0))
            throw DomainError("intertwining_check: sample point outside C_+");
        worst = std::max(worst, std::abs(lf.eval(apply(phi, z)) - lhat.eval(z)));
    }
    return worst;
}

struct NormalityDefect {
    double max_commutator = 0.0;   // max_t |(hatC hatC* - hatC* hatC) F (t)| via term maps
    double max_closed_form = 0.0;  // max_t a^-(alpha+2) |e^(-2Re(b)t/a) - e^(-2Re(b)t)| |F(t)|
};

/// Commutator of the conjugated operator with its adjoint, measured on a
/// t-sample.  Both routes are returned: the operational one (two term-map
/// applications in each order) and the closed form they must reproduce.
inline NormalityDefect normality_defect(const AffineSymbol& phi, const ProfileFunction& f,
                                        const std::vector<double>& t_samples) {
    ProfileFunction lhs = hat_apply(phi, hat_adjoint_apply(phi, f));
    ProfileFunction rhs = hat_adjoint_apply(phi, hat_apply(phi, f));
    const double alpha = f.alpha();
    const double a = phi.a();
    const double scale = std::exp(-(alpha + 2.0) * phi.log_multiplier());
    const double re2b = 2.0 * phi.translation().real();
    NormalityDefect defect;
    for (double t : t_samples) {
        defect.max_commutator = std::max(defect.max_commutator, std::abs(lhs.eval(t) - rhs.eval(t)));
        double gap = scale * std::abs(std::exp(-re2b * t / a) - std::exp(-re2b * t)) *
                     std::abs(f.eval(t));
        defect.max_closed_form = std::max(defect.max_closed_form, gap);
    }
    return defect;
}

struct QuadratureParams {
    double rel_tol = 1e-6;
    int max_refinements = 6;
    double tail_rel = 1e-9;
};

struct IsometryRefinementRow {
    int level = 0;
    double bergman_norm = 0.0;
    double mu_norm = 0.0;
    double gap = 0.0;
};

struct IsometryReport {
    double bergman_norm = 0.0;
    double mu_norm = 0.0;
    double relative_gap = 0.0;
    std::vector<IsometryRefinementRow> refinements;
};

namespace detail {

/// Truncation box and panel edges for the 2D Bergman integral of |LF|^2.
struct BergmanDomain {
    std::vector<double> x_edges;
    std::vector<double> y_edges;  // nonnegative half; mirrored at integration time
};

inline BergmanDomain bergman_domain(const ProfileFunction& f, double tail_abs) {
    double beta_min = std::numeric_limits<double>::infinity();
    double cmax = 0.0;
    double amp = 0.0;
    for (const ProfileTerm& t : f.terms()) {
        beta_min = std::min(beta_min, t.beta);
        cmax = std::max(cmax, std::abs(t.c));
        amp += std::abs(t.gamma) * std::tgamma(t.beta + 1.0) * std::pow(2.0, t.beta + 1.0);
    }
    const double alpha = f.alpha();
    const double p = beta_min + 1.0;  // |LF| <= amp |w|^-p for |w| >= max(1, 2 cmax)
    const double b_const = std::sqrt(M_PI) * std::tgamma(p + 0.5) / std::tgamma(p + 1.0);

    // Tail past x = X: (amp^2 B / pi) X^(alpha - 2p) / (2p - alpha) <= tail_abs.
    double X = std::pow(amp * amp * b_const / (M_PI * (2.0 * p - alpha) * tail_abs),
                        1.0 / (2.0 * p - alpha));
    X = std::max(X, 4.0 * std::max(1.0, cmax));

    double Y = std::pow(2.0 * amp * amp * std::pow(X, alpha + 1.0) /
                            (M_PI * (alpha + 1.0) * (2.0 * p + 1.0) * tail_abs),
                        1.0 / (2.0 * p + 1.0));
    Y = std::max(Y, 4.0 * std::max(1.0, cmax));

    // x-grading reaches low enough that the dropped sliver below t0 is
    // negligible even for alpha in (-1, 0), where x^alpha concentrates mass
    // at the origin.
    double t0 = std::min(1e-8, std::pow(1e-13 * (alpha + 1.0), 1.0 / (alpha + 1.0)));
    BergmanDomain dom;
    dom.x_edges = geometric_edges(t0, 2.0, X);
    dom.x_edges.insert(dom.x_edges.begin(), 0.0);
    dom.y_edges = geometric_edges(0.25, 2.0, Y);
    dom.y_edges.insert(dom.y_edges.begin(), 0.0);
    return dom;
}

inline double bergman_norm_squared_level(const LaplaceImage& lf, const BergmanDomain& dom,
                                         int order, double alpha) {
    const GaussLegendreRule& rule = gauss_legendre(order);
    double total = 0.0;
    for (std::size_t xi = 0; xi + 1 < dom.x_edges.size(); ++xi) {
        const double xl = dom.x_edges[xi], xh = dom.x_edges[xi + 1];
        const double xm = 0.5 * (xl + xh), xr = 0.5 * (xh - xl);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double x = xm + xr * rule.nodes[k];
            const double wx = rule.weights[k] * xr * std::pow(x, alpha);
            double slice = 0.0;
            for (std::size_t yi = 0; yi + 1 < dom.y_edges.size(); ++yi) {
                const double yl = dom.y_edges[yi], yh = dom.y_edges[yi + 1];
                const double ym = 0.5 * (yl + yh), yr = 0.5 * (yh - yl);
                for (std::size_t m = 0; m < rule.nodes.size(); ++m) {
                    const double y = ym + yr * rule.nodes[m];
                    const double wy = rule.weights[m] * yr;
                    slice += wy * (std::norm(lf.eval(Complex(x, y))) +
                                   std::norm(lf.eval(Complex(x, -y))));
                }
            }
            total += wx * slice;
        }
    }
    return total / M_PI;
}

}  // namespace detail

/// Compares the Bergman-side norm of LF (2D quadrature of the area integral
/// (1/pi) int int |LF(x+iy)|^2 x^alpha dx dy, refined by escalating the
/// panel rule order) with the closed-form mu_alpha norm of F.  Throws
/// QuadratureNotConverged when the refinement stalls above the requested
/// tolerance.
inline IsometryReport isometry_check(const ProfileFunction& f,
                                     const QuadratureParams& params = {}) {
    IsometryReport report;
    report.mu_norm = mu_norm(f);
    if (f.empty()) {
        report.refinements.push_back({0, 0.0, 0.0, 0.0});
        return report;
    }

    const double mu2 = report.mu_norm * report.mu_norm;
    detail::BergmanDomain dom = detail::bergman_domain(f, params.tail_rel * std::max(mu2, 1e-12));
    LaplaceImage lf = laplace_transform(f);

    static constexpr int kOrders[] = {6, 10, 16, 24, 32, 40, 48, 56};
    double prev = -1.0;
    bool converged = false;
    int levels = std::min<int>(params.max_refinements,
                               static_cast<int>(sizeof(kOrders) / sizeof(kOrders[0])));
    for (int level = 0; level < levels; ++level) {
        double val2 = detail::bergman_norm_squared_level(lf, dom, kOrders[level], f.alpha());
        double bnorm = std::sqrt(std::max(val2, 0.0));
        double gap = std::abs(bnorm - report.mu_norm) / std::max(report.mu_norm, 1e-300);
        report.refinements.push_back({level, bnorm, report.mu_norm, gap});
        report.bergman_norm = bnorm;
        if (prev >= 0.0 && std::abs(bnorm - prev) <= 0.5 * params.rel_tol * std::max(bnorm, 1e-300)) {
            converged = true;
            break;
        }
        prev = bnorm;
    }
    if (!converged)
        throw QuadratureNotConverged("isometry_check: Bergman quadrature refinement did not settle");
    report.relative_gap =
        std::abs(report.bergman_norm - report.mu_norm) / std::max(report.mu_norm, 1e-300);
    return report;
}

}  // namespace bergman
