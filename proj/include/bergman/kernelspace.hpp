#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "bergman/numutil.hpp"
#include "bergman/symbols.hpp"
#include "bergman/types.hpp"

namespace bergman {

/// Reproducing kernel of A^2_alpha(C_+):
///
///   k_w(z) = 2^alpha (alpha+1) / (z + conj(w))^(alpha+2)
///
/// The power uses the principal branch, which is the only branch continuous
/// on the sum of two right half-planes (Re(z + conj(w)) > 0).
inline Complex kernel_eval(const Weight& weight, Complex w, Complex z) {
    if (!(w.real() > 0.0))
        throw DomainError("kernel_eval: kernel point has nonpositive real part");
    if (!(z.real() > 0.0))
        throw DomainError("kernel_eval: evaluation point has nonpositive real part");
    double alpha = weight.alpha;
    double front = std::pow(2.0, alpha) * (alpha + 1.0);
    return front * std::exp(-(alpha + 2.0) * std::log(z + std::conj(w)));
}

/// Squared norm of a single kernel: ||k_w||^2 = k_w(w) = 2^alpha(alpha+1)/(2 Re w)^(alpha+2).
inline double kernel_norm_squared(const Weight& weight, Complex w) {
    return kernel_eval(weight, w, w).real();
}

inline double kernel_norm(const Weight& weight, Complex w) {
    return std::sqrt(kernel_norm_squared(weight, w));
}

/// Finite combination f = sum_i c_i k_{w_i} with all points strictly inside
/// the right half-plane.  This is the exact computational representation of
/// the space elements handled by the library; the empty combination is the
/// zero vector.
class KernelVector {
public:
    KernelVector(Weight weight, std::vector<Complex> points, std::vector<Complex> coeffs)
        : weight_(weight), points_(std::move(points)), coeffs_(std::move(coeffs)) {
        if (points_.size() != coeffs_.size())
            throw DomainError("kernel vector: points/coeffs length mismatch");
        for (const Complex& w : points_)
            if (!(w.real() > kPointRealMin))
                throw DomainError("kernel vector: point too close to the boundary of C_+");
    }

    static KernelVector zero(Weight weight) { return KernelVector(weight, {}, {}); }
    static KernelVector single(Weight weight, Complex point, Complex coeff = Complex(1.0, 0.0)) {
        return KernelVector(weight, {point}, {coeff});
    }

    const Weight& weight() const { return weight_; }
    double alpha() const { return weight_.alpha; }
    const std::vector<Complex>& points() const { return points_; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

private:
    Weight weight_;
    std::vector<Complex> points_;
    std::vector<Complex> coeffs_;
};

inline KernelVector add(const KernelVector& f, const KernelVector& g) {
    if (!(f.weight() == g.weight()))
        throw WeightMismatch("add: kernel vectors live in different weights");
    std::vector<Complex> pts = f.points();
    std::vector<Complex> cfs = f.coeffs();
    pts.insert(pts.end(), g.points().begin(), g.points().end());
    cfs.insert(cfs.end(), g.coeffs().begin(), g.coeffs().end());
    return KernelVector(f.weight(), std::move(pts), std::move(cfs));
}

inline KernelVector scale(const KernelVector& f, Complex factor) {
    std::vector<Complex> cfs = f.coeffs();
    for (Complex& c : cfs) c *= factor;
    return KernelVector(f.weight(), f.points(), std::move(cfs));
}

inline KernelVector subtract(const KernelVector& f, const KernelVector& g) {
    return add(f, scale(g, Complex(-1.0, 0.0)));
}

/// Gram matrix G(i,j) = k_{w_j}(w_i); Hermitian positive semidefinite.
/// The upper triangle is computed and mirrored so the result is exactly
/// Hermitian and the assembly order is deterministic.
inline Eigen::MatrixXcd gram(const std::vector<Complex>& points, const Weight& weight) {
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            Complex v = kernel_eval(weight, points[static_cast<std::size_t>(j)],
                                    points[static_cast<std::size_t>(i)]);
            g(i, j) = v;
            g(j, i) = std::conj(v);
        }
    }
    return g;
}

/// <f, g> = sum_{i,j} c_i conj(d_j) k_{w_i}(z_j); conjugate-linear in the
/// second slot, so inner_product(f, g) = conj(inner_product(g, f)).
inline Complex inner_product(const KernelVector& f, const KernelVector& g) {
    if (!(f.weight() == g.weight()))
        throw WeightMismatch("inner_product: weight alpha differs");
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            acc += f.coeffs()[i] * std::conj(g.coeffs()[j]) *
                   kernel_eval(f.weight(), f.points()[i], g.points()[j]);
        }
    }
    return acc;
}

struct NormInfo {
    double value = 0.0;        // sqrt of the clamped quadratic form
    double raw = 0.0;          // Re <f,f> before clamping
    bool clamped = false;      // raw < 0
    bool suspicious = false;   // raw below -1e-8 * sum |c_i|^2 ||k_{w_i}||^2
    bool ill_conditioned = false;
    double condition_estimate = 1.0;
};

/// Norm through the Gram quadratic form.  A pivoted LDL^T factorization
/// supplies the condition estimate; values beyond 1e12 mark the result as
/// ill-conditioned (kernel points cluster under iteration when a < 1).
inline NormInfo norm_info(const KernelVector& f) {
    NormInfo info;
    const std::size_t n = f.size();
    if (n == 0) return info;

    Eigen::MatrixXcd g = gram(f.points(), f.weight());
    Complex q(0.0, 0.0);
    double diag_scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Complex ci = f.coeffs()[i];
        diag_scale += std::norm(ci) * g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
        for (std::size_t j = 0; j < n; ++j) {
            q += std::conj(ci) * g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                 f.coeffs()[j];
        }
    }
    info.raw = q.real();
    if (info.raw < 0.0) {
        info.clamped = true;
        info.suspicious = info.raw < -1e-8 * diag_scale;
    }
    info.value = std::sqrt(std::max(info.raw, 0.0));

    Eigen::LDLT<Eigen::MatrixXcd> ldlt(g);
    Eigen::VectorXd d = ldlt.vectorD().real();
    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        dmax = std::max(dmax, d(i));
        dmin = std::min(dmin, d(i));
    }
    if (dmin <= 0.0) {
        info.condition_estimate = std::numeric_limits<double>::infinity();
    } else {
        info.condition_estimate = dmax / dmin;
    }
    info.ill_conditioned = info.condition_estimate > kIllConditionedThreshold;
    return info;
}

inline double norm(const KernelVector& f) { return norm_info(f).value; }

/// Pointwise evaluation f(z) = sum c_i k_{w_i}(z).
inline Complex evaluate(const KernelVector& f, Complex z) {
    if (!(z.real() > 0.0))
        throw DomainError("evaluate: point has nonpositive real part");
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i)
        acc += f.coeffs()[i] * kernel_eval(f.weight(), f.points()[i], z);
    return acc;
}

/// Action of the composition operator on a kernel combination:
///
///   C_phi k_w = a^-(alpha+2) k_{(w + conj(b))/a}
///
/// so points move by w -> w/a + conj(b/a) and every coefficient picks up the
/// factor a^-(alpha+2).  Pointwise this reproduces f(phi(z)).
inline KernelVector apply_composition(const AffineSymbol& phi, const KernelVector& f) {
    double factor = std::exp(-(f.alpha() + 2.0) * phi.log_multiplier());
    Complex shift = std::conj(phi.translation_over_multiplier());
    std::vector<Complex> pts;
    std::vector<Complex> cfs;
    pts.reserve(f.size());
    cfs.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        pts.push_back(f.points()[i] / phi.a() + shift);
        cfs.push_back(f.coeffs()[i] * factor);
    }
    return KernelVector(f.weight(), std::move(pts), std::move(cfs));
}

/// Adjoint action C_phi^* k_w = k_{phi(w)}; coefficients are untouched.
inline KernelVector apply_adjoint(const AffineSymbol& phi, const KernelVector& f) {
    std::vector<Complex> pts;
    pts.reserve(f.size());
    for (const Complex& w : f.points()) pts.push_back(apply(phi, w));
    return KernelVector(f.weight(), std::move(pts), f.coeffs());
}

/// Merges points within |w - w'| <= tol (first-seen representative, summed
/// coefficients) and drops terms whose contribution |c| ||k_w|| falls below
/// tol.  Exact zero coefficients are always dropped.  The discarded mass is
/// bounded by tol per removed term.
inline KernelVector prune(const KernelVector& f, double tol = kPruneDefaultTol) {
    if (tol < 0.0) throw DomainError("prune: tolerance must be nonnegative");
    std::vector<Complex> pts;
    std::vector<Complex> cfs;
    for (std::size_t i = 0; i < f.size(); ++i) {
        bool merged = false;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            if (std::abs(f.points()[i] - pts[k]) <= tol) {
                cfs[k] += f.coeffs()[i];
                merged = true;
                break;
            }
        }
        if (!merged) {
            pts.push_back(f.points()[i]);
            cfs.push_back(f.coeffs()[i]);
        }
    }
    std::vector<Complex> pts_out;
    std::vector<Complex> cfs_out;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        double mass = std::abs(cfs[k]);
        if (mass == 0.0) continue;
        if (mass * kernel_norm(f.weight(), pts[k]) < tol) continue;
        pts_out.push_back(pts[k]);
        cfs_out.push_back(cfs[k]);
    }
    return KernelVector(f.weight(), std::move(pts_out), std::move(cfs_out));
}

/// log ||C_{phi^[n]} f||, exact in log-domain for any n up to the iterate
/// cap.  Uses the closed form
///
///   ||C_{phi^[n]} f||^2 = a^-(alpha+2)n * sum_{i,j} c_i conj(c_j)
///                         2^alpha (alpha+1) (conj(w_i) + w_j + R_n)^-(alpha+2)
///
/// with R_n = 2 Re(b_n) the (nonnegative) real translation of the n-th
/// iterate.  All large scales (a^n, R_n) are factored out in log form, so
/// the remaining Hermitian sum is O(1) even when points or translations
/// leave double range.
inline double log_orbit_norm(const AffineSymbol& phi, const KernelVector& f, long n) {
    if (f.empty()) return kNegInf;
    const double eff = f.alpha() + 2.0;
    const double nd = static_cast<double>(n);

    double log_r = log_real_translation_of_iterate(phi, n);
    if (log_r != kNegInf) log_r += std::log(2.0);  // R_n = 2 Re(b_n)

    double wmax = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j)
            wmax = std::max(wmax, std::abs(std::conj(f.points()[i]) + f.points()[j]));
    double log_m = std::max(log_r, std::log(wmax));

    double rho = (log_r == kNegInf) ? 0.0 : std::exp(log_r - log_m);
    double unscale = std::exp(-log_m);  // underflows harmlessly when R_n dominates

    const double front = std::pow(2.0, f.alpha()) * (f.alpha() + 1.0);
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = 0; j < f.size(); ++j) {
            Complex zeta = (std::conj(f.points()[i]) + f.points()[j]) * unscale + rho;
            s += std::conj(f.coeffs()[i]) * f.coeffs()[j] *
                 (front * std::exp(-eff * std::log(zeta)));
        }
    }
    double s_real = std::max(s.real(), 0.0);
    return 0.5 * (-eff * nd * phi.log_multiplier() - eff * log_m + std::log(s_real));
}

}  // namespace bergman
