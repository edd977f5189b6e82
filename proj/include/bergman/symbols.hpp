#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "bergman/numutil.hpp"
#include "bergman/types.hpp"

namespace bergman {

/// Weight parameter alpha > -1 of the Bergman space A^2_alpha(C_+).
struct Weight {
    double alpha;

    explicit Weight(double a) : alpha(a) {
        if (!(a > -1.0))
            throw DomainError("weight violates alpha > -1 (alpha <= -1)");
    }
    friend bool operator==(const Weight&, const Weight&) = default;
};

/// Affine self-map phi(w) = a*w + b of the right half-plane, a > 0,
/// Re(b) >= 0.  These are the only symbols considered by the library.
///
/// The multiplier is carried both as a plain double and in log form; the
/// log form is authoritative for scale computations so that iterates with
/// a^n far outside double range still expose exact log-domain data.  The
/// ratio b/a is maintained alongside because it stays finite for forward
/// iterates even when b itself leaves double range.
class AffineSymbol {
public:
    AffineSymbol(double a, Complex b) {
        if (!(a > 0.0))
            throw DomainError("affine symbol violates a > 0 (a <= 0 or NaN)");
        if (!(b.real() >= -kReBoundaryTol))
            throw DomainError("affine symbol violates Re(b) >= 0 (Re(b) < 0)");
        if (std::abs(b.real()) <= kReBoundaryTol) b = Complex(0.0, b.imag());
        a_ = a;
        log_a_ = std::log(a);
        b_ = b;
        b_div_a_ = b / a;
    }

    static AffineSymbol identity() { return AffineSymbol(1.0, Complex(0.0, 0.0)); }

    double a() const { return a_; }
    double log_multiplier() const { return log_a_; }
    Complex translation() const { return b_; }
    Complex translation_over_multiplier() const { return b_div_a_; }

    bool multiplier_is_one() const { return log_a_ == 0.0; }
    /// True when b lies on the imaginary axis (Re(b) clamped to 0 at
    /// construction when within tolerance).
    bool translation_is_imaginary() const { return b_.real() == 0.0; }
    bool is_identity() const { return multiplier_is_one() && b_ == Complex(0.0, 0.0); }

private:
    struct Raw {};
    AffineSymbol(Raw, double a, double log_a, Complex b, Complex b_div_a)
        : a_(a), log_a_(log_a), b_(b), b_div_a_(b_div_a) {
        if (std::abs(b_.real()) <= kReBoundaryTol) {
            b_ = Complex(0.0, b_.imag());
            b_div_a_ = Complex(0.0, b_div_a_.imag());
        }
    }

    double a_ = 1.0;
    double log_a_ = 0.0;
    Complex b_{0.0, 0.0};
    Complex b_div_a_{0.0, 0.0};

    friend AffineSymbol compose(const AffineSymbol&, const AffineSymbol&);
    friend AffineSymbol iterate(const AffineSymbol&, long);
    friend AffineSymbol inverse(const AffineSymbol&);
};

inline Complex apply(const AffineSymbol& phi, Complex w) {
    return phi.a() * w + phi.translation();
}

/// phi o psi, i.e. w -> phi(psi(w)).
inline AffineSymbol compose(const AffineSymbol& phi, const AffineSymbol& psi) {
    double a = phi.a_ * psi.a_;
    double log_a = phi.log_a_ + psi.log_a_;
    Complex b = phi.a_ * psi.b_ + phi.b_;
    Complex b_div_a = psi.b_div_a_ + phi.b_div_a_ / psi.a_;
    return AffineSymbol(AffineSymbol::Raw{}, a, log_a, b, b_div_a);
}

/// n-fold composition phi^[n].  For a = 1 the translation is n*b; otherwise
/// it is b*(1-a^n)/(1-a), evaluated through expm1 so that multipliers near 1
/// and large n stay accurate.  n is capped rather than silently degraded.
inline AffineSymbol iterate(const AffineSymbol& phi, long n) {
    if (n < 0) throw DomainError("iterate requires n >= 0");
    if (n > kIterateCap) throw DomainError("iterate n exceeds cap 10^6");
    if (n == 0) return AffineSymbol::identity();

    double nd = static_cast<double>(n);
    double log_an = nd * phi.log_a_;
    double an = std::exp(log_an);

    Complex bn, bn_div_an;
    if (phi.multiplier_is_one()) {
        bn = nd * phi.b_;
        bn_div_an = bn;
    } else if (phi.b_ == Complex(0.0, 0.0)) {
        bn = Complex(0.0, 0.0);
        bn_div_an = Complex(0.0, 0.0);
    } else {
        double growth = std::expm1(nd * phi.log_a_) / std::expm1(phi.log_a_);  // (1-a^n)/(1-a)
        bn = phi.b_ * growth;
        double ratio = -std::expm1(-nd * phi.log_a_) / std::expm1(phi.log_a_);  // (1-a^n)/((1-a)a^n)
        bn_div_an = phi.b_ * ratio;
    }
    return AffineSymbol(AffineSymbol::Raw{}, an, log_an, bn, bn_div_an);
}

/// Inverse symbol (1/a, -b/a); exists as a self-map of C_+ only when
/// Re(b) = 0 (within the construction tolerance).
inline AffineSymbol inverse(const AffineSymbol& phi) {
    if (!phi.translation_is_imaginary())
        throw NotInvertible("affine symbol with Re(b) > 0 has no inverse self-map of C_+");
    return AffineSymbol(AffineSymbol::Raw{}, 1.0 / phi.a_, -phi.log_a_, -phi.b_div_a_, -phi.b_);
}

struct FixedPointInfo {
    enum class Kind { none, point, all_points };
    Kind kind = Kind::none;
    Complex point{0.0, 0.0};  // valid when kind == point
    bool interior = false;    // Re(point) > 0
};

/// Finite fixed point of phi.  a != 1 gives p = b/(1-a); translations have
/// none; the identity fixes everything.
inline FixedPointInfo fixed_point(const AffineSymbol& phi) {
    FixedPointInfo info;
    if (phi.multiplier_is_one()) {
        info.kind = (phi.translation() == Complex(0.0, 0.0)) ? FixedPointInfo::Kind::all_points
                                                             : FixedPointInfo::Kind::none;
        return info;
    }
    info.kind = FixedPointInfo::Kind::point;
    info.point = phi.translation() / (-std::expm1(phi.log_multiplier()));  // b/(1-a)
    info.interior = info.point.real() > 0.0;
    return info;
}

/// Angular derivative phi'(inf) = lim w/phi(w) = 1/a.
inline double angular_derivative_at_infinity(const AffineSymbol& phi) {
    return 1.0 / phi.a();
}

/// log(Re of the translation of phi^[n]); -inf when Re(b) = 0 or n = 0.
/// Stable for all n up to the iterate cap even when the value itself
/// overflows a double.
inline double log_real_translation_of_iterate(const AffineSymbol& phi, long n) {
    double re_b = phi.translation().real();
    if (re_b == 0.0 || n == 0) return kNegInf;
    double nd = static_cast<double>(n);
    if (phi.multiplier_is_one()) return std::log(re_b) + std::log(nd);
    double log_growth =
        log_abs_expm1(nd * phi.log_multiplier()) - log_abs_expm1(phi.log_multiplier());
    return std::log(re_b) + log_growth;
}

}  // namespace bergman
