#pragma once

#include <cmath>
#include <map>
#include <string>

#include "bergman/symbols.hpp"
#include "bergman/types.hpp"

namespace bergman {

/// ||C_phi|| = phi'(inf)^((alpha+2)/2) = a^-((alpha+2)/2), in log domain.
inline double operator_norm_log(const AffineSymbol& phi, const Weight& weight) {
    return -0.5 * (weight.alpha + 2.0) * phi.log_multiplier();
}

inline double operator_norm(const AffineSymbol& phi, const Weight& weight) {
    return std::exp(operator_norm_log(phi, weight));
}

enum class SpectrumKind { singleton_one, unit_circle, spiral_with_zero, circle, closed_disc };

inline const char* to_string(SpectrumKind kind) {
    switch (kind) {
        case SpectrumKind::singleton_one: return "singleton_one";
        case SpectrumKind::unit_circle: return "unit_circle";
        case SpectrumKind::spiral_with_zero: return "spiral_with_zero";
        case SpectrumKind::circle: return "circle";
        case SpectrumKind::closed_disc: return "closed_disc";
    }
    return "unknown";
}

/// Symbolic spectrum of C_phi.  The spiral case is the curve
/// {e^(-b t) : t >= 0} together with 0 (the closure of the essential range
/// of the multiplication symbol on the Laplace side); its modulus decays
/// like e^(-Re(b) t), so the curve spirals from 1 into the origin.
struct SpectrumDescriptor {
    SpectrumKind kind = SpectrumKind::singleton_one;
    double radius = 1.0;            // circle / closed_disc
    Complex generator{0.0, 0.0};    // spiral_with_zero

    double max_modulus() const {
        switch (kind) {
            case SpectrumKind::singleton_one:
            case SpectrumKind::unit_circle:
            case SpectrumKind::spiral_with_zero:
                return 1.0;  // the spiral starts at e^0 = 1
            case SpectrumKind::circle:
            case SpectrumKind::closed_disc:
                return radius;
        }
        return 1.0;
    }

    bool contains(Complex lambda, double tol = 1e-9) const {
        const double mod = std::abs(lambda);
        switch (kind) {
            case SpectrumKind::singleton_one:
                return std::abs(lambda - Complex(1.0, 0.0)) <= tol;
            case SpectrumKind::unit_circle:
                return std::abs(mod - 1.0) <= tol;
            case SpectrumKind::circle:
                return std::abs(mod - radius) <= tol;
            case SpectrumKind::closed_disc:
                return mod <= radius + tol;
            case SpectrumKind::spiral_with_zero: {
                if (mod <= tol) return true;
                if (mod > 1.0 + tol) return false;
                double re_b = generator.real();
                if (re_b <= 0.0) return std::abs(mod - 1.0) <= tol;  // degenerate
                double t = std::max(-std::log(std::min(mod, 1.0)) / re_b, 0.0);
                return std::abs(std::exp(-generator * t) - lambda) <= tol;
            }
        }
        return false;
    }
};

/// Spectrum selection:
///   a = 1, b = 0            -> {1}
///   a = 1, b imaginary      -> unit circle
///   a = 1, Re(b) > 0        -> spiral into 0
///   a != 1, b imaginary     -> circle of radius a^-((alpha+2)/2)
///   a != 1, Re(b) > 0       -> closed disc of radius a^-((alpha+2)/2)
inline SpectrumDescriptor spectrum(const AffineSymbol& phi, const Weight& weight) {
    SpectrumDescriptor d;
    if (phi.multiplier_is_one()) {
        if (phi.translation() == Complex(0.0, 0.0)) {
            d.kind = SpectrumKind::singleton_one;
        } else if (phi.translation_is_imaginary()) {
            d.kind = SpectrumKind::unit_circle;
        } else {
            d.kind = SpectrumKind::spiral_with_zero;
            d.generator = phi.translation();
        }
        return d;
    }
    d.radius = operator_norm(phi, weight);
    d.kind = phi.translation_is_imaginary() ? SpectrumKind::circle : SpectrumKind::closed_disc;
    return d;
}

/// Hyperbolic = spectrum disjoint from the unit circle.
inline bool is_hyperbolic(const SpectrumDescriptor& d) {
    switch (d.kind) {
        case SpectrumKind::singleton_one: return false;  // 1 lies on the circle
        case SpectrumKind::unit_circle: return false;
        case SpectrumKind::spiral_with_zero: return false;  // the spiral starts at 1
        case SpectrumKind::circle: return d.radius != 1.0;
        case SpectrumKind::closed_disc: return d.radius < 1.0;
    }
    return false;
}

/// Three-valued answer for properties whose definition needs invertibility.
enum class Tri { yes, no, not_applicable };

inline const char* to_string(Tri t) {
    switch (t) {
        case Tri::yes: return "true";
        case Tri::no: return "false";
        case Tri::not_applicable: return "not_applicable";
    }
    return "?";
}

/// Full dynamical classification of C_phi on A^2_alpha(C_+) together with a
/// per-field tag naming the decision rule that produced the value.
struct DynamicsReport {
    double a = 1.0;
    double b_re = 0.0;
    double b_im = 0.0;
    double alpha = 0.0;

    double operator_norm = 1.0;
    bool invertible = false;
    bool unitary = false;
    bool normal = false;
    Tri expansive = Tri::not_applicable;
    Tri uniformly_expansive = Tri::not_applicable;
    bool positive_expansive = false;
    bool uniformly_positive_expansive = false;
    bool li_yorke = false;
    bool positive_shadowing = false;
    bool cesaro_bounded = false;
    bool hyperbolic = false;
    SpectrumDescriptor spectrum;

    std::map<std::string, std::string> citations;
};

inline DynamicsReport classify(const AffineSymbol& phi, const Weight& weight) {
    DynamicsReport r;
    r.a = phi.a();
    r.b_re = phi.translation().real();
    r.b_im = phi.translation().imag();
    r.alpha = weight.alpha;

    const bool re_b_zero = phi.translation_is_imaginary();
    const bool a_one = phi.multiplier_is_one();
    const bool a_below = phi.log_multiplier() < 0.0;
    const bool a_above = phi.log_multiplier() > 0.0;

    r.operator_norm = operator_norm(phi, weight);
    r.citations["operator_norm"] = "norm formula a^-((alpha+2)/2) via the angular derivative at infinity";

    r.invertible = re_b_zero;
    r.citations["invertible"] = "invertibility criterion: Re(b) = 0";

    r.unitary = a_one && re_b_zero;
    r.citations["unitary"] = "isometry (a = 1) combined with invertibility (Re(b) = 0)";

    r.normal = a_one || re_b_zero;
    r.citations["normal"] = "normality criterion: a = 1 or Re(b) = 0";

    if (r.invertible) {
        r.expansive = a_one ? Tri::no : Tri::yes;
        r.uniformly_expansive = r.expansive;
        r.citations["expansive"] = "expansivity criterion for invertible symbols: a != 1";
    } else {
        r.expansive = Tri::not_applicable;
        r.uniformly_expansive = Tri::not_applicable;
        r.citations["expansive"] = "expansivity is defined only for invertible operators";
    }
    r.citations["uniformly_expansive"] = r.citations["expansive"];

    r.positive_expansive = a_below;
    r.uniformly_positive_expansive = a_below;
    r.citations["positive_expansive"] = "positive expansivity criterion: a in (0,1)";
    r.citations["uniformly_positive_expansive"] =
        "uniform and plain positive expansivity coincide for affine symbols";

    r.li_yorke = false;
    r.citations["li_yorke"] = "affine symbols admit no irregular vectors";

    r.positive_shadowing = (a_below && re_b_zero) || a_above;
    r.citations["positive_shadowing"] =
        "shadowing characterization: (a in (0,1) and Re(b) = 0) or a > 1";

    r.cesaro_bounded = !a_below;  // a >= 1
    r.citations["cesaro_bounded"] = "absolute Cesaro boundedness criterion: a >= 1";

    r.spectrum = spectrum(phi, weight);
    if (a_one && phi.translation() == Complex(0.0, 0.0)) {
        r.citations["spectrum"] = "identity symbol: sigma = {1} (trivial extension)";
    } else if (a_one) {
        r.citations["spectrum"] = re_b_zero
                                      ? "parabolic symbol with imaginary b: sigma = unit circle"
                                      : "parabolic symbol with Re(b) > 0: decaying spiral joined with 0";
    } else {
        r.citations["spectrum"] = re_b_zero
                                      ? "dilation-type symbol with imaginary b: circle of radius a^-((alpha+2)/2)"
                                      : "dilation-type symbol with Re(b) > 0: closed disc of radius a^-((alpha+2)/2)";
    }

    r.hyperbolic = is_hyperbolic(r.spectrum);
    r.citations["hyperbolic"] = "spectrum disjoint from the unit circle";
    return r;
}

}  // namespace bergman
