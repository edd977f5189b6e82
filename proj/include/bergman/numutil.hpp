#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "bergman/types.hpp"

namespace bergman {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log|expm1(x)|, stable over the whole double range (including x where
/// expm1 overflows).  Returns -inf for x == 0.
inline double log_abs_expm1(double x) {
    if (x == 0.0) return kNegInf;
    if (x > 0.0) return x + std::log1p(-std::exp(-x));  // e^x-1 = e^x(1-e^-x)
    return std::log(-std::expm1(x));                    // |e^x-1| in (0,1]
}

/// Incremental log(sum of exp(l_i)).  Accepts -inf terms (ignored).
class LogSumExp {
public:
    void add(double l) {
        if (l == kNegInf) return;
        if (l <= max_) {
            sum_ += std::exp(l - max_);
        } else {
            sum_ = sum_ * std::exp(max_ - l) + 1.0;
            max_ = l;
        }
    }
    double value() const {
        if (max_ == kNegInf) return kNegInf;
        return max_ + std::log(sum_);
    }

private:
    double max_ = kNegInf;
    double sum_ = 0.0;
};

/// Deterministic uniform generator.  Mapping from raw 64-bit output to
/// doubles is done by hand so that streams do not depend on the standard
/// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double unit() {  // in [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    Complex complex_in(double re_lo, double re_hi, double im_lo, double im_hi) {
        double re = uniform(re_lo, re_hi);
        double im = uniform(im_lo, im_hi);
        return {re, im};
    }
    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

}  // namespace bergman
