#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace bergman {

using Complex = std::complex<double>;

// Shared numerical policy.  The classification results dichotomize on
// Re(b) = 0 and a = 1, so boundary detection needs hard thresholds.
inline constexpr double kReBoundaryTol = 1e-12;  // |Re(b)| below this is treated as 0
inline constexpr double kPointRealMin = 1e-14;   // kernel points require Re(w) > this
inline constexpr double kPruneDefaultTol = 1e-13;
inline constexpr double kIllConditionedThreshold = 1e12;
inline constexpr long kIterateCap = 1000000;     // iterate() refuses larger n

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct WeightMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotInvertible : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivergentIntegral : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct QuadratureNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RegimeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ZeroAtTarget : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoInteriorFixedPoint : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ZeroImage : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace bergman
