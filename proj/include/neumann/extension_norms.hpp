#pragma once

// Norms of Sobolev extension operators, exact or as upper bounds.
//
// Mikhlin's ball and star-shaped formulas are stated for W^1_2 norms; their
// values are kept verbatim and tagged with norm type "W1_2" so a consumer
// feeding them into the L^1_2 spectral bound can see the mismatch.

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "neumann/error.hpp"
#include "neumann/qc_maps.hpp"
#include "neumann/special_functions.hpp"

namespace neumann {

enum class EstimateKind { exact, upper_bound };

inline std::string_view to_string(EstimateKind k) { return k == EstimateKind::exact ? "exact" : "upper_bound"; }

struct ExtensionNormEstimate {
    double value_sq = 1.0; // squared operator norm
    EstimateKind kind = EstimateKind::exact;
    std::string source;
    std::string norm_type = "L1_2";

    double norm() const { return std::sqrt(value_sq); }

    static ExtensionNormEstimate make(double value_sq, EstimateKind kind, std::string source, std::string norm_type = "L1_2") {
        if (!std::isfinite(value_sq) || value_sq < 1.0)
            throw DomainError("extension norm squared must be finite and >= 1, got " + std::to_string(value_sq));
        return {value_sq, kind, std::move(source), std::move(norm_type)};
    }
};

enum class BesselPath { automatic, generic, half_integer };

namespace detail {

struct ModifiedBessel {
    BesselPath path;
    double alpha;

    bool half_integer() const { return path == BesselPath::half_integer; }
    int l() const { return static_cast<int>(alpha - 0.5 + 0.25); } // alpha = l + 1/2
    double i(double shift, double x) const {
        return half_integer() ? bessel_i_half_integer(l() + static_cast<int>(shift), x) : bessel_i(alpha + shift, x);
    }
    double k(double shift, double x) const {
        return half_integer() ? bessel_k_half_integer(l() + static_cast<int>(shift), x) : bessel_k(alpha + shift, x);
    }
};

} // namespace detail

// Squared norm of the W^1_2 extension from the unit ball to the concentric
// ball of radius R in R^n, alpha = (n - 2)/2:
//   1 + I_a(1)/I_{a+1}(1) * [I_a(R) K_{a+1}(1) + K_a(R) I_{a+1}(1)]
//                         / [I_a(R) K_a(1) - K_a(R) I_a(1)].
// Odd n (half-integer alpha) uses the sinh/cosh closed forms unless the
// generic route is requested.
inline ExtensionNormEstimate mikhlin_ball_norm_sq(int n, double R, BesselPath path = BesselPath::automatic) {
    if (n <= 2) throw DomainError("mikhlin_ball_norm_sq: requires n > 2, got " + std::to_string(n));
    if (!std::isfinite(R) || !(R > 1.0)) throw DomainError("mikhlin_ball_norm_sq: requires R > 1");
    const double alpha = 0.5 * (n - 2);
    if (path == BesselPath::automatic) path = (n % 2 == 1) ? BesselPath::half_integer : BesselPath::generic;
    if (path == BesselPath::half_integer && n % 2 == 0)
        throw PreconditionError("mikhlin_ball_norm_sq: half-integer route needs odd n");
    const detail::ModifiedBessel b{path, alpha};
    const double numerator = b.i(0, R) * b.k(1, 1.0) + b.k(0, R) * b.i(1, 1.0);
    const double denominator = b.i(0, R) * b.k(0, 1.0) - b.k(0, R) * b.i(0, 1.0);
    if (!(denominator > 0.0)) throw NumericalError("mikhlin_ball_norm_sq: vanishing denominator");
    const double value = 1.0 + b.i(0, 1.0) / b.i(1, 1.0) * numerator / denominator;
    return ExtensionNormEstimate::make(value, EstimateKind::exact, "mikhlin_ball", "W1_2");
}

// Radial function data of a star-shaped domain {rho < u(theta)} about the
// unit sphere: m1 = min u, m2 = max u, m3 = sup |grad u|.
struct StarShapeData {
    double m1 = 1.0;
    double m2 = 1.0;
    double m3 = 0.0;
    int n = 3;
    double R = 2.0;

    void validate() const {
        if (!(m1 > 0.0)) throw DomainError("StarShapeData: m1 must be > 0");
        if (!(m2 >= m1)) throw DomainError("StarShapeData: m2 must be >= m1");
        if (!(m3 >= 0.0)) throw DomainError("StarShapeData: m3 must be >= 0");
        if (n <= 2) throw DomainError("StarShapeData: n must be > 2");
        if (!(R > 1.0)) throw DomainError("StarShapeData: R must be > 1");
    }
    double n1_sq() const {
        return std::max({(m1 * m1 + (n - 1) * m3 * m3) / (m1 * m1 * m1 * m1), 2.0 / (m1 * m1), 1.0});
    }
    double n2_sq() const { return std::max({m2 * m2 + 2.0 * (n - 1) * m3 * m3, 2.0 * m2 * m2, 1.0}); }
};

// ||E*||^2 <= 1 + (m2/m1)^2 (N1 N2)^2 (||E_R||^2 - 1).
inline ExtensionNormEstimate mikhlin_star_norm_sq_bound(const StarShapeData& data) {
    data.validate();
    const double ball = mikhlin_ball_norm_sq(data.n, data.R).value_sq;
    const double ratio = data.m2 / data.m1;
    const double value = 1.0 + ratio * ratio * data.n1_sq() * data.n2_sq() * (ball - 1.0);
    return ExtensionNormEstimate::make(value, EstimateKind::upper_bound, "mikhlin_star", "W1_2");
}

// Reflection-based extension of a K-quasidisc: ||E|| <= 1 + K.
inline ExtensionNormEstimate quasidisc_norm(const QcCoefficient& k) {
    const double norm = 1.0 + k.value();
    return ExtensionNormEstimate::make(norm * norm, EstimateKind::upper_bound, "quasidisc");
}

// Even reflection across the flat face of a half-ball doubles the Dirichlet
// energy, so ||E|| = sqrt(2) in every dimension.
inline ExtensionNormEstimate half_ball_reflection_norm() {
    return ExtensionNormEstimate::make(2.0, EstimateKind::exact, "half_ball_reflection");
}

} // namespace neumann
