#pragma once

// Coefficients of quasiconformality for planar maps.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "neumann/error.hpp"

namespace neumann {

enum class QcSource { affine, piecewise, star_beta, spiral_beta, user };

inline std::string_view to_string(QcSource s) {
    switch (s) {
    case QcSource::affine: return "affine";
    case QcSource::piecewise: return "piecewise";
    case QcSource::star_beta: return "star_beta";
    case QcSource::spiral_beta: return "spiral_beta";
    case QcSource::user: return "user";
    }
    return "unknown";
}

class QcCoefficient {
public:
    QcCoefficient(double value, QcSource source) : value_(value), source_(source) {
        if (!(value >= 1.0) || !std::isfinite(value))
            throw DomainError("coefficient of quasiconformality must be finite and >= 1, got " + std::to_string(value));
    }
    static QcCoefficient user(double value) { return {value, QcSource::user}; }

    double value() const { return value_; }
    QcSource source() const { return source_; }

private:
    double value_;
    QcSource source_;
};

struct AffinePiece {
    Eigen::Matrix2d jacobian;
    std::string region_label;
};

// K = lambda_max(D D^T) / det D for an orientation-preserving affine map.
// The larger eigenvalue of the symmetric 2x2 matrix A = D D^T is
// (tr + sqrt((a - c)^2 + 4 b^2)) / 2, which stays accurate when the two
// eigenvalues nearly coincide.
inline QcCoefficient affine_qc_coefficient(const AffinePiece& piece) {
    const Eigen::Matrix2d& d = piece.jacobian;
    if (!d.allFinite()) throw DomainError("affine_qc_coefficient: non-finite Jacobian");
    const double det = d.determinant();
    if (!(det > 0.0))
        throw DomainError("affine_qc_coefficient: Jacobian must be orientation preserving (det > 0)" +
                          (piece.region_label.empty() ? std::string() : " on region " + piece.region_label));
    const Eigen::Matrix2d a = d * d.transpose();
    const double half_gap = std::hypot(0.5 * (a(0, 0) - a(1, 1)), a(0, 1));
    const double lambda_max = 0.5 * (a(0, 0) + a(1, 1)) + half_gap;
    // lambda_max >= sqrt(lambda_max lambda_min) = det; guard rounding below 1
    return {std::max(1.0, lambda_max / det), QcSource::affine};
}

inline QcCoefficient piecewise_qc_coefficient(std::span<const AffinePiece> pieces) {
    if (pieces.empty()) throw PreconditionError("piecewise_qc_coefficient: no pieces");
    double k = 1.0;
    for (const auto& p : pieces) k = std::max(k, affine_qc_coefficient(p).value());
    return {k, QcSource::piecewise};
}

namespace detail {

inline double cot_squared_quarter(double beta) {
    const double t = std::tan((1.0 - beta) * std::numbers::pi / 4.0);
    return 1.0 / (t * t);
}

} // namespace detail

// beta-star-shaped conformal images of the disc: K = cot^2((1 - beta) pi / 4).
inline QcCoefficient star_shaped_K(double beta) {
    if (!(beta >= 0.0 && beta < 1.0)) throw DomainError("star_shaped_K: beta must lie in [0, 1)");
    return {std::max(1.0, detail::cot_squared_quarter(beta)), QcSource::star_beta};
}

// beta-spiral-shaped domains share the star-shaped coefficient; gamma only
// has to satisfy |gamma| < beta pi / 2.
inline QcCoefficient spiral_shaped_K(double beta, double gamma) {
    if (!(beta >= 0.0 && beta < 1.0)) throw DomainError("spiral_shaped_K: beta must lie in [0, 1)");
    if (!(std::abs(gamma) < beta * std::numbers::pi / 2.0))
        throw DomainError("spiral_shaped_K: |gamma| must be < beta pi / 2");
    return {std::max(1.0, detail::cot_squared_quarter(beta)), QcSource::spiral_beta};
}

// Jacobians of the piecewise-affine map taking the unit square onto the
// bowtie: shear up on the left strip, shear down on the right, identity
// outside.
inline std::vector<AffinePiece> bowtie_map_pieces() {
    Eigen::Matrix2d left, right;
    left << 1, 0, 1, 1;
    right << 1, 0, -1, 1;
    return {{left, "S-"}, {right, "S+"}, {Eigen::Matrix2d::Identity(), "outside S"}};
}

} // namespace neumann
