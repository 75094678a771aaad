#pragma once

// Independent reference computations used only by the test suites.

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

struct BallRef {
    Eigen::VectorXd center;
    double radius = std::numeric_limits<double>::infinity();
};

inline bool covers(const BallRef& b, const std::vector<Eigen::VectorXd>& pts) {
    for (const auto& p : pts)
        if ((p - b.center).norm() > b.radius * (1.0 + 1e-10) + 1e-12) return false;
    return true;
}

// Circumcenter of a triangle in any dimension by Cramer's rule on
// [u.u u.v; u.v v.v] [a; b] = [u.u/2; v.v/2].
inline bool triangle_ball(const Eigen::VectorXd& p, const Eigen::VectorXd& q, const Eigen::VectorXd& r, BallRef& out) {
    const Eigen::VectorXd u = q - p;
    const Eigen::VectorXd v = r - p;
    const double uu = u.dot(u), uv = u.dot(v), vv = v.dot(v);
    const double det = uu * vv - uv * uv;
    if (std::abs(det) < 1e-14 * uu * vv) return false;
    const double a = (0.5 * uu * vv - 0.5 * vv * uv) / det;
    const double b = (0.5 * vv * uu - 0.5 * uu * uv) / det;
    out.center = p + a * u + b * v;
    out.radius = (out.center - p).norm();
    return true;
}

// Circumsphere of a tetrahedron in 3D by Cramer's rule.
inline bool tetra_ball(const Eigen::VectorXd& p, const Eigen::VectorXd& q, const Eigen::VectorXd& r, const Eigen::VectorXd& s,
                       BallRef& out) {
    Eigen::Matrix3d a;
    a.row(0) = (q - p).transpose();
    a.row(1) = (r - p).transpose();
    a.row(2) = (s - p).transpose();
    const Eigen::Vector3d rhs(0.5 * (q - p).squaredNorm(), 0.5 * (r - p).squaredNorm(), 0.5 * (s - p).squaredNorm());
    const double det = a.determinant();
    if (std::abs(det) < 1e-14) return false;
    Eigen::Vector3d x;
    for (int c = 0; c < 3; ++c) {
        Eigen::Matrix3d m = a;
        m.col(c) = rhs;
        x[c] = m.determinant() / det;
    }
    out.center = p + x;
    out.radius = x.norm();
    return true;
}

// Smallest covering ball among all pair, triple (and in 3D quadruple)
// candidate balls. O(m^4) or O(m^5) in 3D; intended for m <= 30.
inline BallRef brute_force_ball(const std::vector<Eigen::VectorXd>& pts) {
    BallRef best;
    const auto consider = [&](const BallRef& b) {
        if (b.radius < best.radius && covers(b, pts)) best = b;
    };
    const std::size_t m = pts.size();
    if (m == 1) return {pts[0], 0.0};
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) consider({0.5 * (pts[i] + pts[j]), 0.5 * (pts[i] - pts[j]).norm()});
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) {
                BallRef b;
                if (triangle_ball(pts[i], pts[j], pts[k], b)) consider(b);
            }
    if (pts[0].size() == 3) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                for (std::size_t k = j + 1; k < m; ++k)
                    for (std::size_t l = k + 1; l < m; ++l) {
                        BallRef b;
                        if (tetra_ball(pts[i], pts[j], pts[k], pts[l], b)) consider(b);
                    }
    }
    return best;
}

inline std::vector<Eigen::VectorXd> random_cloud(std::mt19937_64& rng, int dim, int m) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < m; ++i) {
        Eigen::VectorXd p(dim);
        for (int d = 0; d < dim; ++d) p[d] = u(rng);
        pts.push_back(p);
    }
    return pts;
}

// Random rotation via QR of a Gaussian matrix, sign-fixed to det +1.
inline Eigen::MatrixXd random_rotation(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return q;
}

// Spherical Bessel closed forms, orders l + 1/2 for l = 0, 1, 2.
inline double j_half_closed(int l, double x) {
    const double s = std::sqrt(2.0 / (std::numbers::pi * x));
    switch (l) {
    case 0: return s * std::sin(x);
    case 1: return s * (std::sin(x) / x - std::cos(x));
    case 2: return s * ((3.0 / (x * x) - 1.0) * std::sin(x) - 3.0 * std::cos(x) / x);
    }
    return NAN;
}

inline double i_half_closed(int l, double x) {
    const double s = std::sqrt(2.0 / (std::numbers::pi * x));
    switch (l) {
    case 0: return s * std::sinh(x);
    case 1: return s * (std::cosh(x) - std::sinh(x) / x);
    case 2: return s * ((3.0 / (x * x) + 1.0) * std::sinh(x) - 3.0 * std::cosh(x) / x);
    }
    return NAN;
}

inline double k_half_closed(int l, double x) {
    const double s = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x);
    switch (l) {
    case 0: return s;
    case 1: return s * (1.0 + 1.0 / x);
    case 2: return s * (1.0 + 3.0 / x + 3.0 / (x * x));
    }
    return NAN;
}

} // namespace oracle
