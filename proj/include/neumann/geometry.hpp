#pragma once

// Point clouds for bounded domains: diameter, minimum enclosing ball, and
// the domain descriptions (polygons, boundary samplers, named examples).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <list>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "neumann/error.hpp"

namespace neumann {

using Point = Eigen::VectorXd;
using Point2 = Eigen::Vector2d;

inline constexpr int kMinDimension = 2;
inline constexpr int kMaxDimension = 8;

struct Ball {
    Point center;
    double radius = 0.0;

    bool contains(const Point& p, double tol = 1e-9) const { return (p - center).norm() <= radius + tol; }
};

namespace detail {

inline int common_dimension(std::span<const Point> points, const char* fn) {
    const auto dim = points.front().size();
    if (dim < kMinDimension || dim > kMaxDimension)
        throw PreconditionError(std::string(fn) + ": dimension must be in [2, 8], got " + std::to_string(dim));
    for (const auto& p : points) {
        if (p.size() != dim) throw PreconditionError(std::string(fn) + ": points have mixed dimensions");
        if (!p.allFinite()) throw PreconditionError(std::string(fn) + ": non-finite coordinate");
    }
    return static_cast<int>(dim);
}

// Smallest ball with every support point on its boundary. The center lies in
// the affine hull: c = s0 + Q lambda with 2 Q^T Q lambda = |q_j|^2.
// Returns nullopt when the support is affinely dependent.
inline std::optional<Ball> circumball(std::span<const Point> points, const std::vector<int>& support) {
    if (support.empty()) return std::nullopt;
    const Point& s0 = points[static_cast<std::size_t>(support[0])];
    if (support.size() == 1) return Ball{s0, 0.0};
    const auto k = static_cast<Eigen::Index>(support.size() - 1);
    Eigen::MatrixXd q(s0.size(), k);
    for (Eigen::Index j = 0; j < k; ++j) q.col(j) = points[static_cast<std::size_t>(support[static_cast<std::size_t>(j + 1)])] - s0;
    const Eigen::MatrixXd gram = 2.0 * q.transpose() * q;
    const Eigen::VectorXd rhs = q.colwise().squaredNorm().transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    lu.setThreshold(1e-12);
    if (lu.rank() < k) return std::nullopt;
    const Eigen::VectorXd lambda = lu.solve(rhs);
    Point center = s0 + q * lambda;
    double radius = 0.0;
    for (int idx : support) radius = std::max(radius, (points[static_cast<std::size_t>(idx)] - center).norm());
    return Ball{std::move(center), radius};
}

struct MoveToFront {
    std::span<const Point> points;
    int dim;
    double tol;

    bool inside(const std::optional<Ball>& ball, const Point& p) const {
        return ball && (p - ball->center).norm() <= ball->radius + tol;
    }

    // Smallest ball enclosing the points in [begin, end) of `order` with
    // `support` on the boundary. Recursion depth is bounded by dim + 1.
    std::optional<Ball> solve(std::list<int>& order, std::list<int>::iterator end, std::vector<int>& support) const {
        std::optional<Ball> ball = circumball(points, support);
        if (static_cast<int>(support.size()) == dim + 1) return ball;
        for (auto it = order.begin(); it != end;) {
            const auto next = std::next(it);
            if (!inside(ball, points[static_cast<std::size_t>(*it)])) {
                support.push_back(*it);
                if (circumball(points, support)) {
                    ball = solve(order, it, support);
                    support.pop_back();
                    order.splice(order.begin(), order, it);
                } else {
                    support.pop_back();
                }
            }
            it = next;
        }
        return ball;
    }
};

inline double cloud_scale(std::span<const Point> points) {
    double scale = 0.0;
    for (const auto& p : points) scale = std::max(scale, p.cwiseAbs().maxCoeff());
    return std::max(scale, 1.0);
}

} // namespace detail

// Maximum pairwise distance over the cloud (exact O(m^2) scan).
inline double diameter(std::span<const Point> points) {
    if (points.size() < 2) throw PreconditionError("diameter: need at least 2 points");
    detail::common_dimension(points, "diameter");
    double best = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) best = std::max(best, (points[i] - points[j]).squaredNorm());
    return std::sqrt(best);
}

inline constexpr std::uint64_t kDefaultSeed = 20180806;

// Minimum enclosing ball, Welzl's randomized incremental algorithm in its
// move-to-front form. The input order is shuffled with a fixed-seed
// generator so results are reproducible.
inline Ball min_enclosing_ball(std::span<const Point> points, std::uint64_t seed = kDefaultSeed) {
    if (points.empty()) throw PreconditionError("min_enclosing_ball: empty point set");
    const int dim = detail::common_dimension(points, "min_enclosing_ball");
    const double tol = 1e-12 * detail::cloud_scale(points);

    std::vector<int> idx(points.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::mt19937_64 rng(seed);
    for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[static_cast<std::size_t>(rng() % i)]);

    std::list<int> order(idx.begin(), idx.end());
    std::vector<int> support;
    const detail::MoveToFront mtf{points, dim, tol};
    std::optional<Ball> ball = mtf.solve(order, order.end(), support);
    // Passes repeat until stable; a single pass suffices except when
    // rounding rejected a support point.
    for (int pass = 0; pass < 4 && ball; ++pass) {
        const bool covered = std::all_of(points.begin(), points.end(), [&](const Point& p) { return mtf.inside(ball, p); });
        if (covered) return *ball;
        support.clear();
        ball = mtf.solve(order, order.end(), support);
    }
    throw NumericalError("min_enclosing_ball: failed to cover the point set");
}

// Planar convexity of a closed vertex loop (either orientation).
inline bool is_convex_loop(std::span<const Point> loop, double tol = 1e-12) {
    if (loop.size() < 3 || loop.front().size() != 2) return false;
    int sign = 0;
    const std::size_t m = loop.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point2 a = loop[i];
        const Point2 b = loop[(i + 1) % m];
        const Point2 c = loop[(i + 2) % m];
        const Point2 e1 = b - a;
        const Point2 e2 = c - b;
        const double cross = e1.x() * e2.y() - e1.y() * e2.x();
        if (std::abs(cross) <= tol * e1.norm() * e2.norm()) continue;
        const int s = cross > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        else if (s != sign) return false;
    }
    return true;
}

inline double signed_area(std::span<const Point> loop) {
    double twice = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Point& a = loop[i];
        const Point& b = loop[(i + 1) % loop.size()];
        twice += a[0] * b[1] - a[1] * b[0];
    }
    return 0.5 * twice;
}

namespace detail {

inline double orient(const Point2& a, const Point2& b, const Point2& c) {
    return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

inline bool segments_cross(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    const double o1 = orient(a, b, c);
    const double o2 = orient(a, b, d);
    const double o3 = orient(c, d, a);
    const double o4 = orient(c, d, b);
    if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return true;
    const auto on_segment = [](const Point2& p, const Point2& q, const Point2& r) {
        return std::min(p.x(), q.x()) <= r.x() && r.x() <= std::max(p.x(), q.x()) && std::min(p.y(), q.y()) <= r.y() &&
               r.y() <= std::max(p.y(), q.y());
    };
    return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) || (o3 == 0 && on_segment(c, d, a)) ||
           (o4 == 0 && on_segment(c, d, b));
}

} // namespace detail

// True when no two non-adjacent edges of the closed loop meet.
inline bool is_simple_polygon(std::span<const Point> loop) {
    const std::size_t m = loop.size();
    if (m < 3) return false;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (j == i || (j + 1) % m == i || (i + 1) % m == j) continue;
            if (detail::segments_cross(loop[i], loop[(i + 1) % m], loop[j], loop[(j + 1) % m])) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Domain descriptions

enum class DomainKind { polygon, sampler, named };

// Mikhlin-type extension data: W^1_2 extension from the domain scaled by 1
// into the domain scaled by R. Star-shape moduli default to the ball.
struct MikhlinParameters {
    double R = 2.0;
    double m1 = 1.0;
    double m2 = 1.0;
    double m3 = 0.0;
};

struct DomainSpec {
    DomainKind kind = DomainKind::polygon;
    int dim = 2;
    std::vector<Point> vertices;
    std::string name;
    int samples = 256;
    std::optional<Point> symmetry_center;
    std::optional<double> qc_coefficient; // K >= 1
    std::optional<double> star_beta;      // 0 <= beta < 1
    std::optional<double> spiral_gamma;   // |gamma| < beta pi / 2
    std::optional<double> extension_norm_sq;
    std::optional<MikhlinParameters> mikhlin;
    std::optional<Point> anchor; // fan center for triangulation

    bool planar() const { return dim == 2; }
    void validate() const;
};

// Boundary of a planar domain as a closed curve t in [0, 1) -> R^2 with the
// parameters of the boundary samples. Consecutive samples are joined by the
// curve piece between their parameters, so the edge midpoint on the exact
// boundary is at(mid-parameter).
struct BoundaryCurve {
    std::function<Point2(double)> at;
    std::vector<double> params;

    Point2 midpoint(std::size_t i) const {
        const double a = params[i];
        const double b = i + 1 < params.size() ? params[i + 1] : 1.0;
        return at(0.5 * (a + b));
    }
};

inline const std::vector<std::string>& named_domain_names() {
    static const std::vector<std::string> names = {"bowtie", "half_disc", "unit_disc", "tan_disc", "unit_square"};
    return names;
}

inline const std::vector<std::string>& sampler_names() {
    static const std::vector<std::string> names = {"unit_disc", "half_disc", "tan_disc"};
    return names;
}

inline double bowtie_qc_coefficient() { return 0.5 * (3.0 + std::sqrt(5.0)); }

inline std::vector<Point> bowtie_vertices() {
    // 1/2 - |x| < y < 3/2 - |x|, |x| < 1/2, counter-clockwise
    const double raw[6][2] = {{-0.5, 0.0}, {0.0, 0.5}, {0.5, 0.0}, {0.5, 1.0}, {0.0, 1.5}, {-0.5, 1.0}};
    std::vector<Point> out;
    for (const auto& r : raw) out.push_back(Point2(r[0], r[1]));
    return out;
}

inline std::vector<Point> unit_square_vertices() {
    return {Point2(0, 0), Point2(1, 0), Point2(1, 1), Point2(0, 1)};
}

namespace detail {

inline bool contains_name(const std::vector<std::string>& names, const std::string& name) {
    return std::find(names.begin(), names.end(), name) != names.end();
}

inline std::string joined(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
    return out;
}

inline BoundaryCurve polygon_curve(const std::vector<Point>& vertices) {
    const auto m = vertices.size();
    std::vector<Point2> v;
    for (const auto& p : vertices) v.emplace_back(p[0], p[1]);
    BoundaryCurve curve;
    curve.at = [v, m](double t) -> Point2 {
        t -= std::floor(t);
        const double s = t * static_cast<double>(m);
        const auto i = std::min(static_cast<std::size_t>(s), m - 1);
        const double f = s - static_cast<double>(i);
        return (1.0 - f) * v[i] + f * v[(i + 1) % m];
    };
    for (std::size_t i = 0; i < m; ++i) curve.params.push_back(static_cast<double>(i) / static_cast<double>(m));
    return curve;
}

inline BoundaryCurve sampler_curve(const std::string& name, int m) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    BoundaryCurve curve;
    if (name == "unit_disc") {
        curve.at = [](double t) -> Point2 { return {std::cos(two_pi * t), std::sin(two_pi * t)}; };
        for (int i = 0; i < m; ++i) curve.params.push_back(static_cast<double>(i) / m);
    } else if (name == "tan_disc") {
        // w = tan(z) on |z| = 1
        curve.at = [](double t) -> Point2 {
            const std::complex<double> w = std::tan(std::polar(1.0, two_pi * t));
            return {w.real(), w.imag()};
        };
        for (int i = 0; i < m; ++i) curve.params.push_back(static_cast<double>(i) / m);
    } else if (name == "half_disc") {
        // Lower half of the unit disc: arc from (-1,0) through (0,-1) to
        // (1,0), then the diameter back. Parameter is proportional to arc
        // length.
        const double split = std::numbers::pi / (std::numbers::pi + 2.0);
        curve.at = [split](double t) -> Point2 {
            t -= std::floor(t);
            if (t <= split) {
                const double theta = std::numbers::pi * (1.0 + t / split);
                return {std::cos(theta), std::sin(theta)};
            }
            return {1.0 - 2.0 * (t - split) / (1.0 - split), 0.0};
        };
        const int on_arc = std::max(2, static_cast<int>(std::lround(m * split)));
        const int on_diameter = std::max(1, m - on_arc);
        for (int i = 0; i < on_arc; ++i) curve.params.push_back(split * i / on_arc);
        for (int j = 0; j < on_diameter; ++j) curve.params.push_back(split + (1.0 - split) * j / on_diameter);
    } else {
        throw ConfigError("unknown sampler '" + name + "'; valid: " + joined(sampler_names()));
    }
    return curve;
}

} // namespace detail

inline void DomainSpec::validate() const {
    if (dim < kMinDimension || dim > kMaxDimension) throw ConfigError("domain dim must be in [2, 8]");
    if (qc_coefficient && !(*qc_coefficient >= 1.0)) throw ConfigError("K must be >= 1");
    if (star_beta && !(*star_beta >= 0.0 && *star_beta < 1.0)) throw ConfigError("beta must lie in [0, 1)");
    if (spiral_gamma && !star_beta) throw ConfigError("gamma requires beta");
    if (spiral_gamma && !(std::abs(*spiral_gamma) < *star_beta * std::numbers::pi / 2.0))
        throw ConfigError("|gamma| must be < beta pi / 2");
    if (extension_norm_sq && !(*extension_norm_sq >= 1.0)) throw ConfigError("extension norm_sq must be >= 1");
    if (mikhlin) {
        if (dim <= 2) throw ConfigError("Mikhlin extension data requires dim > 2");
        if (!(mikhlin->R > 1.0)) throw ConfigError("Mikhlin R must be > 1");
        if (!(mikhlin->m1 > 0.0) || !(mikhlin->m2 >= mikhlin->m1) || !(mikhlin->m3 >= 0.0))
            throw ConfigError("Mikhlin moduli must satisfy 0 < m1 <= m2, m3 >= 0");
    }
    if (symmetry_center && symmetry_center->size() != dim) throw ConfigError("symmetry_center dimension mismatch");
    if (anchor && (anchor->size() != 2 || dim != 2)) throw ConfigError("anchor must be a planar point");
    switch (kind) {
    case DomainKind::polygon: {
        if (vertices.size() < (dim == 2 ? 3u : 2u)) throw ConfigError("polygon needs at least 3 vertices");
        for (const auto& v : vertices) {
            if (v.size() != dim) throw ConfigError("vertex dimension does not match dim");
            if (!v.allFinite()) throw ConfigError("vertex has non-finite coordinate");
        }
        if (dim == 2 && !is_simple_polygon(vertices)) throw ConfigError("polygon is not simple");
        break;
    }
    case DomainKind::sampler:
        if (dim != 2) throw ConfigError("samplers are planar");
        if (!detail::contains_name(sampler_names(), name))
            throw ConfigError("unknown sampler '" + name + "'; valid: " + detail::joined(sampler_names()));
        if (samples < 3) throw ConfigError("samples must be >= 3");
        break;
    case DomainKind::named:
        if (!detail::contains_name(named_domain_names(), name))
            throw ConfigError("unknown named domain '" + name + "'; valid: " + detail::joined(named_domain_names()));
        if (samples < 3) throw ConfigError("samples must be >= 3");
        break;
    }
}

// Named examples carry their known metadata: the bowtie its piecewise-affine
// coefficient (3+sqrt5)/2, the disc K = 1, the half-disc the reflection
// norm_sq = 2, the tan-disc beta = 1/2. Symmetry centers are declared for the
// centrally symmetric ones only.
inline DomainSpec named_domain(const std::string& name, int samples = 256) {
    DomainSpec spec;
    spec.kind = DomainKind::named;
    spec.name = name;
    spec.samples = samples;
    if (name == "bowtie") {
        spec.vertices = bowtie_vertices();
        spec.qc_coefficient = bowtie_qc_coefficient();
        spec.anchor = Point2(0.0, 1.0);
    } else if (name == "unit_disc") {
        spec.qc_coefficient = 1.0;
        spec.symmetry_center = Point2(0.0, 0.0);
        spec.anchor = Point2(0.0, 0.0);
    } else if (name == "half_disc") {
        spec.extension_norm_sq = 2.0;
        spec.anchor = Point2(0.0, -0.4);
    } else if (name == "tan_disc") {
        spec.star_beta = 0.5;
        spec.symmetry_center = Point2(0.0, 0.0);
        spec.anchor = Point2(0.0, 0.0);
    } else if (name == "unit_square") {
        spec.vertices = unit_square_vertices();
        spec.symmetry_center = Point2(0.5, 0.5);
        spec.anchor = Point2(0.5, 0.5);
    } else {
        throw ConfigError("unknown named domain '" + name + "'; valid: " + detail::joined(named_domain_names()));
    }
    return spec;
}

// Closed boundary curve of a planar domain (polygon edges are linear pieces).
inline BoundaryCurve boundary_curve(const DomainSpec& spec, std::optional<int> m = std::nullopt) {
    if (!spec.planar()) throw ConfigError("boundary_curve: planar domain required");
    const int count = m.value_or(spec.samples);
    if (spec.kind == DomainKind::polygon) return detail::polygon_curve(spec.vertices);
    if (spec.kind == DomainKind::named && !spec.vertices.empty()) return detail::polygon_curve(spec.vertices);
    if (count < 3) throw PreconditionError("boundary sampling needs m >= 3");
    return detail::sampler_curve(spec.name, count);
}

// Deterministic point cloud: polygon vertices, or m boundary samples.
inline std::vector<Point> sample_domain(const DomainSpec& spec, std::optional<int> m = std::nullopt) {
    if (spec.kind == DomainKind::polygon && !spec.planar()) return spec.vertices;
    const BoundaryCurve curve = boundary_curve(spec, m);
    std::vector<Point> out;
    out.reserve(curve.params.size());
    for (double t : curve.params) out.emplace_back(curve.at(t));
    return out;
}

// Positively oriented copy of a planar polygon domain; trailing duplicate of
// the first vertex removed.
inline DomainSpec normalized(DomainSpec spec) {
    if (spec.kind == DomainKind::polygon && spec.vertices.size() > 3 &&
        (spec.vertices.front() - spec.vertices.back()).norm() == 0.0)
        spec.vertices.pop_back();
    if (spec.planar() && !spec.vertices.empty() && signed_area(spec.vertices) < 0.0)
        std::reverse(spec.vertices.begin(), spec.vertices.end());
    return spec;
}

} // namespace neumann
