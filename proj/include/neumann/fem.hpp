#pragma once

// Conforming P1 finite elements for the Neumann Laplacian on planar
// star-shaped domains. Galerkin eigenvalues over-approximate the exact ones,
// which makes the discrete mu_1 a one-sided check on lower bounds.

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "neumann/bounds.hpp"
#include "neumann/error.hpp"
#include "neumann/geometry.hpp"

namespace neumann {

inline constexpr int kMaxRefinement = 8;
inline constexpr int kMaxDofs = 20000;
inline constexpr int kMaxEigenvalues = 10;
inline constexpr double kMinTriangleArea = 1e-14;

using Triangle = std::array<int, 3>;

struct Mesh {
    std::vector<Point2> vertices;
    std::vector<Triangle> triangles;
    std::vector<bool> boundary;

    int dof_count() const { return static_cast<int>(vertices.size()); }

    double triangle_area(std::size_t t) const {
        const auto& [a, b, c] = triangles[t];
        const Point2 e1 = vertices[static_cast<std::size_t>(b)] - vertices[static_cast<std::size_t>(a)];
        const Point2 e2 = vertices[static_cast<std::size_t>(c)] - vertices[static_cast<std::size_t>(a)];
        return 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
    }

    double area() const {
        double total = 0.0;
        for (std::size_t t = 0; t < triangles.size(); ++t) total += triangle_area(t);
        return total;
    }

    // Longest edge over all elements.
    double mesh_size() const {
        double h = 0.0;
        for (const auto& tri : triangles)
            for (int e = 0; e < 3; ++e)
                h = std::max(h, (vertices[static_cast<std::size_t>(tri[static_cast<std::size_t>(e)])] -
                                 vertices[static_cast<std::size_t>(tri[static_cast<std::size_t>((e + 1) % 3)])])
                                    .norm());
        return h;
    }

    // Positive orientation, non-degenerate elements, conformity (each
    // directed edge used once, each undirected edge by at most two
    // elements) and no unreferenced vertices.
    void validate() const {
        std::vector<bool> used(vertices.size(), false);
        std::map<std::pair<int, int>, int> directed;
        for (std::size_t t = 0; t < triangles.size(); ++t) {
            if (!(triangle_area(t) > kMinTriangleArea))
                throw MeshError("triangle " + std::to_string(t) + " is degenerate or negatively oriented");
            for (int e = 0; e < 3; ++e) {
                const int a = triangles[t][static_cast<std::size_t>(e)];
                const int b = triangles[t][static_cast<std::size_t>((e + 1) % 3)];
                if (a < 0 || a >= dof_count()) throw MeshError("triangle " + std::to_string(t) + " has an invalid vertex index");
                used[static_cast<std::size_t>(a)] = true;
                if (++directed[{a, b}] > 1) throw MeshError("edge used twice with the same orientation; mesh is not conforming");
            }
        }
        for (std::size_t v = 0; v < used.size(); ++v)
            if (!used[v]) throw MeshError("vertex " + std::to_string(v) + " is not referenced by any triangle");
    }
};

namespace detail {

inline Point2 polygon_centroid(std::span<const Point> loop) {
    double a = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Point& p = loop[i];
        const Point& q = loop[(i + 1) % loop.size()];
        const double w = p[0] * q[1] - q[0] * p[1];
        a += w;
        cx += (p[0] + q[0]) * w;
        cy += (p[1] + q[1]) * w;
    }
    return {cx / (3.0 * a), cy / (3.0 * a)};
}

} // namespace detail

// Fan triangulation from `anchor` over the boundary samples, then
// `refinement` uniform red refinements (each triangle into four). Midpoints
// of boundary edges are placed on the exact boundary curve.
inline Mesh triangulate(const DomainSpec& input, std::optional<Point2> anchor = std::nullopt, int refinement = 0) {
    const DomainSpec spec = normalized(input);
    spec.validate();
    if (!spec.planar()) throw ConfigError("triangulate: planar domain required");
    if (refinement < 0 || refinement > kMaxRefinement)
        throw PreconditionError("triangulate: refinement must lie in [0, " + std::to_string(kMaxRefinement) + "]");

    const BoundaryCurve curve = boundary_curve(spec);
    const std::size_t m = curve.params.size();
    Mesh mesh;
    mesh.vertices.reserve(m + 1);
    std::vector<Point> loop;
    for (double t : curve.params) loop.emplace_back(curve.at(t));
    const Point2 center = anchor ? *anchor : spec.anchor ? Point2((*spec.anchor)[0], (*spec.anchor)[1]) : detail::polygon_centroid(loop);

    mesh.vertices.push_back(center);
    mesh.boundary.push_back(false);
    for (const auto& p : loop) {
        mesh.vertices.emplace_back(p[0], p[1]);
        mesh.boundary.push_back(true);
    }

    // boundary edge (a, b) in counter-clockwise order -> curve parameters
    std::map<std::pair<int, int>, std::pair<double, double>> boundary_edges;
    for (std::size_t i = 0; i < m; ++i) {
        const int a = static_cast<int>(i) + 1;
        const int b = static_cast<int>((i + 1) % m) + 1;
        mesh.triangles.push_back({0, a, b});
        if (!(mesh.triangle_area(i) > kMinTriangleArea))
            throw MeshError("fan triangle at boundary index " + std::to_string(i) +
                            " has non-positive area; domain is not star-shaped with respect to the anchor");
        boundary_edges[{a, b}] = {curve.params[i], i + 1 < m ? curve.params[i + 1] : 1.0};
    }

    for (int level = 0; level < refinement; ++level) {
        std::map<std::pair<int, int>, int> midpoints;
        std::map<std::pair<int, int>, std::pair<double, double>> next_boundary;
        const auto midpoint = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            if (const auto it = midpoints.find(key); it != midpoints.end()) return it->second;
            const int idx = mesh.dof_count();
            if (const auto be = boundary_edges.find({a, b}); be != boundary_edges.end()) {
                const auto [ta, tb] = be->second;
                const double tm = 0.5 * (ta + tb);
                mesh.vertices.push_back(curve.at(tm));
                mesh.boundary.push_back(true);
                next_boundary[{a, idx}] = {ta, tm};
                next_boundary[{idx, b}] = {tm, tb};
            } else {
                mesh.vertices.push_back(0.5 * (mesh.vertices[static_cast<std::size_t>(a)] + mesh.vertices[static_cast<std::size_t>(b)]));
                mesh.boundary.push_back(false);
            }
            midpoints.emplace(key, idx);
            return idx;
        };
        std::vector<Triangle> refined;
        refined.reserve(mesh.triangles.size() * 4);
        for (const auto& [a, b, c] : mesh.triangles) {
            const int ab = midpoint(a, b);
            const int bc = midpoint(b, c);
            const int ca = midpoint(c, a);
            refined.push_back({a, ab, ca});
            refined.push_back({ab, b, bc});
            refined.push_back({ca, bc, c});
            refined.push_back({ab, bc, ca});
        }
        mesh.triangles = std::move(refined);
        boundary_edges = std::move(next_boundary);
    }
    mesh.validate();
    return mesh;
}

struct SystemMatrices {
    Eigen::SparseMatrix<double> stiffness;
    Eigen::SparseMatrix<double> mass;
};

// Local P1 matrices on one triangle: stiffness A grad(l_i).grad(l_j) and
// consistent mass A/12 (1 + delta_ij).
struct ElementMatrices {
    Eigen::Matrix3d stiffness;
    Eigen::Matrix3d mass;
};

inline ElementMatrices element_matrices(const Point2& p0, const Point2& p1, const Point2& p2) {
    const double twice_area = (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y());
    // grad l_i = rot90(edge opposite i) / (2A)
    Eigen::Matrix<double, 2, 3> g;
    g.col(0) << p1.y() - p2.y(), p2.x() - p1.x();
    g.col(1) << p2.y() - p0.y(), p0.x() - p2.x();
    g.col(2) << p0.y() - p1.y(), p1.x() - p0.x();
    const double area = 0.5 * twice_area;
    ElementMatrices e;
    e.stiffness = (g.transpose() * g) / (4.0 * area);
    e.mass = Eigen::Matrix3d::Constant(area / 12.0) + Eigen::Matrix3d::Identity() * (area / 12.0);
    return e;
}

inline SystemMatrices assemble(const Mesh& mesh) {
    const int n = mesh.dof_count();
    std::vector<Eigen::Triplet<double>> k_entries, m_entries;
    k_entries.reserve(mesh.triangles.size() * 9);
    m_entries.reserve(mesh.triangles.size() * 9);
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        if (!(mesh.triangle_area(t) > kMinTriangleArea)) throw MeshError("assemble: triangle " + std::to_string(t) + " is degenerate");
        const auto& tri = mesh.triangles[t];
        const ElementMatrices e = element_matrices(mesh.vertices[static_cast<std::size_t>(tri[0])],
                                                   mesh.vertices[static_cast<std::size_t>(tri[1])],
                                                   mesh.vertices[static_cast<std::size_t>(tri[2])]);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                k_entries.emplace_back(tri[static_cast<std::size_t>(i)], tri[static_cast<std::size_t>(j)], e.stiffness(i, j));
                m_entries.emplace_back(tri[static_cast<std::size_t>(i)], tri[static_cast<std::size_t>(j)], e.mass(i, j));
            }
    }
    SystemMatrices s;
    s.stiffness.resize(n, n);
    s.mass.resize(n, n);
    s.stiffness.setFromTriplets(k_entries.begin(), k_entries.end());
    s.mass.setFromTriplets(m_entries.begin(), m_entries.end());
    return s;
}

struct SpectrumResult {
    std::vector<double> eigenvalues; // ascending, eigenvalues[0] ~ 0
    double mesh_size = 0.0;
    int dof_count = 0;
    int iterations = 0;

    double mu1() const { return eigenvalues.at(1); }
};

// k smallest eigenvalues of K u = lambda M u by shift-invert subspace
// iteration with Rayleigh-Ritz. The constant vector, an exact null vector of
// K, seeds the first column so the zero mode is resolved from the start.
inline SpectrumResult neumann_eigenvalues(const Mesh& mesh, int k, const SystemMatrices* matrices = nullptr) {
    const int n = mesh.dof_count();
    if (k < 2 || k > kMaxEigenvalues) throw PreconditionError("neumann_eigenvalues: k must lie in [2, 10]");
    if (n > kMaxDofs) throw PreconditionError("neumann_eigenvalues: " + std::to_string(n) + " unknowns exceed the limit of 20000");
    if (n <= k) throw PreconditionError("neumann_eigenvalues: mesh has too few unknowns");

    SystemMatrices owned;
    if (!matrices) {
        owned = assemble(mesh);
        matrices = &owned;
    }
    const auto& stiff = matrices->stiffness;
    const auto& mass = matrices->mass;

    const double sigma = 1.0 / mesh.area();
    const Eigen::SparseMatrix<double> shifted = stiff + sigma * mass;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(shifted);
    if (solver.info() != Eigen::Success) throw MeshError("neumann_eigenvalues: factorization of K + sigma M failed");

    const int p = std::min(n, std::max(2 * k, k + 8));
    Eigen::MatrixXd x(n, p);
    std::mt19937_64 rng(0x6e65756d616e6eULL);
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < n; ++i) x(i, j) = j == 0 ? 1.0 : static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;

    SpectrumResult result;
    result.dof_count = n;
    result.mesh_size = mesh.mesh_size();
    Eigen::VectorXd previous = Eigen::VectorXd::Constant(k, INFINITY);
    constexpr int max_iterations = 2000;
    for (int it = 1; it <= max_iterations; ++it) {
        const Eigen::MatrixXd y = solver.solve(mass * x);
        const Eigen::MatrixXd ky = stiff * y;
        const Eigen::MatrixXd my = mass * y;
        Eigen::MatrixXd kr = y.transpose() * ky;
        Eigen::MatrixXd mr = y.transpose() * my;
        kr = 0.5 * (kr + kr.transpose()).eval();
        mr = 0.5 * (mr + mr.transpose()).eval();
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ritz(kr, mr);
        if (ritz.info() != Eigen::Success) throw MeshError("neumann_eigenvalues: Rayleigh-Ritz step failed");
        x = y * ritz.eigenvectors();
        const Eigen::VectorXd theta = ritz.eigenvalues().head(k);
        const double scale = std::max(std::abs(theta[k - 1]), 1e-300);
        const double change = (theta - previous).cwiseAbs().maxCoeff();
        previous = theta;
        if (change <= 1e-13 * scale) {
            result.iterations = it;
            result.eigenvalues.assign(theta.data(), theta.data() + k);
            return result;
        }
    }
    throw NumericalError("neumann_eigenvalues: subspace iteration did not converge");
}

// (u^T K u) / (u^T M u) over the P1 space.
inline double rayleigh_quotient(const SystemMatrices& s, std::span<const double> nodal_values) {
    if (static_cast<Eigen::Index>(nodal_values.size()) != s.stiffness.rows())
        throw PreconditionError("rayleigh_quotient: nodal value count does not match the mesh");
    const Eigen::Map<const Eigen::VectorXd> u(nodal_values.data(), static_cast<Eigen::Index>(nodal_values.size()));
    const double denom = u.dot(s.mass * u);
    if (!(denom > 0.0)) throw DomainError("rayleigh_quotient: function has zero L2 norm");
    return u.dot(s.stiffness * u) / denom;
}

inline double rayleigh_quotient(const Mesh& mesh, std::span<const double> nodal_values) {
    return rayleigh_quotient(assemble(mesh), nodal_values);
}

// Dirichlet energy u^T K u of a P1 function.
inline double dirichlet_energy(const Mesh& mesh, std::span<const double> nodal_values) {
    const SystemMatrices s = assemble(mesh);
    const Eigen::Map<const Eigen::VectorXd> u(nodal_values.data(), static_cast<Eigen::Index>(nodal_values.size()));
    return u.dot(s.stiffness * u);
}

// Mirror image of a mesh across the x-axis, glued along the vertices with
// y = 0. Returns the union mesh and, for each union vertex, the source
// vertex whose value the even reflection assigns to it.
struct ReflectedMesh {
    Mesh mesh;
    std::vector<int> source;
};

inline ReflectedMesh reflect_across_x_axis(const Mesh& half, double tol = 1e-14) {
    ReflectedMesh out;
    out.mesh = half;
    out.source.resize(half.vertices.size());
    for (std::size_t i = 0; i < half.vertices.size(); ++i) out.source[i] = static_cast<int>(i);
    std::vector<int> image(half.vertices.size());
    for (std::size_t i = 0; i < half.vertices.size(); ++i) {
        const Point2& v = half.vertices[i];
        if (std::abs(v.y()) <= tol) {
            image[i] = static_cast<int>(i);
            out.mesh.boundary[i] = false;
        } else {
            image[i] = out.mesh.dof_count();
            out.mesh.vertices.emplace_back(v.x(), -v.y());
            out.mesh.boundary.push_back(half.boundary[i]);
            out.source.push_back(static_cast<int>(i));
        }
    }
    for (const auto& [a, b, c] : half.triangles)
        out.mesh.triangles.push_back({image[static_cast<std::size_t>(a)], image[static_cast<std::size_t>(c)], image[static_cast<std::size_t>(b)]});
    return out;
}

struct BoundCheck {
    std::string formula;
    double value = 0.0;
    double margin = 0.0;
    bool eligible = true;
    bool satisfied = true;
};

struct VerificationRecord {
    std::string domain;
    double fem_mu1 = 0.0;
    SpectrumResult spectrum;
    BoundReport report;
    std::vector<BoundCheck> checks;
    bool satisfied = true;

    void require_satisfied() const {
        for (const auto& c : checks)
            if (!c.satisfied)
                throw NumericalError("lower bound " + c.formula + " = " + std::to_string(c.value) +
                                     " exceeds the FEM eigenvalue " + std::to_string(fem_mu1) + " on " + domain);
    }
};

// Refinement level with at most `max_dofs` vertices for this domain.
inline int auto_refinement(const DomainSpec& spec, int max_dofs = 12000) {
    int best = 0;
    const auto m = static_cast<long long>(boundary_curve(normalized(spec)).params.size());
    for (int r = 0; r <= kMaxRefinement; ++r) {
        // fan of m triangles refined r times: 1 + m + m (4^r - 1)... counted exactly
        long long tri = m, verts = m + 1, edges = 2 * m;
        for (int l = 0; l < r; ++l) {
            verts += edges;
            edges = 2 * edges + 3 * tri;
            tri *= 4;
        }
        if (verts <= max_dofs) best = r;
    }
    return best;
}

// Discrete mu_1 against every bound the report emits: bound <= mu_1 <= mu_1,h.
inline VerificationRecord verify_bound(const DomainSpec& spec, std::optional<int> refinement = std::nullopt, int eigs = 3) {
    VerificationRecord record;
    record.report = best_bound_report(spec);
    record.domain = record.report.domain;
    const Mesh mesh = triangulate(spec, std::nullopt, refinement.value_or(auto_refinement(spec)));
    record.spectrum = neumann_eigenvalues(mesh, eigs);
    record.fem_mu1 = record.spectrum.mu1();
    for (const auto& b : record.report.bounds) {
        BoundCheck c{b.formula, b.value, record.fem_mu1 - b.value, b.eligible, b.value < record.fem_mu1};
        record.satisfied = record.satisfied && c.satisfied;
        record.checks.push_back(c);
    }
    return record;
}

} // namespace neumann
