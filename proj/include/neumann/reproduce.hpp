#pragma once

// Worked examples recomputed from scratch. Each report carries its inputs,
// the intermediate quantities, the published figure, what we compute, and a
// match flag. Disagreements are reported, never adjusted.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "neumann/bounds.hpp"
#include "neumann/extension_norms.hpp"
#include "neumann/fem.hpp"
#include "neumann/geometry.hpp"
#include "neumann/io.hpp"
#include "neumann/qc_maps.hpp"
#include "neumann/special_functions.hpp"

namespace neumann {

struct Reproduction {
    io::json report;
    std::vector<std::string> warnings; // for stderr
    // Flat rows for CSV output; empty for non-tabular examples.
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

inline const std::vector<std::string>& reproduction_names() {
    static const std::vector<std::string> names = {"bowtie", "half_ball", "tan_star", "mikhlin_table", "pzero_table"};
    return names;
}

namespace detail {

inline io::json check(const std::string& quantity, double claimed, double computed, double tol, const io::NumberFormat& f) {
    return {{"quantity", quantity},
            {"claimed", f.number(claimed)},
            {"computed", f.number(computed)},
            {"tolerance", f.number(tol)},
            {"match", std::abs(claimed - computed) <= tol}};
}

inline bool all_match(const io::json& checks) {
    for (const auto& c : checks)
        if (!c["match"].get<bool>()) return false;
    return true;
}

inline Reproduction reproduce_bowtie(const io::NumberFormat& f, std::uint64_t seed) {
    Reproduction out;
    const auto pieces = bowtie_map_pieces();
    io::json piece_rows = io::json::array();
    for (const auto& p : pieces) {
        const Eigen::Matrix2d a = p.jacobian * p.jacobian.transpose();
        const double lambda = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(a).eigenvalues().maxCoeff();
        io::json jac = {{f.number(p.jacobian(0, 0)), f.number(p.jacobian(0, 1))},
                        {f.number(p.jacobian(1, 0)), f.number(p.jacobian(1, 1))}};
        piece_rows.push_back({{"region", p.region_label},
                              {"jacobian", jac},
                              {"lambda_max", f.number(lambda)},
                              {"det", f.number(p.jacobian.determinant())},
                              {"K", f.number(affine_qc_coefficient(p).value())}});
    }
    const QcCoefficient k = piecewise_qc_coefficient(pieces);
    const std::vector<Point> vertices = bowtie_vertices();
    const double d = diameter(vertices);
    const Ball mecb = min_enclosing_ball(vertices, seed);
    const double j = p_zero(2);
    const LowerBound half_d = corollary_a_bound(k, 0.5 * d);
    const LowerBound with_mecb = corollary_a_bound(k, mecb.radius);

    io::json verts = io::json::array();
    for (const auto& v : vertices) verts.push_back(io::point_json(v, f));
    io::json checks = io::json::array();
    checks.push_back(check("K", (3.0 + std::sqrt(5.0)) / 2.0, k.value(), 1e-12, f));
    checks.push_back(check("d", std::sqrt(10.0) / 2.0, d, 1e-12, f));
    checks.push_back(check("bound (d/2 convention) ~ 2/5", 0.4, half_d.value, 0.05, f));

    out.report = {
        {"example", "bowtie"},
        {"inputs", {{"vertices", verts}, {"map_pieces", piece_rows}}},
        {"intermediates",
         {{"K", f.number(k.value())},
          {"d", f.number(d)},
          {"j_prime_11", f.number(j)},
          {"mecb", io::to_json(mecb, f)},
          {"R_half_d", f.number(0.5 * d)}}},
        {"bounds",
         {{{"convention", "d/2"}, {"R", f.number(0.5 * d)}, {"value", f.number(half_d.value)}},
          {{"convention", "mecb"}, {"R", f.number(mecb.radius)}, {"value", f.number(with_mecb.value)}}}},
        {"claimed", {{"text", "~ 2/5"}, {"value", 0.4}}},
        {"computed", f.number(half_d.value)},
        {"checks", checks},
        {"match", all_match(checks)},
        {"discrepancy", false},
        {"notes",
         {"the published value uses R = d/2, which presumes a center of symmetry; the bowtie is only axis-symmetric",
          "with the true minimum enclosing ball (center (0, 2/3), radius 5/6) the same formula gives the MECB bound"}}};
    return out;
}

inline Reproduction reproduce_half_ball(const io::NumberFormat& f) {
    Reproduction out;
    const ExtensionNormEstimate norm = half_ball_reflection_norm();
    const double pw = payne_weinberger_bound(2.0).value; // d(B^-) = 2
    io::json rows = io::json::array();
    out.columns = {"n", "p", "bound", "pw", "improves"};
    bool claim_holds = true;
    for (int n = 2; n <= 8; ++n) {
        const LowerBound b = theorem_a_bound(norm, 1.0, n); // R(B^-) = 1
        const bool improves = improvement_condition(norm, n);
        claim_holds = claim_holds && (improves == (n >= 4)) && (improves == (b.value > pw));
        rows.push_back({{"n", n}, {"p", f.number(b.inputs.at("p"))}, {"bound", f.number(b.value)},
                        {"pw", f.number(pw)}, {"improves", improves}});
        out.rows.push_back({std::to_string(n), f.text(b.inputs.at("p")), f.text(b.value), f.text(pw), improves ? "true" : "false"});
    }
    const double bound_n4 = theorem_a_bound(norm, 1.0, 4).value;
    out.report = {{"example", "half_ball"},
                  {"inputs", {{"norm_sq", f.number(norm.value_sq)}, {"norm_source", norm.source}, {"R", 1.0}, {"d", 2.0}}},
                  {"norm_sq", f.number(norm.value_sq)},
                  {"bound_n4", f.number(bound_n4)},
                  {"bound_n4_table_p", f.number(2.299 * 2.299 / 2.0)},
                  {"pw", f.number(pw)},
                  {"improves", improvement_condition(norm, 4)},
                  {"rows", rows},
                  {"claimed", "p_{n/2}^2 / 2 > pi^2 / 4 exactly when n >= 4"},
                  {"computed", "improvement for n in {4, ..., 8}, none for n in {2, 3}"},
                  {"match", claim_holds},
                  {"discrepancy", !claim_holds}};
    if (!claim_holds) out.warnings.push_back("half_ball: improvement pattern differs from the published n >= 4 claim");
    return out;
}

inline Reproduction reproduce_tan_star(const io::NumberFormat& f) {
    Reproduction out;
    constexpr double beta = 0.5;
    constexpr double displayed_d = 3.2;
    constexpr double displayed_j = 1.84118;
    const double j = p_zero(2);
    const QcCoefficient k = star_shaped_K(beta);
    const double s = std::sin((1.0 - beta) * std::numbers::pi / 4.0);
    const double angular = 4.0 * s * s * s * s;
    const double displayed_angular = 4.0 * std::pow(std::sqrt(2.0 - std::sqrt(2.0)) / 2.0, 4);
    const double from_displayed = displayed_angular * (displayed_j / displayed_d) * (displayed_j / displayed_d);

    const std::vector<Point> samples = sample_domain(named_domain("tan_disc", 4096));
    const double d_sampled = diameter(samples);
    const double d_exact = 2.0 * std::tan(1.0); // attained between tan(1) and tan(-1)
    const LowerBound sampled = star_shaped_bound(beta, d_sampled);

    io::json checks = io::json::array();
    checks.push_back(check("bound from displayed factors vs stated ~ 1/5", kTanDiscStatedBound, from_displayed, 0.05, f));

    const std::string warning = "tan_star: published value ~ 1/5 disagrees with its own displayed factors, which give " +
                                f.text(from_displayed);
    out.warnings.push_back(warning);
    out.report = {{"example", "tan_star"},
                  {"inputs", {{"map", "tan z on the unit disc"}, {"beta", beta}, {"displayed_d", displayed_d},
                              {"displayed_j_prime_11", displayed_j}}},
                  {"intermediates",
                   {{"K", f.number(k.value())},
                    {"angular_factor", f.number(angular)},
                    {"displayed_angular_factor", f.number(displayed_angular)},
                    {"j_prime_11", f.number(j)},
                    {"radial_factor_displayed", f.number((displayed_j / displayed_d) * (displayed_j / displayed_d))},
                    {"d_sampled", f.number(d_sampled)},
                    {"samples", 4096},
                    {"d_exact", f.number(d_exact)},
                    {"bound_sampled_d", f.number(sampled.value)}}},
                  {"claimed", {{"text", "~ 1/5"}, {"value", kTanDiscStatedBound}}},
                  {"computed", f.number(from_displayed)},
                  {"checks", checks},
                  {"match", all_match(checks)},
                  {"discrepancy", true},
                  {"notes", {warning, "the diameter of tan(D) is 2 tan 1 = 3.1148; the displayed 3.2 overstates it slightly, which lowers the bound further"}}};
    return out;
}

inline Reproduction reproduce_mikhlin_table(const io::NumberFormat& f) {
    Reproduction out;
    struct Row {
        int n;
        double R;
        std::optional<double> claimed;
    };
    const std::vector<Row> table = {{3, 2.0, 8.38905}, {3, 3.0, 7.50825}, {4, 2.0, {}}, {4, 3.0, {}}, {5, 2.0, {}}, {5, 3.0, {}}};
    constexpr double tol = 1e-4;
    io::json rows = io::json::array();
    out.columns = {"n", "R", "alpha", "value_sq", "claimed", "match"};
    bool all = true;
    for (const auto& r : table) {
        const ExtensionNormEstimate e = mikhlin_ball_norm_sq(r.n, r.R);
        io::json row = {{"n", r.n}, {"R", r.R}, {"alpha", 0.5 * (r.n - 2)}, {"value_sq", f.number(e.value_sq)}};
        if (r.n % 2 == 1) row["value_sq_generic_path"] = f.number(mikhlin_ball_norm_sq(r.n, r.R, BesselPath::generic).value_sq);
        std::string claimed_text, match_text;
        if (r.claimed) {
            const bool m = std::abs(e.value_sq - *r.claimed) <= tol;
            all = all && m;
            row["claimed"] = *r.claimed;
            row["match"] = m;
            claimed_text = f.text(*r.claimed);
            match_text = m ? "true" : "false";
        } else {
            row["claimed"] = nullptr;
            row["match"] = nullptr;
        }
        rows.push_back(row);
        out.rows.push_back({std::to_string(r.n), f.text(r.R), f.text(0.5 * (r.n - 2)), f.text(e.value_sq), claimed_text, match_text});
    }
    out.report = {{"example", "mikhlin_table"},
                  {"inputs", {{"formula", "W1_2 extension from B_1 to B_R"}, {"tolerance", tol}}},
                  {"norm_type", "W1_2"},
                  {"rows", rows},
                  {"match", all},
                  {"discrepancy", !all}};
    return out;
}

inline Reproduction reproduce_pzero_table(const io::NumberFormat&) {
    Reproduction out;
    const double claimed[] = {1.841, 2.081, 2.299, 2.501, 2.688, 2.864, 3.031};
    io::json rows = io::json::array();
    out.columns = {"n", "nu", "p", "claimed", "match"};
    bool all = true;
    for (int n = 2; n <= 8; ++n) {
        const double p = p_zero(n);
        const double c = claimed[n - 2];
        const bool m = std::abs(p - c) <= 1e-3;
        all = all && m;
        rows.push_back({{"n", n}, {"nu", 0.5 * n}, {"p", io::round_decimals(p, 10)}, {"claimed", c}, {"match", m}});
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10f", p);
        char cbuf[32];
        std::snprintf(cbuf, sizeof cbuf, "%.3f", c);
        out.rows.push_back({std::to_string(n), io::NumberFormat{}.text(0.5 * n), buf, cbuf, m ? "true" : "false"});
    }
    out.report = {{"example", "pzero_table"},
                  {"inputs", {{"definition", "first positive zero of J_nu(t) - t J_{nu+1}(t), nu = n/2"}, {"tolerance", 1e-3}}},
                  {"rows", rows},
                  {"match", all},
                  {"discrepancy", !all}};
    return out;
}

} // namespace detail

inline Reproduction reproduce(const std::string& name, const io::NumberFormat& f = {}, std::uint64_t seed = kDefaultSeed) {
    if (name == "bowtie") return detail::reproduce_bowtie(f, seed);
    if (name == "half_ball") return detail::reproduce_half_ball(f);
    if (name == "tan_star") return detail::reproduce_tan_star(f);
    if (name == "mikhlin_table") return detail::reproduce_mikhlin_table(f);
    if (name == "pzero_table") return detail::reproduce_pzero_table(f);
    throw ConfigError("unknown example '" + name + "'; valid: " + detail::joined(reproduction_names()));
}

} // namespace neumann
