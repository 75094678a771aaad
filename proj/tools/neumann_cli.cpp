// neumann: command-line front end. One JSON document (or CSV table) per run
// on stdout; warnings on stderr. Exit 1 on input errors, 2 on numerical
// failures.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "neumann/bounds.hpp"
#include "neumann/error.hpp"
#include "neumann/extension_norms.hpp"
#include "neumann/fem.hpp"
#include "neumann/geometry.hpp"
#include "neumann/io.hpp"
#include "neumann/qc_maps.hpp"
#include "neumann/reproduce.hpp"
#include "neumann/special_functions.hpp"

using namespace neumann;
using io::json;

namespace {

struct Options {
    std::string output = "json";
    bool csv = false;
    std::uint64_t seed = kDefaultSeed;
    std::string domain_path;
    std::string named;
    int n = 2;
    std::optional<int> n_override;
    double R = 2.0;
    double m1 = 1.0, m2 = 1.0, m3 = 0.0;
    std::string path = "auto";
    std::string jacobians;
    std::optional<double> beta;
    std::optional<double> gamma;
    int refine = 3;
    std::optional<int> refine_opt;
    int eigs = 3;
    std::string example;
};

bool want_csv(const Options& o) { return o.csv || o.output == "csv"; }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

DomainSpec domain_of(const Options& o) {
    if (!o.named.empty() && !o.domain_path.empty()) throw ConfigError("give either --domain or --named, not both");
    if (!o.named.empty()) return named_domain(o.named);
    if (o.domain_path.empty()) throw ConfigError("--domain <file.json> is required");
    return io::load_domain(o.domain_path);
}

void add_domain_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--domain", o.domain_path, "domain description (JSON)");
    cmd->add_option("--named", o.named, "built-in domain: bowtie, half_disc, unit_disc, tan_disc, unit_square");
}

void add_csv_flag(CLI::App* cmd, Options& o) { cmd->add_flag("--csv", o.csv, "emit CSV instead of JSON"); }

int run_pzero(const Options& o) {
    const double p = p_zero(o.n);
    if (want_csv(o)) {
        std::printf("n,p\n%d,%.10f\n", o.n, p);
        return 0;
    }
    emit({{"n", o.n}, {"nu", 0.5 * o.n}, {"p", io::round_decimals(p, 10)}});
    return 0;
}

BesselPath bessel_path(const std::string& s) {
    if (s == "auto") return BesselPath::automatic;
    if (s == "generic") return BesselPath::generic;
    if (s == "half_integer") return BesselPath::half_integer;
    throw ConfigError("--path must be auto, generic or half_integer");
}

int run_mikhlin(const Options& o, const io::NumberFormat& f) {
    const auto e = mikhlin_ball_norm_sq(o.n, o.R, bessel_path(o.path));
    json j = io::to_json(e, f);
    j["n"] = o.n;
    j["R"] = f.number(o.R);
    emit(j);
    return 0;
}

int run_mikhlin_star(const Options& o, const io::NumberFormat& f) {
    const StarShapeData data{o.m1, o.m2, o.m3, o.n, o.R};
    const auto e = mikhlin_star_norm_sq_bound(data);
    json j = io::to_json(e, f);
    j["n"] = o.n;
    j["R"] = f.number(o.R);
    j["N1_sq"] = f.number(data.n1_sq());
    j["N2_sq"] = f.number(data.n2_sq());
    j["ball_value_sq"] = f.number(mikhlin_ball_norm_sq(o.n, o.R).value_sq);
    emit(j);
    return 0;
}

int run_qc(const Options& o, const io::NumberFormat& f) {
    if (!o.jacobians.empty() == o.beta.has_value()) throw ConfigError("qc needs exactly one of --jacobians or --beta");
    if (o.gamma && !o.beta) throw ConfigError("--gamma requires --beta");
    if (o.beta) {
        const QcCoefficient k = o.gamma ? spiral_shaped_K(*o.beta, *o.gamma) : star_shaped_K(*o.beta);
        json j = io::to_json(k, f);
        j["beta"] = f.number(*o.beta);
        if (o.gamma) j["gamma"] = f.number(*o.gamma);
        emit(j);
        return 0;
    }
    const auto pieces = io::parse_jacobians(io::read_file(o.jacobians));
    json rows = json::array();
    for (const auto& p : pieces)
        rows.push_back({{"label", p.region_label}, {"K", f.number(affine_qc_coefficient(p).value())}});
    json j = io::to_json(piecewise_qc_coefficient(pieces), f);
    j["pieces"] = rows;
    emit(j);
    return 0;
}

int run_mecb(const Options& o, const io::NumberFormat& f) {
    const DomainSpec spec = normalized(domain_of(o));
    const auto points = sample_domain(spec);
    const Ball b = min_enclosing_ball(points, o.seed);
    json j = io::to_json(b, f);
    j["diameter"] = f.number(diameter(points));
    j["points"] = points.size();
    emit(j);
    return 0;
}

int run_bound(const Options& o, const io::NumberFormat& f) {
    const BoundReport r = best_bound_report(domain_of(o), o.n_override, o.seed);
    for (const auto& note : r.notes) warn(note);
    if (want_csv(o)) std::cout << io::bounds_csv(r, f);
    else emit(io::to_json(r, f));
    return 0;
}

int run_fem(const Options& o, const io::NumberFormat& f) {
    const DomainSpec spec = domain_of(o);
    if (want_csv(o)) {
        // convergence table over refinement levels 0..refine
        std::cout << io::csv_row({"refinement", "h", "dof_count", "mu1"});
        for (int r = 0; r <= o.refine; ++r) {
            const SpectrumResult s = neumann_eigenvalues(triangulate(spec, std::nullopt, r), std::max(2, o.eigs));
            std::cout << io::csv_row({std::to_string(r), f.text(s.mesh_size), std::to_string(s.dof_count), f.text(s.mu1())});
        }
        return 0;
    }
    const SpectrumResult s = neumann_eigenvalues(triangulate(spec, std::nullopt, o.refine), o.eigs);
    json j = io::to_json(s, f);
    j["refinement"] = o.refine;
    emit(j);
    return 0;
}

int run_verify(const Options& o, const io::NumberFormat& f) {
    const VerificationRecord r = verify_bound(domain_of(o), o.refine_opt);
    for (const auto& note : r.report.notes) warn(note);
    if (want_csv(o)) {
        std::cout << io::csv_row({"domain", "formula", "value", "fem_mu1", "margin", "satisfied"});
        for (const auto& c : r.checks)
            std::cout << io::csv_row({r.domain, c.formula, f.text(c.value), f.text(r.fem_mu1), f.text(c.margin),
                                      c.satisfied ? "true" : "false"});
    } else {
        emit(io::to_json(r, f));
    }
    r.require_satisfied();
    return 0;
}

int run_reproduce(const Options& o, const io::NumberFormat& f) {
    const Reproduction r = reproduce(o.example, f, o.seed);
    for (const auto& w : r.warnings) warn(w);
    if (want_csv(o)) {
        if (r.rows.empty()) throw ConfigError("example '" + o.example + "' has no tabular form; use JSON output");
        std::cout << io::csv_row(r.columns);
        for (const auto& row : r.rows) std::cout << io::csv_row(row);
        return 0;
    }
    emit(r.report);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lower bounds for the first nontrivial Neumann eigenvalue"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--output", o.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", o.seed, "seed for the enclosing-ball shuffle");

    auto* pzero = app.add_subcommand("pzero", "first zero p_{n/2} of (t^{1-n/2} J_{n/2}(t))'");
    pzero->add_option("--n", o.n, "dimension")->required();
    add_csv_flag(pzero, o);

    auto* mikhlin = app.add_subcommand("mikhlin", "squared norm of the ball extension operator B_1 -> B_R");
    mikhlin->add_option("--n", o.n)->required();
    mikhlin->add_option("--R", o.R)->required();
    mikhlin->add_option("--path", o.path, "Bessel evaluation: auto, generic, half_integer");

    auto* mikhlin_star = app.add_subcommand("mikhlin-star", "upper bound for star-shaped domains");
    mikhlin_star->add_option("--n", o.n)->required();
    mikhlin_star->add_option("--R", o.R)->required();
    mikhlin_star->add_option("--m1", o.m1)->required();
    mikhlin_star->add_option("--m2", o.m2)->required();
    mikhlin_star->add_option("--m3", o.m3)->required();

    auto* qc = app.add_subcommand("qc", "coefficient of quasiconformality");
    qc->add_option("--jacobians", o.jacobians, "JSON list of 2x2 Jacobians");
    qc->add_option("--beta", o.beta);
    qc->add_option("--gamma", o.gamma);

    auto* mecb = app.add_subcommand("mecb", "minimum enclosing ball and diameter");
    add_domain_options(mecb, o);

    auto* bound = app.add_subcommand("bound", "every lower bound the domain metadata supports");
    add_domain_options(bound, o);
    bound->add_option("--n", o.n_override, "dimension used for p_{n/2}");
    add_csv_flag(bound, o);

    auto* fem = app.add_subcommand("fem", "P1 finite-element Neumann eigenvalues");
    add_domain_options(fem, o);
    fem->add_option("--refine", o.refine, "uniform refinements of the fan mesh (0..8)");
    fem->add_option("--eigs", o.eigs, "number of eigenvalues, including the zero mode (2..10)");
    add_csv_flag(fem, o);

    auto* verify = app.add_subcommand("verify", "FEM eigenvalue against every emitted lower bound");
    add_domain_options(verify, o);
    verify->add_option("--refine", o.refine_opt, "refinement level (default: finest under 12000 unknowns)");
    add_csv_flag(verify, o);

    auto* repro = app.add_subcommand("reproduce", "recompute a worked example");
    repro->add_option("example", o.example, "bowtie, half_ball, tan_star, mikhlin_table, pzero_table")->required();
    add_csv_flag(repro, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const io::NumberFormat f = io::NumberFormat::from_env();
        if (*pzero) return run_pzero(o);
        if (*mikhlin) return run_mikhlin(o, f);
        if (*mikhlin_star) return run_mikhlin_star(o, f);
        if (*qc) return run_qc(o, f);
        if (*mecb) return run_mecb(o, f);
        if (*bound) return run_bound(o, f);
        if (*fem) return run_fem(o, f);
        if (*verify) return run_verify(o, f);
        if (*repro) return run_reproduce(o, f);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
