#pragma once

// JSON ingestion of domain descriptions and serialization of every report
// type. Floats are rounded to a fixed number of significant digits before
// they reach the JSON writer, so output is stable across platforms.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "neumann/bounds.hpp"
#include "neumann/error.hpp"
#include "neumann/extension_norms.hpp"
#include "neumann/fem.hpp"
#include "neumann/geometry.hpp"
#include "neumann/qc_maps.hpp"

namespace neumann::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kPrecisionVariable = "NEUMANN_PRECISION";
inline constexpr int kDefaultSignificantDigits = 10;

struct NumberFormat {
    int significant = kDefaultSignificantDigits;

    static NumberFormat from_env() {
        NumberFormat f;
        const char* raw = std::getenv(kPrecisionVariable);
        if (!raw || !*raw) return f;
        char* end = nullptr;
        const long v = std::strtol(raw, &end, 10);
        if (*end != '\0' || v < 1 || v > 17)
            throw ConfigError(std::string(kPrecisionVariable) + " must be an integer in [1, 17], got '" + raw + "'");
        f.significant = static_cast<int>(v);
        return f;
    }

    double round(double v) const {
        if (!std::isfinite(v) || v == 0.0) return v;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*e", significant - 1, v);
        return std::strtod(buf, nullptr);
    }

    json number(double v) const {
        if (!std::isfinite(v)) return nullptr;
        return round(v);
    }

    std::string text(double v) const {
        if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", significant, v);
        return buf;
    }
};

// Fixed number of decimals, used where a table is quoted to decimals
// instead of significant digits.
inline double round_decimals(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return std::strtod(buf, nullptr);
}

inline json point_json(const Eigen::VectorXd& p, const NumberFormat& f) {
    json a = json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(f.number(p[i]));
    return a;
}

// ---------------------------------------------------------------- parsing

namespace detail {

inline double real(const json& j, const char* key) {
    if (!j.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(std::string("'") + key + "' must be finite");
    return v;
}

inline int integer(const json& j, const char* key) {
    if (!j.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
    const auto v = j.get<long long>();
    if (v < -1000000000LL || v > 1000000000LL) throw ConfigError(std::string("'") + key + "' is out of range");
    return static_cast<int>(v);
}

inline Point point(const json& j, const char* key) {
    if (!j.is_array() || j.empty()) throw ConfigError(std::string("'") + key + "' must be a non-empty array of numbers");
    Point p(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) p[static_cast<Eigen::Index>(i)] = real(j[i], key);
    return p;
}

inline DomainKind kind(const std::string& s) {
    if (s == "polygon") return DomainKind::polygon;
    if (s == "sampler" || s == "boundary_sampler") return DomainKind::sampler;
    if (s == "named" || s == "named_example") return DomainKind::named;
    throw ConfigError("unknown domain kind '" + s + "'; valid: polygon, sampler, named");
}

inline const char* kind_name(DomainKind k) {
    switch (k) {
    case DomainKind::polygon: return "polygon";
    case DomainKind::sampler: return "sampler";
    case DomainKind::named: return "named";
    }
    return "polygon";
}

inline const std::vector<std::string>& domain_keys() {
    static const std::vector<std::string> keys = {"kind", "dim", "vertices", "name", "samples", "symmetry_center", "K",
                                                  "beta", "gamma", "norm_sq", "mikhlin", "anchor"};
    return keys;
}

} // namespace detail

// Named domains start from their built-in metadata; explicit keys override.
inline DomainSpec domain_from_json(const json& j) {
    try {
        if (!j.is_object()) throw ConfigError("domain document must be a JSON object");
        for (const auto& [key, value] : j.items()) {
            (void)value;
            if (!neumann::detail::contains_name(detail::domain_keys(), key))
                throw ConfigError("unknown domain key '" + key + "'");
        }
        if (!j.contains("kind") || !j["kind"].is_string()) throw ConfigError("domain needs a string 'kind'");
        const DomainKind kind = detail::kind(j["kind"].get<std::string>());

        DomainSpec spec;
        int samples = 256;
        if (j.contains("samples")) samples = detail::integer(j["samples"], "samples");
        if (kind != DomainKind::polygon) {
            if (!j.contains("name") || !j["name"].is_string()) throw ConfigError("named and sampler domains need a string 'name'");
            const std::string name = j["name"].get<std::string>();
            if (kind == DomainKind::named) {
                spec = named_domain(name, samples);
            } else {
                spec.kind = DomainKind::sampler;
                spec.name = name;
                spec.samples = samples;
            }
        } else {
            if (j.contains("name")) {
                if (!j["name"].is_string()) throw ConfigError("'name' must be a string");
                spec.name = j["name"].get<std::string>();
            }
            if (!j.contains("vertices") || !j["vertices"].is_array()) throw ConfigError("polygon domain needs 'vertices'");
            for (const auto& v : j["vertices"]) spec.vertices.push_back(detail::point(v, "vertices"));
            if (spec.vertices.empty()) throw ConfigError("'vertices' is empty");
            spec.dim = static_cast<int>(spec.vertices.front().size());
        }
        if (j.contains("dim")) {
            spec.dim = detail::integer(j["dim"], "dim");
            if (kind != DomainKind::polygon && spec.dim != 2) throw ConfigError("named and sampler domains are planar (dim 2)");
        }
        for (const auto& v : spec.vertices)
            if (v.size() != spec.dim) throw ConfigError("every vertex must have dim = " + std::to_string(spec.dim) + " coordinates");

        const auto optional_point = [&](const char* key, std::optional<Point>& out) {
            if (!j.contains(key)) return;
            if (j[key].is_null()) {
                out.reset();
                return;
            }
            out = detail::point(j[key], key);
            if (out->size() != spec.dim) throw ConfigError(std::string("'") + key + "' must have dim coordinates");
        };
        const auto optional_real = [&](const char* key, std::optional<double>& out) {
            if (!j.contains(key)) return;
            if (j[key].is_null()) out.reset();
            else out = detail::real(j[key], key);
        };
        optional_point("symmetry_center", spec.symmetry_center);
        optional_point("anchor", spec.anchor);
        optional_real("K", spec.qc_coefficient);
        optional_real("beta", spec.star_beta);
        optional_real("gamma", spec.spiral_gamma);
        optional_real("norm_sq", spec.extension_norm_sq);
        if (j.contains("mikhlin")) {
            const json& m = j["mikhlin"];
            if (!m.is_object()) throw ConfigError("'mikhlin' must be an object {R, m1, m2, m3}");
            MikhlinParameters p;
            for (const auto& [key, value] : m.items()) {
                if (key == "R") p.R = detail::real(value, "mikhlin.R");
                else if (key == "m1") p.m1 = detail::real(value, "mikhlin.m1");
                else if (key == "m2") p.m2 = detail::real(value, "mikhlin.m2");
                else if (key == "m3") p.m3 = detail::real(value, "mikhlin.m3");
                else throw ConfigError("unknown mikhlin key '" + key + "'");
            }
            spec.mikhlin = p;
        }
        spec.validate();
        return spec;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid domain JSON: ") + e.what());
    }
}

inline json parse_text(std::string_view text, const std::string& what) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::exception& e) {
        throw ConfigError("malformed JSON in " + what + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline DomainSpec parse_domain(std::string_view text) { return domain_from_json(parse_text(text, "domain")); }

inline DomainSpec load_domain(const std::string& path) {
    return domain_from_json(parse_text(read_file(path), "'" + path + "'"));
}

inline json to_json(const DomainSpec& spec, const NumberFormat& f = {}) {
    json j;
    j["kind"] = detail::kind_name(spec.kind);
    j["dim"] = spec.dim;
    if (!spec.name.empty()) j["name"] = spec.name;
    if (spec.kind == DomainKind::polygon) {
        json v = json::array();
        for (const auto& p : spec.vertices) v.push_back(point_json(p, f));
        j["vertices"] = v;
    } else {
        j["samples"] = spec.samples;
    }
    if (spec.symmetry_center) j["symmetry_center"] = point_json(*spec.symmetry_center, f);
    if (spec.anchor) j["anchor"] = point_json(*spec.anchor, f);
    if (spec.qc_coefficient) j["K"] = f.number(*spec.qc_coefficient);
    if (spec.star_beta) j["beta"] = f.number(*spec.star_beta);
    if (spec.spiral_gamma) j["gamma"] = f.number(*spec.spiral_gamma);
    if (spec.extension_norm_sq) j["norm_sq"] = f.number(*spec.extension_norm_sq);
    if (spec.mikhlin)
        j["mikhlin"] = {{"R", f.number(spec.mikhlin->R)},
                        {"m1", f.number(spec.mikhlin->m1)},
                        {"m2", f.number(spec.mikhlin->m2)},
                        {"m3", f.number(spec.mikhlin->m3)}};
    return j;
}

// `qc --jacobians`: a list of 2x2 arrays, or of {"jacobian": [[..],[..]], "label": ".."}.
inline std::vector<AffinePiece> parse_jacobians(std::string_view text) {
    const json j = parse_text(text, "jacobians");
    try {
        if (!j.is_array() || j.empty()) throw ConfigError("jacobians document must be a non-empty array");
        std::vector<AffinePiece> pieces;
        for (std::size_t i = 0; i < j.size(); ++i) {
            const json* m = &j[i];
            std::string label = "piece " + std::to_string(i);
            if (m->is_object()) {
                if (m->contains("label")) {
                    if (!(*m)["label"].is_string()) throw ConfigError("'label' must be a string");
                    label = (*m)["label"].get<std::string>();
                }
                if (!m->contains("jacobian")) throw ConfigError("jacobian object needs a 'jacobian' entry");
                m = &(*m)["jacobian"];
            }
            if (!m->is_array() || m->size() != 2) throw ConfigError("each jacobian must be a 2x2 array");
            Eigen::Matrix2d d;
            for (int r = 0; r < 2; ++r) {
                const json& row = (*m)[static_cast<std::size_t>(r)];
                if (!row.is_array() || row.size() != 2) throw ConfigError("each jacobian must be a 2x2 array");
                for (int c = 0; c < 2; ++c) d(r, c) = detail::real(row[static_cast<std::size_t>(c)], "jacobian");
            }
            pieces.push_back({d, label});
        }
        return pieces;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid jacobians JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------- reports

inline json to_json(const Ball& b, const NumberFormat& f = {}) {
    return {{"center", point_json(b.center, f)}, {"radius", f.number(b.radius)}};
}

inline json to_json(const ExtensionNormEstimate& e, const NumberFormat& f = {}) {
    return {{"value_sq", f.number(e.value_sq)},
            {"kind", e.kind == EstimateKind::exact ? "exact" : "upper_bound"},
            {"source", e.source},
            {"norm_type", e.norm_type}};
}

inline json to_json(const QcCoefficient& k, const NumberFormat& f = {}) {
    return {{"K", f.number(k.value())}, {"source", std::string(to_string(k.source()))}};
}

inline json to_json(const LowerBound& b, const NumberFormat& f = {}) {
    json inputs = json::object();
    for (const auto& [k, v] : b.inputs) inputs[k] = f.number(v);
    json j = {{"formula", b.formula}, {"value", f.number(b.value)}, {"eligible", b.eligible}};
    j["improves_on_pw"] = b.improves_on_pw ? json(*b.improves_on_pw) : json(nullptr);
    j["inputs"] = inputs;
    j["note"] = b.note;
    return j;
}

inline json to_json(const BoundReport& r, const NumberFormat& f = {}) {
    json bounds = json::array();
    for (const auto& b : r.bounds) bounds.push_back(to_json(b, f));
    return {{"domain", r.domain},
            {"n", r.n},
            {"diameter", f.number(r.diameter)},
            {"mecb", to_json(r.mecb, f)},
            {"symmetric", r.symmetric},
            {"convex", r.convex},
            {"bounds", bounds},
            {"best", {{"formula", r.best_bound().formula}, {"value", f.number(r.best_bound().value)}}},
            {"pw_comparison", r.pw_comparison},
            {"notes", r.notes}};
}

inline json to_json(const SpectrumResult& s, const NumberFormat& f = {}) {
    json ev = json::array();
    for (double v : s.eigenvalues) ev.push_back(f.number(v));
    return {{"eigenvalues", ev},
            {"mu1", f.number(s.mu1())},
            {"mesh_size", f.number(s.mesh_size)},
            {"dof_count", s.dof_count},
            {"iterations", s.iterations}};
}

inline json to_json(const VerificationRecord& r, const NumberFormat& f = {}) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"formula", c.formula},
                          {"value", f.number(c.value)},
                          {"margin", f.number(c.margin)},
                          {"eligible", c.eligible},
                          {"satisfied", c.satisfied}});
    return {{"domain", r.domain},
            {"fem_mu1", f.number(r.fem_mu1)},
            {"spectrum", to_json(r.spectrum, f)},
            {"bounds", checks},
            {"satisfied", r.satisfied},
            {"report", to_json(r.report, f)}};
}

// ---------------------------------------------------------------- csv

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string csv_row(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += csv_field(fields[i]);
    }
    return line + "\n";
}

inline std::string bounds_csv(const BoundReport& r, const NumberFormat& f = {}) {
    std::string out = csv_row({"domain", "n", "formula", "value", "eligible", "improves_on_pw", "best", "note"});
    for (std::size_t i = 0; i < r.bounds.size(); ++i) {
        const auto& b = r.bounds[i];
        out += csv_row({r.domain, std::to_string(r.n), b.formula, f.text(b.value), b.eligible ? "true" : "false",
                        b.improves_on_pw ? (*b.improves_on_pw ? "true" : "false") : "", i == r.best ? "true" : "false",
                        b.note});
    }
    return out;
}

} // namespace neumann::io
