#include <gtest/gtest.h>

#include <cstdlib>

#include "neumann/io.hpp"

using namespace neumann;
using io::json;

TEST(DomainJson, PolygonWithMetadata) {
    const DomainSpec s = io::parse_domain(R"({"kind": "polygon", "vertices": [[0,0],[1,0],[1,1],[0,1]],
        "symmetry_center": [0.5, 0.5], "K": 1.5, "beta": 0.25, "norm_sq": 2, "anchor": [0.5, 0.5]})");
    EXPECT_EQ(s.kind, DomainKind::polygon);
    EXPECT_EQ(s.dim, 2);
    ASSERT_EQ(s.vertices.size(), 4u);
    EXPECT_DOUBLE_EQ(*s.qc_coefficient, 1.5);
    EXPECT_DOUBLE_EQ(*s.star_beta, 0.25);
    EXPECT_DOUBLE_EQ(*s.extension_norm_sq, 2.0);
    EXPECT_DOUBLE_EQ((*s.symmetry_center)[1], 0.5);
}

TEST(DomainJson, NamedStartsFromBuiltInMetadata) {
    const DomainSpec s = io::parse_domain(R"({"kind": "named", "name": "bowtie"})");
    EXPECT_NEAR(*s.qc_coefficient, (3 + std::sqrt(5.0)) / 2, 1e-15);
    const DomainSpec over = io::parse_domain(R"({"kind": "named", "name": "bowtie", "K": 3})");
    EXPECT_DOUBLE_EQ(*over.qc_coefficient, 3.0);
    const DomainSpec cleared = io::parse_domain(R"({"kind": "named", "name": "unit_disc", "symmetry_center": null})");
    EXPECT_FALSE(cleared.symmetry_center.has_value());
}

TEST(DomainJson, SamplerAndSpaceCloud) {
    const DomainSpec s = io::parse_domain(R"({"kind": "sampler", "name": "tan_disc", "samples": 100, "beta": 0.5})");
    EXPECT_EQ(s.kind, DomainKind::sampler);
    EXPECT_EQ(s.samples, 100);
    const DomainSpec c = io::parse_domain(
        R"({"kind": "polygon", "dim": 3, "vertices": [[1,0,0],[0,1,0],[0,0,1],[0,0,0]], "mikhlin": {"R": 3, "m3": 0.1}})");
    EXPECT_EQ(c.dim, 3);
    EXPECT_DOUBLE_EQ(c.mikhlin->R, 3.0);
    EXPECT_DOUBLE_EQ(c.mikhlin->m3, 0.1);
    EXPECT_DOUBLE_EQ(c.mikhlin->m1, 1.0);
}

TEST(DomainJson, MalformedInputIsAnInputError) {
    const char* bad[] = {
        "",
        "{",
        "[1, 2]",
        R"({"vertices": [[0,0],[1,0],[0,1]]})",
        R"({"kind": "hexagon"})",
        R"({"kind": "polygon"})",
        R"({"kind": "polygon", "vertices": []})",
        R"({"kind": "polygon", "vertices": [[0,0],[1,0],["a",1]]})",
        R"({"kind": "polygon", "vertices": [[0,0],[1,0],[0,1,2]]})",
        R"({"kind": "polygon", "vertices": [[0,0],[1,0],[0,1]], "K": 0.5})",
        R"({"kind": "polygon", "vertices": [[0,0],[1,0],[0,1]], "K": "big"})",
        R"({"kind": "polygon", "vertices": [[0,0],[1,0],[0,1]], "beta": 1.0})",
        R"({"kind": "polygon", "vertices": [[0,0],[1,0],[0,1]], "colour": "red"})",
        R"({"kind": "polygon", "vertices": [[0,0],[1,0],[1,1],[0,1]], "samples": 2.5})",
        R"({"kind": "polygon", "vertices": [[0,0],[1,1],[1,0],[0,1]]})",
        R"({"kind": "named", "name": "dodecahedron"})",
        R"({"kind": "named"})",
        R"({"kind": "named", "name": "unit_disc", "dim": 3})",
        R"({"kind": "polygon", "dim": 3, "vertices": [[0,0,0],[1,0,0],[0,1,0]], "mikhlin": {"R": 0.5}})",
        R"({"kind": "polygon", "dim": 3, "vertices": [[0,0,0],[1,0,0],[0,1,0]], "mikhlin": {"Q": 2}})",
        R"({"kind": "polygon", "vertices": [[0,0],[1,0],[0,1]], "symmetry_center": [0,0,0]})",
    };
    for (const char* text : bad) EXPECT_THROW(io::parse_domain(text), InputError) << text;
    EXPECT_THROW(io::load_domain("/nonexistent/domain.json"), ConfigError);
}

TEST(DomainJson, RoundTrip) {
    for (const char* text : {R"({"kind": "named", "name": "bowtie"})", R"({"kind": "named", "name": "tan_disc", "samples": 64})",
                             R"({"kind": "polygon", "vertices": [[0,0],[2,0],[2,1],[0,1]], "symmetry_center": [1, 0.5]})"}) {
        const DomainSpec a = io::parse_domain(text);
        const json j = io::to_json(a, io::NumberFormat{17});
        const DomainSpec b = io::domain_from_json(j);
        EXPECT_EQ(io::to_json(b, io::NumberFormat{17}).dump(), j.dump()) << text;
    }
}

TEST(Jacobians, ListAndLabelledForms) {
    const auto plain = io::parse_jacobians("[[[1,0],[1,1]], [[1,0],[0,1]]]");
    ASSERT_EQ(plain.size(), 2u);
    EXPECT_DOUBLE_EQ(plain[0].jacobian(1, 0), 1.0);
    const auto labelled = io::parse_jacobians(R"([{"label": "S+", "jacobian": [[1,0],[-1,1]]}])");
    EXPECT_EQ(labelled[0].region_label, "S+");
    EXPECT_THROW(io::parse_jacobians("[]"), ConfigError);
    EXPECT_THROW(io::parse_jacobians("[[[1,0,0],[1,1]]]"), ConfigError);
    EXPECT_THROW(io::parse_jacobians("[[1,0],[1,1]]"), ConfigError);
    EXPECT_THROW(io::parse_jacobians("{"), ConfigError);
}

TEST(NumberFormat, SignificantDigits) {
    const io::NumberFormat ten;
    EXPECT_EQ(json(ten.round(8.3890560989306495)).dump(), "8.389056099");
    EXPECT_EQ(json(io::NumberFormat{4}.round(0.41435156)).dump(), "0.4144");
    EXPECT_EQ(ten.text(1.0 / 3.0), "0.3333333333");
    EXPECT_TRUE(ten.number(std::nan("")).is_null());
    EXPECT_DOUBLE_EQ(io::round_decimals(1.84118378134066, 10), 1.8411837813);
}

TEST(NumberFormat, FromEnvironment) {
    ::setenv(io::kPrecisionVariable, "6", 1);
    EXPECT_EQ(io::NumberFormat::from_env().significant, 6);
    ::setenv(io::kPrecisionVariable, "0", 1);
    EXPECT_THROW(io::NumberFormat::from_env(), ConfigError);
    ::setenv(io::kPrecisionVariable, "12abc", 1);
    EXPECT_THROW(io::NumberFormat::from_env(), ConfigError);
    ::unsetenv(io::kPrecisionVariable);
    EXPECT_EQ(io::NumberFormat::from_env().significant, 10);
}

TEST(ReportJson, BoundReportReparses) {
    const BoundReport r = best_bound_report(named_domain("bowtie"));
    const std::string text = io::to_json(r).dump(2);
    const json back = json::parse(text);
    EXPECT_EQ(back["best"]["formula"], "corollary_a");
    EXPECT_EQ(back["bounds"].size(), r.bounds.size());
    EXPECT_NEAR(back["diameter"].get<double>(), std::sqrt(10.0) / 2, 1e-9);
    EXPECT_TRUE(back["bounds"][2]["improves_on_pw"].is_null());
}

TEST(Csv, QuotingAndBoundRows) {
    EXPECT_EQ(io::csv_row({"a", "b,c", "say \"hi\""}), "a,\"b,c\",\"say \"\"hi\"\"\"\n");
    const std::string csv = io::bounds_csv(best_bound_report(named_domain("unit_disc", 64)));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "domain,n,formula,value,eligible,improves_on_pw,best,note");
    EXPECT_NE(csv.find("payne_weinberger"), std::string::npos);
}
