#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#ifndef NEUMANN_CLI
#error "NEUMANN_CLI must name the command-line binary"
#endif
#ifndef NEUMANN_DOMAINS
#error "NEUMANN_DOMAINS must name the sample domain directory"
#endif

namespace {

struct Invocation {
    int status = -1;
    std::string out;
};

Invocation run(const std::string& args) {
    const std::string cmd = std::string(NEUMANN_CLI) + " " + args + " 2>/dev/null";
    Invocation r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int raw = ::pclose(p);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string domain(const char* file) { return std::string(NEUMANN_DOMAINS) + "/" + file; }

nlohmann::json parse(const Invocation& r) { return nlohmann::json::parse(r.out); }

} // namespace

TEST(Cli, Pzero) {
    const Invocation r = run("pzero --n 2");
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("1.8411837813"), std::string::npos);
    EXPECT_NEAR(parse(r)["p"].get<double>(), 1.841, 1e-3);
}

TEST(Cli, Mikhlin) {
    EXPECT_NEAR(parse(run("mikhlin --n 3 --R 2"))["value_sq"].get<double>(), 8.38905, 1e-4);
    EXPECT_NEAR(parse(run("mikhlin --n 3 --R 3"))["value_sq"].get<double>(), 7.50825, 1e-4);
    const auto star = parse(run("mikhlin-star --n 3 --R 2 --m1 1 --m2 1 --m3 0"));
    EXPECT_EQ(star["kind"], "upper_bound");
}

TEST(Cli, QcAndMecb) {
    EXPECT_NEAR(parse(run("qc --jacobians " + domain("bowtie_jacobians.json")))["K"].get<double>(), 2.618033989, 1e-9);
    EXPECT_NEAR(parse(run("qc --beta 0.5"))["K"].get<double>(), 5.828427125, 1e-9);
    const auto m = parse(run("mecb --domain " + domain("bowtie_polygon.json")));
    EXPECT_NEAR(m["radius"].get<double>(), 5.0 / 6.0, 1e-9);
    EXPECT_NEAR(m["diameter"].get<double>(), 1.58113883, 1e-8);
}

TEST(Cli, BoundJsonAndCsv) {
    const auto j = parse(run("bound --domain " + domain("bowtie.json")));
    EXPECT_EQ(j["bounds"].size(), 3u);
    const Invocation csv = run("bound --domain " + domain("bowtie.json") + " --csv");
    ASSERT_EQ(csv.status, 0);
    EXPECT_EQ(csv.out.substr(0, 6), "domain");
    EXPECT_EQ(run("--output csv bound --domain " + domain("bowtie.json")).out, csv.out);
}

TEST(Cli, FemAndVerify) {
    const auto f = parse(run("fem --domain " + domain("unit_square.json") + " --refine 4 --eigs 3"));
    EXPECT_EQ(f["eigenvalues"].size(), 3u);
    EXPECT_NEAR(f["mu1"].get<double>(), 9.887, 1e-2);
    const Invocation table = run("fem --domain " + domain("unit_square.json") + " --refine 3 --csv");
    EXPECT_EQ(table.out.substr(0, table.out.find('\n')), "refinement,h,dof_count,mu1");
    const auto v = parse(run("verify --domain " + domain("half_disc.json")));
    EXPECT_TRUE(v["satisfied"].get<bool>());
}

TEST(Cli, Reproduce) {
    for (const char* name : {"bowtie", "half_ball", "tan_star", "mikhlin_table", "pzero_table"}) {
        const Invocation r = run(std::string("reproduce ") + name);
        EXPECT_EQ(r.status, 0) << name;
        EXPECT_NO_THROW(parse(r)) << name;
    }
    EXPECT_NEAR(parse(run("reproduce bowtie"))["computed"].get<double>(), 0.4144, 1e-3);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("reproduce circle").status, 1);
    EXPECT_EQ(run("pzero --n 1").status, 1);
    EXPECT_EQ(run("pzero").status, 1);
    EXPECT_EQ(run("frobnicate").status, 1);
    EXPECT_EQ(run("mikhlin --n 3 --R 0.5").status, 1);
    EXPECT_EQ(run("bound --domain /nonexistent.json").status, 1);
    EXPECT_EQ(run("bound --domain " + std::string(NEUMANN_CLI)).status, 1); // binary is not JSON
    EXPECT_EQ(run("fem --domain " + domain("bowtie.json") + " --refine 9").status, 1);
    EXPECT_EQ(run("fem --named bowtie --refine 7").status, 1); // over the desk-scale unknown limit
    EXPECT_EQ(run("--output xml pzero --n 2").status, 1);
}

TEST(Cli, NumericalFailureExitsTwo) {
    const std::string path = ::testing::TempDir() + "/off_center.json";
    FILE* f = std::fopen(path.c_str(), "w");
    ASSERT_NE(f, nullptr);
    std::fputs(R"({"kind": "named", "name": "bowtie", "anchor": [0, 0.2]})", f);
    std::fclose(f);
    EXPECT_EQ(run("fem --domain " + path).status, 2);
}

TEST(Cli, PrecisionFromEnvironment) {
    const Invocation r = run("mikhlin --n 3 --R 2");
    EXPECT_NE(r.out.find("8.389056099"), std::string::npos);
    const std::string cmd = "NEUMANN_PRECISION=4 " + std::string(NEUMANN_CLI) + " mikhlin --n 3 --R 2";
    FILE* p = ::popen(cmd.c_str(), "r");
    ASSERT_NE(p, nullptr);
    std::string out;
    std::array<char, 512> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    ::pclose(p);
    EXPECT_NE(out.find("\"value_sq\": 8.389,"), std::string::npos) << out;
}

TEST(Cli, ByteIdenticalReruns) {
    for (const std::string args : {"bound --domain " + domain("tan_disc.json"), std::string("reproduce tan_star"),
                                   "verify --domain " + domain("bowtie.json"), "mecb --domain " + domain("unit_ball_3d.json")})
        EXPECT_EQ(run(args).out, run(args).out) << args;
}
