#include "keiso_cli.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

using namespace keiso;
namespace fs = std::filesystem;

namespace {

const std::string samples = KEISO_SAMPLES_DIR;

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string sample(const char* name) { return samples + "/" + name; }

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("keiso_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const char* name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

} // namespace

TEST_F(CliTest, CheckTrivialKei) {
    const auto r = run({"check", sample("trivial_kei3.txt"), "--expect", "kei"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("is_kei 1"), std::string::npos);
}

TEST_F(CliTest, CheckS3ConjugationIsNotKei) {
    const auto r = run({"check", sample("s3_conjugation.txt"), "--expect", "kei"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("is_quandle 1"), std::string::npos);
    EXPECT_NE(r.out.find("is_kei 0"), std::string::npos);
    EXPECT_NE(r.out.find("involutory: fails at (3,1)"), std::string::npos);
    EXPECT_EQ(run({"check", sample("s3_conjugation.txt"), "--expect", "quandle"}).code, 0);
}

TEST_F(CliTest, CheckVerboseListsAllViolations) {
    const auto r = run({"check", sample("ld_breaker.txt"), "-v"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("left-distributive: fails at (0,0,0)"), std::string::npos);
    EXPECT_NE(r.out.find("  left-distributive (0,0,0)"), std::string::npos);
}

TEST_F(CliTest, CheckTruncatedIsMalformed) {
    const auto r = run({"check", sample("truncated.txt"), "--expect", "kei"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("MalformedLine"), std::string::npos);
    EXPECT_EQ(run({"check", path("missing.txt")}).code, 2);
    EXPECT_EQ(run({"check"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST_F(CliTest, EncodeEdge01) {
    const auto r = run({"encode", sample("edge01.txt")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(io::parse_table(r.out),
              Magma::from_rows({{0, 1, 2, 3}, {0, 1, 2, 3}, {1, 0, 2, 3}, {1, 0, 2, 3}}));
    EXPECT_EQ(r.out.rfind("# encoded-kei", 0), 0u);
    EXPECT_EQ(run({"encode", sample("self_loop.txt")}).code, 2);
}

TEST_F(CliTest, DetectTrivialOddIsNotFolded) {
    const auto r = run({"detect", sample("trivial_kei3.txt")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("not folded"), std::string::npos);
    EXPECT_EQ(run({"detect", sample("s3_conjugation.txt")}).code, 1); // NotAKei
}

TEST_F(CliTest, DetectWritesParsableWitness) {
    ASSERT_EQ(run({"encode", sample("edge01.txt"), "-o", path("q.txt")}).code, 0);
    ASSERT_EQ(run({"detect", path("q.txt"), "-o", path("w.txt")}).code, 0);
    const auto w = io::parse_witness(io::read_file(path("w.txt")));
    EXPECT_EQ(w.derive(), io::parse_table(io::read_file(path("q.txt"))));
    const auto all = run({"detect", path("q.txt"), "--all"});
    EXPECT_EQ(all.code, 0);
    EXPECT_NE(all.out.find("witnesses"), std::string::npos);
}

TEST_F(CliTest, DecodeAfterEncodeRoundTripsEveryGraphUpTo3) {
    for (std::size_t n = 1; n <= 3; ++n)
        for (const auto& g : enumerate_digraphs(n)) {
            io::write_file(path("g.txt"), io::format_edge_list(g));
            ASSERT_EQ(run({"encode", path("g.txt"), "-o", path("q.txt")}).code, 0);
            const auto r = run({"decode", path("q.txt"), "-o", path("d.txt")});
            ASSERT_EQ(r.code, 0);
            const auto d = io::parse_edge_list(io::read_file(path("d.txt")));
            ASSERT_TRUE(oracle::graphs_isomorphic(d, g));
        }
}

TEST_F(CliTest, DecodeWithExplicitWitness) {
    ASSERT_EQ(run({"encode", sample("three_cycle.txt"), "-o", path("q.txt")}).code, 0);
    ASSERT_EQ(run({"detect", path("q.txt"), "-o", path("w.txt")}).code, 0);
    const auto r = run({"decode", path("q.txt"), "--witness", path("w.txt")});
    EXPECT_EQ(r.code, 0);
    // stdout carries the edge list followed by a comment; still parsable.
    EXPECT_TRUE(oracle::graphs_isomorphic(io::parse_edge_list(r.out),
                                          io::parse_edge_list(io::read_file(sample("three_cycle.txt")))));
    io::write_file(path("bad.txt"), io::format_witness(graph_witness(Digraph(3))));
    EXPECT_EQ(run({"decode", path("q.txt"), "--witness", path("bad.txt")}).code, 1);
}

TEST_F(CliTest, IsoGraphsAndTables) {
    EXPECT_EQ(run({"iso", sample("edge01.txt"), sample("edge10.txt")}).code, 0);
    const auto r = run({"iso", sample("three_cycle.txt"), sample("out_star3.txt")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find(" 0 0 1"), std::string::npos);
    EXPECT_EQ(run({"iso", "--tables", sample("s3_conjugation.txt"), sample("s3_conjugation.txt")}).code, 0);
    EXPECT_EQ(run({"iso", "--tables", sample("trivial_kei3.txt"), sample("s3_conjugation.txt")}).code, 1);
}

TEST_F(CliTest, ReduceTestExhaustive2) {
    const auto r = run({"reduce-test", "--n-max", "2", "--log", path("log.txt")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("pairs 16\n"), std::string::npos);
    EXPECT_NE(r.out.find("agreements 16\n"), std::string::npos);
    std::istringstream log(io::read_file(path("log.txt")));
    std::string line;
    std::size_t lines = 0;
    while (std::getline(log, line)) {
        EXPECT_TRUE(io::parse_verdict(line).verdict.agree);
        ++lines;
    }
    EXPECT_EQ(lines, 16u);
}

TEST_F(CliTest, ReduceTestSampledAtSix) {
    const auto r = run({"reduce-test", "--mode", "sampled", "--n-max", "6", "--pairs", "500",
                        "--seed", "7"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("pairs 500\n"), std::string::npos);
    EXPECT_NE(r.out.find("agreements 500\n"), std::string::npos);
}

TEST_F(CliTest, ReduceTestBoundsAndDeterminism) {
    const auto big = run({"reduce-test", "--n-max", "4"});
    EXPECT_EQ(big.code, 1);
    EXPECT_NE(big.err.find("--canonical"), std::string::npos);
    EXPECT_EQ(run({"reduce-test", "--n-max", "5", "--canonical"}).code, 1);
    EXPECT_EQ(run({"reduce-test", "--mode", "bogus"}).code, 2);

    const std::vector<std::string> base{"reduce-test", "--mode", "sampled", "--n-max", "5",
                                        "--pairs", "40", "--seed", "7"};
    auto a = base, b = base;
    a.insert(a.end(), {"--log", path("a.txt")});
    b.insert(b.end(), {"--log", path("b.txt"), "--jobs", "3"});
    EXPECT_EQ(run(a).code, 0);
    EXPECT_EQ(run(b).code, 0);
    EXPECT_EQ(io::read_file(path("a.txt")), io::read_file(path("b.txt")));
}

TEST_F(CliTest, SigmaCheck) {
    EXPECT_EQ(run({"sigma-check", sample("z2_group.txt")}).code, 0);
    const auto s3 = run({"sigma-check", "--group", sample("s3_group.txt")});
    EXPECT_EQ(s3.code, 0);
    EXPECT_NE(s3.out.find("sigma-derived-ld: holds"), std::string::npos);
    EXPECT_EQ(run({"sigma-check", sample("sigma_s3.txt")}).code, 0);
    const auto bad = run({"sigma-check", "--sigma", sample("sigma_s3_corrupted.txt")});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("sigma-2: fails at (1,1,2)"), std::string::npos);
    EXPECT_EQ(run({"sigma-check", "--group", sample("trivial_kei3.txt")}).code, 2);
}

TEST_F(CliTest, Enumerate) {
    const auto r2 = run({"enumerate", "2", "-o", path("c2.txt")});
    EXPECT_EQ(r2.code, 0);
    EXPECT_NE(r2.out.find("graphs 4"), std::string::npos);
    EXPECT_EQ(io::parse_catalog(io::read_file(path("c2.txt"))).size(), 4u);

    const auto d3 = run({"enumerate", "3", "--dedupe", "-o", path("c3.txt")});
    EXPECT_NE(d3.out.find("graphs 16"), std::string::npos);
    EXPECT_EQ(io::parse_catalog(io::read_file(path("c3.txt"))), enumerate_digraphs(3, true));

    const auto k3 = run({"enumerate", "3", "--keis", "-o", path("k3.txt")});
    EXPECT_EQ(k3.code, 0);
    EXPECT_NE(k3.out.find("keis 64"), std::string::npos);
    const auto tables = io::parse_tables(io::read_file(path("k3.txt.keis")));
    ASSERT_EQ(tables.size(), 64u);
    for (std::size_t i = 0; i < tables.size(); ++i)
        EXPECT_EQ(tables[i], encode_kei(digraph_from_code(3, i)).magma);

    EXPECT_EQ(run({"enumerate", "6"}).code, 1);
}

TEST_F(CliTest, Apex) {
    const auto r = run({"apex", sample("edge01.txt"), "--subset", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(io::parse_edge_list(r.out), Digraph(3, {{0, 1}, {2, 1}}));
    EXPECT_EQ(run({"apex", sample("edge01.txt"), "--subset", "x"}).code, 2);
    EXPECT_EQ(run({"apex", sample("edge01.txt"), "--subset", "5"}).code, 1);
}

TEST_F(CliTest, IdenticalRunsGiveIdenticalFiles) {
    for (int k = 0; k < 2; ++k) {
        const std::string suffix = std::to_string(k);
        ASSERT_EQ(run({"enumerate", "3", "--keis", "-o", path(("e" + suffix).c_str())}).code, 0);
        ASSERT_EQ(run({"reduce-test", "--n-max", "3", "--log", path(("l" + suffix).c_str())}).code, 0);
    }
    EXPECT_EQ(io::read_file(path("e0")), io::read_file(path("e1")));
    EXPECT_EQ(io::read_file(path("e0.keis")), io::read_file(path("e1.keis")));
    EXPECT_EQ(io::read_file(path("l0")), io::read_file(path("l1")));
}
