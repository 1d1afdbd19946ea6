#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "colex/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Out {
    int code;
    std::string out, err;
};

Out run(std::vector<std::string> args) {
    args.insert(args.begin(), "colex");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = colex::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("colex_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& body) {
        const auto p = (dir_ / name).string();
        std::ofstream(p) << body;
        return p;
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

const char* kNfa =
    "alphabet a b\nnodes 3\n0 1 a\n1 0 a\n1 2 b\ninitial 0\nfinal 1 2\n";

}  // namespace

TEST_F(Cli, BuildQueryAccept) {
    const auto g = write("g.txt", kNfa);
    const auto ix = path("g.clxi");
    auto b = run({"build", g, "-o", ix, "--nfa"});
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(b.out, "classes 3 edges 3 chains 2\n");

    auto q = run({"query", ix, "ab"});
    EXPECT_EQ(q.code, 0);
    EXPECT_EQ(q.out, "yes\nnodes 2\n");
    q = run({"query", ix, "bb"});
    EXPECT_EQ(q.code, 1);
    EXPECT_EQ(q.out, "no\nnodes\n");
    q = run({"query", ix, ""});
    EXPECT_EQ(q.code, 0);
    EXPECT_EQ(q.out, "yes\nnodes 0 1 2\n");
    q = run({"query", ix, "a", "--from-initial", "--backend", "plain"});
    EXPECT_EQ(q.out, "yes\nnodes 1\n");

    EXPECT_EQ(run({"accept", ix, "ab"}).code, 0);
    EXPECT_EQ(run({"accept", ix, "ab"}).out, "accept\n");
    EXPECT_EQ(run({"accept", ix, "aa"}).code, 1);
    EXPECT_EQ(run({"accept", ix, "aa"}).out, "reject\n");
    EXPECT_EQ(run({"accept", ix, "x"}).code, 2);
}

TEST_F(Cli, PlainGraphHasNoAutomaton) {
    const auto g = write("g.txt", "nodes 3\n0 1 a\n1 0 a\n1 2 b\n");
    const auto ix = path("g.clxi");
    ASSERT_EQ(run({"build", g, "-o", ix}).code, 0);
    EXPECT_EQ(run({"query", ix, "aab"}).code, 0);
    EXPECT_EQ(run({"accept", ix, "a"}).code, 2);
    auto s = run({"stats", ix});
    EXPECT_EQ(s.code, 0);
    EXPECT_NE(s.out.find("classes 2\n"), std::string::npos);
    EXPECT_NE(s.out.find("automaton no\n"), std::string::npos);
    EXPECT_NE(s.out.find("q 1\n"), std::string::npos);
    // 2 edges * (1 + 0 + 2) + 2 classes.
    EXPECT_NE(s.out.find("formula_bits 8\n"), std::string::npos);
}

TEST_F(Cli, StatsTsv) {
    const auto g = write("g.txt", kNfa);
    const auto ix = path("g.clxi");
    ASSERT_EQ(run({"build", g, "-o", ix, "--nfa"}).code, 0);
    auto s = run({"stats", ix, "--format", "tsv"});
    ASSERT_EQ(s.code, 0);
    std::istringstream in(s.out);
    std::string head, row;
    std::getline(in, head);
    std::getline(in, row);
    EXPECT_EQ(head, "nodes\tedges\tclasses\tquotient_edges\tq\tsigma\tautomaton\tmeasured_bits\tformula_bits\tratio");
    EXPECT_EQ(row.substr(0, 16), "3\t3\t3\t3\t2\t2\tyes\t");
}

TEST_F(Cli, Quotient) {
    const auto g = write("g.txt", kNfa);
    auto q = run({"quotient", g});
    ASSERT_EQ(q.code, 0) << q.err;
    EXPECT_NE(q.out.find("# class 0: 0 1\n# class 1: 2\n"), std::string::npos);
    EXPECT_NE(q.out.find("nodes 2\n"), std::string::npos);
    q = run({"quotient", g, "--nfa"});
    EXPECT_NE(q.out.find("# class 2: 2\n"), std::string::npos);
}

TEST_F(Cli, Verify) {
    const auto g = write("g.txt", kNfa);
    auto v = run({"verify", g, "--nfa"});
    EXPECT_EQ(v.code, 0) << v.out;
    EXPECT_NE(v.out.find("CHECK nfa_accept PASS"), std::string::npos);
    EXPECT_EQ(v.out.find(" FAIL"), std::string::npos);
    v = run({"verify", "--random", "5"});
    EXPECT_EQ(v.code, 0) << v.out;
    EXPECT_EQ(run({"verify"}).code, 2);
}

TEST_F(Cli, Errors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({"build", path("missing.txt"), "-o", path("x")}).code, 2);
    auto bad = write("bad.txt", "nodes 2\n0 5 a\n");
    auto e = run({"build", bad, "-o", path("x")});
    EXPECT_EQ(e.code, 2);
    EXPECT_NE(e.err.find("line 2"), std::string::npos) << e.err;
    auto junk = write("junk.clxi", "not an index");
    EXPECT_EQ(run({"query", junk, "a"}).code, 2);
    EXPECT_EQ(run({"stats", junk}).code, 2);
    const auto g = write("g.txt", kNfa);
    EXPECT_EQ(run({"build", g, "-o", path("y"), "--nfa"}).code, 0);
    EXPECT_EQ(run({"query", path("y"), "a", "--backend", "fast"}).code, 2);
    // No accepting state reachable.
    auto empty = write("e.txt", "nodes 2\n0 1 a\ninitial 0\nfinal\n");
    EXPECT_EQ(run({"build", empty, "-o", path("z"), "--nfa"}).code, 2);
}
