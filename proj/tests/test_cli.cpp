#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(FEYNRULES_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const std::string& name) { return std::string(FEYNRULES_DATA) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
    const std::string path = std::string(FEYNRULES_TMP) + "/" + name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST(Cli, ClassifyExitCodes) {
    EXPECT_EQ(run("classify 1,0,0,-1,0,1,1,0").code, 0);
    EXPECT_EQ(run("classify 1,2,3,4,5,6,7,8").code, 2);
    EXPECT_EQ(run("classify 1,2,3").code, 64);
    EXPECT_EQ(run("classify 1,x,0,0,0,0,0,0").code, 64);
    EXPECT_EQ(run("frobnicate").code, 64);
}

TEST(Cli, JsonEnvelope) {
    const auto r = run("--format json --seed 3 reduce 1,0,0,0,0,1,1,0");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["tool"], "feynrules");
    EXPECT_EQ(j["command"], "reduce");
    EXPECT_EQ(j["config"]["seed"], 3);
    EXPECT_EQ(j["result"]["reduction"]["form"], "C2");
}

TEST(Cli, OutputIsDeterministic) {
    EXPECT_EQ(run("--format json eliminate --form C3 --op swap --samples 300").out,
              run("--format json eliminate --form C3 --op swap --samples 300").out);
}

TEST(Cli, SolveH) {
    const auto r = run("--format json solve-h --form C1 --alpha 2 --at 3,4");
    ASSERT_EQ(r.code, 0);
    EXPECT_DOUBLE_EQ(nlohmann::json::parse(r.out)["result"]["value"].get<double>(), 25.0);
    EXPECT_EQ(run("solve-h --form C3 --alpha 1").code, 64);
    EXPECT_EQ(run("solve-h --form C2 --alpha 1 --beta 1 --at 0,1").code, 64);
}

TEST(Cli, DeriveReportsTheRules) {
    const auto r = run("--format json derive");
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["result"]["acceptances"], 1);
    EXPECT_EQ(j["result"]["rules"]["probability"], "x1^2 + x2^2");
}

TEST(Cli, Simulate) {
    const auto r = run("--format json simulate " + data("interferometer.json") + " " +
                       data("interferometer_sequences.json"));
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out)["result"];
    EXPECT_LT(j["results"][2]["probability"].get<double>(), 1e-12);
    EXPECT_NEAR(j["results"][3]["probability"].get<double>(), 1.0, 1e-12);
    EXPECT_TRUE(j["normalization"]["preserving"].get<bool>());
}

TEST(Cli, SimulateErrors) {
    const auto setup = temp_file("partial.json",
                                 R"({"setup_id": "p", "slots": [[0, 1], [0, 1]], "intervals": [[[0, 0, 1, 0]]]})");
    const auto seqs = temp_file("partial_seq.json", R"([[0, 1]])");
    EXPECT_EQ(run("simulate " + setup + " " + seqs).code, 65);
    const auto broken = temp_file("broken.json", R"({"setup_id": "p", "slots": )");
    EXPECT_EQ(run("simulate " + broken + " " + seqs).code, 64);
    EXPECT_EQ(run("simulate " + setup + " " + temp_file("bad_seq.json", "[[0, 7]]")).code, 64);
    EXPECT_EQ(run("simulate /nonexistent.json " + seqs).code, 64);
}

TEST(Cli, CheckSymmetries) {
    const auto r = run("--format json --samples 50 check-symmetries --labels 3 --max-length 5");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["result"]["laws"].size(), 7u);
}

TEST(Cli, WritesToFile) {
    const std::string path = std::string(FEYNRULES_TMP) + "/out.json";
    std::remove(path.c_str());
    ASSERT_EQ(run("--format json --out " + path + " solve-reciprocity --form C1").code, 0);
    std::ifstream f(path);
    const auto j = nlohmann::json::parse(f);
    EXPECT_EQ(j["result"]["isolated"].size(), 2u);
}
