#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sinkhorn_cli.hpp"

namespace cli = sinkhorn::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "sinkhorn_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const char* name) { return std::string(SAMPLES_DIR) + "/" + name; }

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, ScaleFloatFile) {
  auto r = run({"scale", "--file", sample("a2_k2.txt")});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "0.4384471871")) << r.out;
  EXPECT_TRUE(contains(r.out, "converged yes"));
}

TEST(Cli, ScaleRationalTrace) {
  auto r = run({"scale", "--file", sample("a6_k2.txt"), "--steps", "3", "--trace"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "step 3 (row)"));
  EXPECT_TRUE(contains(r.out, "2183/8434")) << r.out;
  auto missing = run({"scale", "--file", sample("a6_k2.txt")});
  EXPECT_EQ(missing.code, cli::kInputError);
}

TEST(Cli, ScaleJson) {
  auto r = run({"scale", "--family", "A5", "--K", "2", "--json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto j = sinkhorn::json::parse(r.out);
  EXPECT_TRUE(j["converged"].get<bool>());
  EXPECT_NEAR(j["limit"]["entries"][0][0].get<double>(), 0.4648162417, 1e-9);
}

TEST(Cli, LimitFamilies) {
  auto a2 = run({"limit", "--family", "A2", "--K", "2"});
  ASSERT_EQ(a2.code, cli::kOk) << a2.err;
  EXPECT_TRUE(contains(a2.out, "a = (5 - sqrt(17))/2 = 0.4384471871")) << a2.out;
  auto mbn = run({"limit", "--family", "MBN", "--k", "1", "--l", "2", "--M", "2", "--B", "5", "--N", "3"});
  ASSERT_EQ(mbn.code, cli::kOk) << mbn.err;
  EXPECT_TRUE(contains(mbn.out, "(-37 + 5*sqrt(73))/38")) << mbn.out;
  auto a7 = run({"limit", "--family", "A7", "--K", "2", "--digits", "15"});
  ASSERT_EQ(a7.code, cli::kOk) << a7.err;
  EXPECT_TRUE(contains(a7.out, "0.533828905923539")) << a7.out;
  auto a6 = run({"limit", "--family", "A6", "--K", "2", "--json"});
  ASSERT_EQ(a6.code, cli::kOk) << a6.err;
  EXPECT_EQ(sinkhorn::json::parse(a6.out)["family"], "A6");
}

TEST(Cli, LimitDegenerate) {
  auto r = run({"limit", "--family", "A3", "--K", "1"});
  EXPECT_EQ(r.code, cli::kDegenerate);
  EXPECT_TRUE(contains(r.err, "K = 1"));
  auto ok = run({"limit", "--family", "A3", "--K", "1", "--allow-degenerate"});
  EXPECT_EQ(ok.code, cli::kOk);
  EXPECT_TRUE(contains(ok.out, "degenerate"));
}

TEST(Cli, Classify) {
  auto r = run({"classify", "--file", sample("classify_example.txt"), "--limit"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "class A5"));
  EXPECT_TRUE(contains(r.out, "K 3/2"));
  EXPECT_TRUE(contains(r.out, "lambda 1/2"));
  EXPECT_TRUE(contains(r.out, "limit"));
}

TEST(Cli, ClassifyErrors) {
  std::string dir = ::testing::TempDir();
  auto write = [&](const char* name, const char* text) {
    std::string p = dir + "/" + name;
    std::ofstream(p) << text;
    return p;
  };
  EXPECT_EQ(run({"classify", "--file", write("three.txt", "3 3 float\n1 2 3\n1 1 1\n1 1 1\n")}).code, cli::kNotTwoValued);
  EXPECT_EQ(run({"classify", "--file", write("neg.txt", "3 3 float\n1 -2 1\n1 1 1\n1 1 1\n")}).code, cli::kNonPositive);
  EXPECT_EQ(run({"scale", "--file", write("zero.txt", "2 2 float\n0 1\n1 1\n")}).code, cli::kNonPositive);
  EXPECT_EQ(run({"scale", "--file", write("bad.txt", "2 2 float\n1 1\n")}).code, cli::kInputError);
  EXPECT_EQ(run({"scale", "--file", dir + "/does_not_exist.txt"}).code, cli::kInputError);
}

TEST(Cli, Approx) {
  auto r = run({"approx", "--K", "2", "--steps", "6"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "32886086324729567223915642757046161/126521819019515660085772437278570566"));
  auto cmp = run({"approx", "--K", "2", "--compare"});
  ASSERT_EQ(cmp.code, cli::kOk) << cmp.err;
  EXPECT_TRUE(contains(cmp.out, "[0, 3, 1, 5, 1, 1, 4, 1, 1, 8, 1, 14, 1, 10]")) << cmp.out;
  EXPECT_TRUE(contains(cmp.out, "0.2599242295"));
  EXPECT_EQ(run({"approx", "--K", "8", "--compare"}).code, cli::kInputError);
  EXPECT_EQ(run({"approx", "--K", "3/2"}).code, cli::kInputError);
}

TEST(Cli, Cfrac) {
  auto r = run({"cfrac", "--cbrt", "2", "--minus-one", "--terms", "14"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "[0, 3, 1, 5, 1, 1, 4, 1, 1, 8, 1, 14, 1, 10]")) << r.out;
  EXPECT_TRUE(contains(r.out, "1251/4813"));
  auto p = run({"cfrac", "--poly", "-2,0,1", "--lo", "1", "--hi", "2", "--terms", "4"});
  ASSERT_EQ(p.code, cli::kOk) << p.err;
  EXPECT_TRUE(contains(p.out, "[1, 2, 2, 2]"));
  auto fin = run({"cfrac", "--poly", "-1,2", "--lo", "0", "--hi", "1"});
  EXPECT_TRUE(contains(fin.out, "(finite)"));
  EXPECT_EQ(run({"cfrac", "--poly", "-2,0,1", "--lo", "-2", "--hi", "2"}).code, cli::kInputError);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kInputError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kInputError);
  EXPECT_EQ(run({"scale", "--family", "A9", "--K", "2"}).code, cli::kInputError);
  EXPECT_EQ(run({"scale", "--family", "A2", "--K", "2", "--steps", "0"}).code, cli::kInputError);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
}
