#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is merged into the output when asked.
Run cli(const std::string& args, bool merge_stderr = false, const std::string& env = {}) {
  const std::string cmd = env + (env.empty() ? "" : " ") + JOUANOLOU_CLI + std::string(" ") + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string golden(const std::string& name) { return slurp(fs::path(GOLDEN_DIR) / name); }

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("jouanolou-cli-" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Cli, GenText) {
  const auto r = cli("gen --codim 2 --degree 2 --format text --no-cache");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "P_2^2 = -xi\n");
  EXPECT_EQ(cli("gen -d 1 -q 2 --no-cache").out, golden("gen_d1_q2.txt"));
}

TEST(Cli, GenLatexAndJson) {
  EXPECT_EQ(cli("gen -d 1 -q 2 --format latex --no-cache").out, golden("gen_d1_q2.tex"));
  EXPECT_EQ(cli("gen -d 2 -q 4 --format json --no-cache").out, golden("gen_d2_q4.json"));
}

TEST(Cli, GenRoundTripsThroughCache) {
  const auto dir = scratch("cache");
  const auto first = cli("gen -d 2 -q 4 --format json --cache-dir " + dir.string());
  ASSERT_EQ(first.status, 0);
  const auto files = cli("cache list --cache-dir " + dir.string());
  ASSERT_EQ(files.status, 0);
  ASSERT_FALSE(files.out.empty());
  const std::string path = files.out.substr(0, files.out.find('\n'));
  EXPECT_EQ(slurp(path), first.out);
  const auto second = cli("gen -d 2 -q 4 --format json --cache-dir " + dir.string());
  EXPECT_EQ(second.out, first.out);
  EXPECT_EQ(cli("gen -d 2 -q 4 --format text --cache-dir " + dir.string()).out,
            cli("gen -d 2 -q 4 --format text --no-cache").out);
  const auto env_list = cli("cache list", false, "JOUANOLOU_CACHE_DIR=" + dir.string());
  EXPECT_EQ(env_list.out, files.out);
  const auto cleared = cli("cache clear --cache-dir " + dir.string());
  EXPECT_EQ(cleared.status, 0);
  EXPECT_EQ(cleared.out.rfind("removed 1 file from", 0), 0u);
  EXPECT_EQ(cli("cache list --cache-dir " + dir.string()).out, "");
  fs::remove_all(dir);
}

TEST(Cli, Eval) {
  EXPECT_EQ(cli("eval --model P2 --expr 'c(2,[O]-2[O(1)]+[O(2)])'").out, "-1*h^2\n");
  EXPECT_EQ(cli("eval --model 'proj(P2; O(1)+O(2))' --expr 'thom()' --format json").out,
            golden("eval_thom.json"));
}

TEST(Cli, EvalErrorsExitTwo) {
  const auto syntax = cli("eval --model P2 --expr 'c(2,'", true);
  EXPECT_EQ(syntax.status, 2);
  EXPECT_NE(syntax.out.find("column 5"), std::string::npos) << syntax.out;
  EXPECT_EQ(cli("eval --model Q2 --expr h").status, 2);
  EXPECT_EQ(cli("eval --model P2 --expr 'push_s([O])'").status, 2);
}

TEST(Cli, VerifyThomTable) {
  const auto r = cli("verify --suite thom --jobs 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, golden("verify_thom.txt"));
}

TEST(Cli, VerifyReportsAreByteIdentical) {
  const auto a = scratch("report-a.json"), b = scratch("report-b.json");
  EXPECT_EQ(cli("verify --suite normalization --seed 7 -j 1 --report " + a.string()).status, 0);
  EXPECT_EQ(cli("verify --suite normalization --seed 7 -j 3 --report " + b.string()).status, 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(cli("verify --suite normalization --format json").out, slurp(a));
  fs::remove(a);
  fs::remove(b);
}

TEST(Cli, VerifyEmptyGridWarns) {
  const auto r = cli("verify --suite main --max-codim 0", true);
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("vacuous pass"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli("verify --suite nope").status, 2);
  EXPECT_EQ(cli("gen --codim 2").status, 2);
  EXPECT_EQ(cli("").status, 2);
  const auto v = cli("--version");
  EXPECT_EQ(v.status, 0);
  EXPECT_EQ(v.out, "0.1.0\n");
}
