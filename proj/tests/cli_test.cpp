#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_util.hpp"

namespace {

using gaspect::testing::fixture_path;
using gaspect::testing::read_fixture;
namespace fs = std::filesystem;

struct Outcome {
  int status;
  std::string out;
};

// Runs the gaspect binary with stderr folded into stdout.
Outcome gaspect(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + GASPECT_BIN + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  int raw = ::pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string f(const std::string& name) { return fixture_path(name); }

std::string java(const std::string& aspect) {
  return f("java5.grammar") + " " + f(aspect) + " ";
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("gaspect_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  fs::path p = dir / name;
  fs::remove(p);
  return p;
}

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(gaspect("check " + java("highlight.aspect")).status, 0);

  Outcome bad = gaspect("check " + f("arith.grammar") + " " + f("multiplicity.aspect"));
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.out.find("matched 2, expected [0..1]"), std::string::npos) << bad.out;

  Outcome syntax = gaspect("check " + java("malformed.aspect"));
  EXPECT_EQ(syntax.status, 2);
  EXPECT_NE(syntax.out.find("malformed.aspect:2:"), std::string::npos) << syntax.out;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(gaspect("").status, 2);
  EXPECT_EQ(gaspect("frobnicate x").status, 2);
  EXPECT_EQ(gaspect("check " + f("java5.grammar")).status, 2);
  EXPECT_EQ(gaspect("highlight " + java("highlight.aspect") + f("example.java") + " --format pdf").status, 2);
  Outcome no_lexer = gaspect("format " + java("pretty.aspect") + f("class_body.java"));
  EXPECT_EQ(no_lexer.status, 2);
  EXPECT_NE(no_lexer.out.find("--lexer"), std::string::npos);
  EXPECT_EQ(gaspect("--help").status, 0);
}

TEST(Cli, WeaveToFile) {
  fs::path out = scratch("woven.json");
  Outcome r = gaspect("weave " + java("highlight.aspect") + f("pretty.aspect") + " -o " + out.string());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(r.out.empty());
  std::string first = slurp(out);
  ASSERT_EQ(gaspect("weave " + java("highlight.aspect") + f("pretty.aspect") + " -o " + out.string()).status, 0);
  EXPECT_EQ(slurp(out), first);

  Outcome stdout_run = gaspect("weave " + java("highlight.aspect") + f("pretty.aspect"));
  EXPECT_EQ(stdout_run.out, first);
}

TEST(Cli, FailedRunsLeaveNoFile) {
  fs::path out = scratch("conflict.json");
  Outcome r = gaspect("weave " + java("highlight.aspect") + f("conflict.aspect") + " -o " + out.string());
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("conflicting values"), std::string::npos) << r.out;
  EXPECT_FALSE(fs::exists(out));

  fs::path html = scratch("broken.html");
  r = gaspect("highlight " + java("highlight.aspect") + f("broken.java") + " --lexer " + f("java.lex") +
              " --format html -o " + html.string());
  EXPECT_EQ(r.status, 3);
  EXPECT_NE(r.out.find("broken.java:1:22: unexpected '{'"), std::string::npos) << r.out;
  EXPECT_FALSE(fs::exists(html));
  for (const auto& entry : fs::directory_iterator(html.parent_path())) {
    std::string name = entry.path().filename().string();
    EXPECT_NE(name.rfind("broken.html", 0), 0u) << name;
    EXPECT_NE(name.rfind("conflict.json", 0), 0u) << name;
  }
}

TEST(Cli, HighlightHonoursNoColor) {
  std::string args = "highlight " + java("highlight.aspect") + f("class_body.java") + " --lexer " + f("java.lex");
  EXPECT_EQ(gaspect(args).out, "\x1b[1;34mclass\x1b[0m \x1b[4mA\x1b[0m { int x ; }\n");
  Outcome plain = gaspect(args, "NO_COLOR=1");
  EXPECT_EQ(plain.status, 0);
  EXPECT_EQ(plain.out, read_fixture("class_body.java"));
}

TEST(Cli, FormatIsIdempotent) {
  std::string tail = " --lexer " + f("java.lex");
  Outcome once = gaspect("format " + java("pretty.aspect") + f("class_body.java") + tail);
  ASSERT_EQ(once.status, 0) << once.out;
  EXPECT_EQ(once.out, read_fixture("class_body_formatted.java"));
  Outcome twice = gaspect("format " + java("pretty.aspect") + f("class_body_formatted.java") + tail);
  EXPECT_EQ(twice.out, once.out);
}

}  // namespace
