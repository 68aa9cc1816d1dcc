#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "herbrand/proofcalc.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Run run(const std::vector<std::string>& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + quote(HERBRAND_CLI);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  auto dir = fs::temp_directory_path() / ("herbrand_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

fs::path write(const std::string& name, const std::string& text) {
  auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

const char* kRunning =
    "% transitivity and upper bounds\n"
    "(!a,b,c.(R(a,b) & R(b,c) -> R(a,c))) & (!x,y.?m.(R(x,m) & R(y,m)))\n"
    "  -> !u,v,w.?n.(R(u,n) & R(v,n) & R(w,n))\n";

}  // namespace

TEST_CASE("prove writes a derivation that checks") {
  auto problem = write("running.p", kRunning);
  auto proof = scratch() / "running.drv";
  auto r = run({"prove", problem.string(), "--method", "dp", "--proof-out", proof.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("status: proof-found") != std::string::npos);
  CHECK(r.out.find("order: 4") != std::string::npos);
  REQUIRE(fs::exists(proof));
  std::ifstream in(proof);
  std::stringstream ss;
  ss << in.rdbuf();
  auto d = herbrand::parse_derivation(ss.str());
  CHECK_FALSE(herbrand::check(d));
  CHECK(d.count(herbrand::RuleTag::ModusPonens) == 0);

  auto c = run({"check", proof.string()});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("ok: ", 0) == 0);
  auto golden = run({"check", std::string(HERBRAND_TEST_DATA) + "/mp_elimination_example.deriv"});
  CHECK(golden.code == 0);
  CHECK(golden.out == "ok: 19 steps\n");
}

TEST_CASE("exit codes") {
  auto gave_up = run({"prove", "-e", "?x. P(x)", "--max-order", "2"});
  CHECK(gave_up.code == 1);
  CHECK(gave_up.out.find("status: gave-up") != std::string::npos);
  CHECK(gave_up.out.find("falsifying structure") != std::string::npos);
  CHECK(gave_up.out.find("pred P: (e0)->F") != std::string::npos);

  CHECK(run({"prove", write("bad.p", "P(a").string()}).code == 2);
  CHECK(run({"prove", (scratch() / "missing.p").string()}).code == 2);
  CHECK(run({"prove", "-e", "P(a) & P(a,b)"}).code == 2);
  CHECK(run({"prove", "-e", "P(a) | ~P(a)", "--method", "magic"}).code == 2);
  CHECK(run({"transform", "-e", "!x. P(x)", "--pass", "relativize"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);

  auto bad_deriv = write("bad.drv", "0 | SententialTautologyAxiom | premises= | at= | data=- | P(a)\n");
  auto v = run({"check", bad_deriv.string()});
  CHECK(v.code == 1);
  CHECK(v.out.rfind("violation at step 0", 0) == 0);
}

TEST_CASE("transform passes") {
  CHECK(run({"transform", "-e", "(?x. P(x)) | ~?y. P(y)", "--pass", "skolem-outer"}).out ==
        "(?x. P(x)) | ~P(y_star)\n");
  CHECK(run({"transform", "-e", "P(a) | Q", "--pass", "prenex"}).out == "P(a) | Q\n");
  CHECK(run({"transform", "-e", "(?x. P(x)) | ~?y. P(y)", "--pass", "prenex"}).out == "?x. !y. P(x) | ~P(y)\n");
  CHECK(run({"transform", "-e", "(!x. P(x)) | !x. Q(x)", "--pass", "rectify"}).out == "(!x. P(x)) | !x#1. Q(x#1)\n");
  auto g = run({"transform", "-e", "!x. P(x)", "--pass", "relativize", "--guard", "N"});
  CHECK(g.code == 0);
  CHECK(g.out.find("N(x)") != std::string::npos);
}

TEST_CASE("other subcommands") {
  auto u = run({"unify", "P(x, f(a,y))", "P(a, f(z,b))"});
  CHECK(u.code == 0);
  CHECK(u.out == "mgu: {x->a, y->b, z->a}\n");
  auto occurs = run({"unify", "x", "f(x)"});
  CHECK(occurs.code == 1);
  CHECK(occurs.out.find("occurs") != std::string::npos);

  CHECK(run({"arith", "decide", "!x. S(x) != 0"}).out == "derivable\n");
  CHECK(run({"arith", "decide", "?x. S(x) = x"}).out == "refutable\n");
  CHECK(run({"arith", "decide", "P(0)"}).code == 2);

  auto e = run({"expand", "-e", "(?x. P(x)) | ~?y. P(y)", "-n", "2"});
  CHECK(e.code == 0);
  CHECK(e.out.find("expansion: P(y_star) | ~P(y_star)") != std::string::npos);
  CHECK(e.out.find("property C: holds") != std::string::npos);
  auto lex = run({"expand", "-e", "(?x. P(x)) | ~?y. P(y)", "-n", "2", "--always-lexicon"});
  CHECK(lex.out.find("2 terms, lexicon") != std::string::npos);

  auto c = run({"complexity", write("running2.p", kRunning).string(), "-n", "4"});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("complexity: 2\n", 0) == 0);

  auto s = run({"selftest"});
  CHECK(s.code == 0);
  CHECK(s.out.find("FAIL") == std::string::npos);
  CHECK(s.out.find("selftest ok") != std::string::npos);
}

TEST_CASE("json records") {
  auto j = run({"prove", "-e", "P(a) | ~P(a)", "--json"});
  CHECK(j.code == 0);
  CHECK(j.out.rfind("{\"command\":\"prove\"", 0) == 0);
  CHECK(j.out.find("\"status\":\"proof-found\"") != std::string::npos);
  CHECK(std::count(j.out.begin(), j.out.end(), '\n') == 1);
}

TEST_CASE("budget from the environment") {
  auto problem = write("running3.p", kRunning);
  auto small = run({"prove", problem.string(), "--method", "gilmore"}, "HERBRAND_BUDGET=10");
  CHECK(small.code == 1);
  auto flag = run({"prove", problem.string(), "--method", "gilmore", "--budget", "10"});
  CHECK(flag.code == 1);
  CHECK(run({"prove", problem.string(), "--method", "gilmore"}).code == 0);
}

TEST_CASE("output is deterministic") {
  auto problem = write("running4.p", kRunning);
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"prove", problem.string(), "--method", "resolution"},
        std::vector<std::string>{"prove", problem.string(), "--method", "race"},
        std::vector<std::string>{"expand", "-e", "(!x. P(x)) -> P(a)", "-n", "3"},
        std::vector<std::string>{"selftest"}}) {
    auto a = run(args);
    auto b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
  fs::remove_all(scratch());
}
