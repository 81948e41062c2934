#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <pmix/cli.hpp>

#include "support.hpp"

using namespace pmix;

namespace
{

struct Run
{
  int status;
  std::string out, err;

  Json doc() const { return parse_json(out, "stdout"); }
  Json error() const { return parse_json(err, "stderr"); }
};

Run run(std::vector<std::string> args)
{
  std::ostringstream out, err;
  int const status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

std::string group(char const *name)
{
  return test::group_path(name);
}

std::filesystem::path scratch_dir()
{
  auto dir = std::filesystem::temp_directory_path() / "pmix_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

} // namespace

TEST_CASE("zeta")
{
  auto r = run({"zeta", "--group", group("a5"), "--x", "2"});
  CHECK(r.status == 0);
  auto d = r.doc();
  CHECK(d["tool"] == "pmix 0.1.0");
  CHECK(d["command"] == "zeta");
  CHECK(d["config"]["x"] == 2.0);
  CHECK(d["result"]["zeta"].get<double>() ==
        doctest::Approx(1 + 2.0 / 9 + 1.0 / 16 + 1.0 / 25).epsilon(1e-14));
}

TEST_CASE("identities on S3")
{
  auto r = run({"identities", "--group", group("s3"), "--seed", "7", "--trials", "100"});
  CHECK(r.status == 0);
  CHECK(r.doc()["result"]["triple_failures"] == 0);
  CHECK(r.doc()["result"]["cyclic_failures"] == 0);
  CHECK(r.doc()["result"]["cyclic_checks"] == 500);
}

TEST_CASE("certify")
{
  auto vac = run({"certify", "--group", group("a5"), "--epsilon", "1.5", "--eta", "0.5"});
  CHECK(vac.status == 0);
  CHECK(vac.doc()["result"]["outcome"] == "certified");
  CHECK(vac.doc()["result"]["trials"] == 0);

  auto ref = run({"certify", "--group", group("c2"), "--epsilon", "0.4", "--eta", "0.1"});
  CHECK(ref.status == 1);
  CHECK(ref.doc()["result"]["outcome"] == "refuted");
  CHECK(ref.doc()["result"]["counterexample"]["A"]["classes"] == Json::array({1}));

  auto path = scratch_dir() / "request.json";
  std::ofstream(path) << R"({"group": ")" << group("a5")
                      << R"(", "epsilon": 0.5, "eta": 0.9, "i": 3, "mode": "exhaustive-normal", "budget": 0, "seed": 5})";
  auto req = run({"certify", "--request", path.string()});
  CHECK(req.status == 0);
  CHECK(req.doc()["result"]["outcome"] == "certified");
  CHECK(req.doc()["config"]["seed"] == 5);
  CHECK(req.doc()["config"]["group"] == std::filesystem::path(group("a5")).generic_string());
}

TEST_CASE("reports are deterministic")
{
  std::vector<std::vector<std::string>> cmds = {
    {"certify", "--group", group("a5"), "--epsilon", "0.5", "--eta", "0.9", "--i", "2", "--budget", "100", "--seed", "3"},
    {"identities", "--group", group("a4"), "--seed", "1", "--trials", "20"},
    {"gowers", "--group", group("a5"), "--A", R"(random:{"density":0.9,"seed":1})", "--B", "all", "--C", "all"},
  };
  for (auto const &c : cmds) {
    auto a = run(c), b = run(c);
    CHECK(a.status == b.status);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("every command maps to an exit status")
{
  std::string const a5 = group("a5");
  struct Case
  {
    std::vector<std::string> args;
    int status;
  };
  std::vector<Case> cases = {
    {{"classes", "--group", a5}, 0},
    {{"chartable", "--group", a5}, 0},
    {{"mindeg", "--group", a5}, 0},
    {{"count", "--group", a5, "--A", "class:1", "--B", "class:1", "--C", "all"}, 0},
    {{"count", "--group", a5, "--A", "all", "--B", "all", "--C", "class:0", "--g", "0"}, 0},
    {{"prob", "--group", a5, "--A", "class:3", "--B", "class:3", "--C", "class:0"}, 0},
    {{"frobenius", "--group", a5, "--i", "1", "--j", "2", "--l", "4", "--exponent", "0.7"}, 0},
    {{"gowers", "--group", a5, "--A", "all", "--B", "all", "--C", "all"}, 0},
    {{"gowers", "--group", a5, "--A", "class:4", "--B", "class:4", "--C", "class:4", "--eta", "0.01"}, 1},
    {{"trick", "--group", a5, "--A", "all", "--B", "all", "--C", "all", "--g", "5"}, 0},
    {{"ratio-scan", "--group", a5, "--target-exponent", "0.1"}, 0},
    {{"split", "--group", a5, "--X", "all", "--threshold", "12"}, 0},
    {{"bounds", "--group", a5, "--A", "all", "--B", "all", "--C", "all", "--alpha", "0.9", "--eta", "0.9"}, 0},
    {{"bounds", "--group", a5, "--A", "all", "--B", "all", "--C", "all", "--alpha", "0.5", "--eta", "0.5"}, 1},
    {{"report", "--group", a5, "--delta", "0.1", "--eta", "0.2"}, 1},
    {{"propagate", "--group", a5, "--epsilon", "0.5", "--eta", "0.4"}, 2},
    {{"mindeg", "--group", group("trivial")}, 2},
    {{"prob", "--group", a5, "--A", "[]", "--B", "all", "--C", "all"}, 2},
    {{"split", "--group", a5, "--X", "[1]", "--threshold", "1"}, 2},
    {{"classes", "--group", test::fixture_path("syntax_error.json")}, 2},
    {{"classes"}, 2},
    {{"nonsense"}, 2},
    {{"zeta", "--group", a5}, 2},
  };
  for (auto const &c : cases) {
    CAPTURE(c.args[0]);
    auto r = run(c.args);
    CHECK(r.status == c.status);
    if (r.status == 2) {
      CHECK(r.out.empty());
      auto e = r.error();
      CHECK(e["error"]["code"].is_string());
    } else {
      CHECK(r.err.empty());
    }
  }
}

TEST_CASE("error codes are machine readable")
{
  auto r = run({"classes", "--group", test::fixture_path("not_a_bijection.json")});
  CHECK(r.error()["error"]["code"] == "NotABijection");
  auto t = run({"mindeg", "--group", group("trivial")});
  CHECK(t.error()["error"]["code"] == "TrivialGroup");
  auto p = run({"propagate", "--group", group("s3"), "--epsilon", "0.3", "--eta", "0.4"});
  CHECK(p.error()["error"]["code"] == "PreconditionNotCertified");
  auto v = run({"zeta", "--group", group("s3"), "--table", test::fixture_path("s3_table_perturbed.json"), "--x", "1"});
  CHECK(v.error()["error"]["code"] == "ValidationFailed");
}

TEST_CASE("chartable output feeds --table")
{
  auto path = scratch_dir() / "psl.json";
  auto w = run({"chartable", "--group", group("psl2_7"), "--output", path.string()});
  CHECK(w.status == 0);
  CHECK(w.out.empty());
  auto again = run({"chartable", "--group", group("psl2_7"), "--table", path.string()});
  CHECK(again.out == read_file(path));
  auto m = run({"mindeg", "--group", group("psl2_7"), "--table", path.string()});
  CHECK(m.doc()["result"]["min_degree"] == 3);
}

TEST_CASE("help and version")
{
  CHECK(run({"--help"}).status == 0);
  auto v = run({"--version"});
  CHECK(v.status == 0);
  CHECK(v.out == "pmix 0.1.0\n");
}

TEST_CASE("run_command without the parser")
{
  RunConfig cfg;
  cfg.command = "mindeg";
  cfg.group = group("sl2_8");
  auto r = run_command(cfg);
  CHECK(r.status == ExitPass);
  CHECK(r.document["result"]["min_degree"] == 7);

  cfg.command = "frobenius";
  auto bad = run_command(cfg);
  CHECK(bad.status == ExitError);
  CHECK(bad.document["error"]["code"] == "InvalidArgument");
}
