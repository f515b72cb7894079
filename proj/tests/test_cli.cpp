#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using Catch::Matchers::ContainsSubstring;
using nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// runs the installed binary with stdout/stderr captured in temp files
CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path();
  const auto tag = std::to_string(::getpid()) + "_" + std::to_string(counter++);
  const auto out = dir / ("entropia_cli_out_" + tag);
  const auto err = dir / ("entropia_cli_err_" + tag);
  const std::string cmd = std::string(ENTROPIA_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int raw = std::system(cmd.c_str());
  CliResult r;
  r.code = (raw >= 0 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  std::filesystem::remove(out);
  std::filesystem::remove(err);
  return r;
}

}  // namespace

TEST_CASE("cli: entropy text output and exit code") {
  const CliResult r = run_cli("entropy 10");
  REQUIRE(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("H = 0.693147180560 nats"));
  CHECK_THAT(r.out, ContainsSubstring("2 * 5"));
  CHECK_THAT(r.out, ContainsSubstring("Omega = 2"));

  const CliResult bits = run_cli("entropy 10 --base 2");
  REQUIRE(bits.code == 0);
  CHECK_THAT(bits.out, ContainsSubstring("H = 1.00000000000 bits"));

  const CliResult hart = run_cli("entropy 10 --base 10");
  CHECK_THAT(hart.out, ContainsSubstring("hartleys"));
}

TEST_CASE("cli: entropy json record round-trips") {
  const CliResult r = run_cli("entropy 10 --format json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("tool_version").is_string());
  CHECK(j.at("command") == "entropy 10");
  CHECK(j.at("inputs").at("n") == 10);
  REQUIRE(j.at("results").is_array());
  bool found_h = false;
  for (const auto& res : j["results"]) {
    if (res.at("name") == "H") {
      found_h = true;
      CHECK(res.at("value").get<double>() ==
            Catch::Approx(std::log(2.0)).margin(1e-15));
      CHECK(res.at("display") == "0.693147180560");
      CHECK(res.at("unit") == "nats");
    }
  }
  CHECK(found_h);
  CHECK(json::parse(j.dump()) == j);  // serialization round-trips
}

TEST_CASE("cli: divergence and its domain error") {
  const CliResult ok = run_cli("divergence 100 200");
  REQUIRE(ok.code == 0);
  CHECK_THAT(ok.out, ContainsSubstring("D = 0.0204109972601 nats"));

  const CliResult bad = run_cli("divergence 100 30");
  CHECK(bad.code == 2);
  CHECK_THAT(bad.err, ContainsSubstring("omega mismatch"));
}

TEST_CASE("cli: factor and expdivisors") {
  const CliResult f = run_cli("factor 360");
  REQUIRE(f.code == 0);
  CHECK_THAT(f.out, ContainsSubstring("360 = 2^3 * 3^2 * 5"));
  CHECK_THAT(f.out, ContainsSubstring("tau_e = 4"));

  const CliResult e = run_cli("expdivisors 72");
  REQUIRE(e.code == 0);
  CHECK_THAT(e.out, ContainsSubstring("6 = 2 * 3"));
  CHECK_THAT(e.out, ContainsSubstring("72 = 2^3 * 3^2"));
  CHECK_THAT(e.out, ContainsSubstring("tau_e = 4"));

  const CliResult one = run_cli("expdivisors 1");
  CHECK(one.code == 2);
}

TEST_CASE("cli: usage errors exit 64") {
  CHECK(run_cli("entropy abc").code == 64);
  CHECK(run_cli("entropy").code == 64);
  CHECK(run_cli("bogus 10").code == 64);
  CHECK(run_cli("entropy 10 --base 7").code == 64);
  CHECK(run_cli("ideal -1 90 --divergence-to xyz").code == 64);
  CHECK(run_cli("").code == 64);  // a subcommand is required
}

TEST_CASE("cli: domain errors exit 2") {
  CHECK(run_cli("entropy 0").code == 2);
  CHECK(run_cli("ideal 12 10").code == 2);       // d not squarefree
  CHECK(run_cli("ideal -1 21 --divergence-to 10").code == 2);  // omega mismatch
  const CliResult r = run_cli("verify --prop P-NOPE");
  CHECK(r.code == 2);
  CHECK_THAT(r.err, ContainsSubstring("unknown property"));
}

TEST_CASE("cli: ideal decomposition report") {
  const CliResult r = run_cli("ideal -1 90 --divergence-to radical");
  REQUIRE(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("discriminant = -4"));
  CHECK_THAT(r.out, ContainsSubstring("(90) = P(2)^2 * P(3)^2 * P(5) * P'(5)"));
  CHECK_THAT(r.out, ContainsSubstring("P(2): e=2 f=1 (ramified)"));
  CHECK_THAT(r.out, ContainsSubstring("P(3): e=2 f=2 (inert)"));
  CHECK_THAT(r.out, ContainsSubstring("H = 1.32966134885 nats"));
  CHECK_THAT(r.out, ContainsSubstring("D(I||gamma(I)) = 0.0566330122651 nats"));
  CHECK_THAT(r.out, ContainsSubstring("D + H = 1.38629436112 nats"));

  const CliResult j = run_cli("ideal -19 35 --format json");
  REQUIRE(j.code == 0);
  const json rec = json::parse(j.out);
  CHECK(rec.at("inputs").at("discriminant") == -19);
  bool found = false;
  for (const auto& res : rec["results"])
    if (res.at("name") == "decomposition") {
      found = true;
      REQUIRE(res.at("value").size() == 4);
      CHECK(res["value"][0].at("kind") == "split");
      CHECK(res["value"][0].at("e") == 1);
      CHECK(res["value"][0].at("f") == 1);
    }
  CHECK(found);
}

TEST_CASE("cli: verify text, csv and exit codes") {
  const CliResult ok = run_cli("verify --prop P-1.1-entropy-bound --max 2000");
  REQUIRE(ok.code == 0);
  CHECK_THAT(ok.out, ContainsSubstring("holds-on-range"));
  CHECK_THAT(ok.out, ContainsSubstring("tested=1999"));

  // survey properties report but do not fail ...
  const CliResult sv = run_cli("verify --prop P-COR-4.2 --max 40");
  CHECK(sv.code == 0);
  CHECK_THAT(sv.out, ContainsSubstring("surveyed"));

  // ... unless assert mode is forced
  const CliResult forced = run_cli("verify --prop P-COR-4.2 --max 40 --mode assert");
  CHECK(forced.code == 1);

  const CliResult csv = run_cli("verify --prop P-THM-2.6 --max 800 --format csv");
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("property,inputs,lhs,rhs,margin\n", 0) == 0);
  CHECK_THAT(csv.out, ContainsSubstring("P-THM-2.6,\"m=10;n=693\""));
}

TEST_CASE("cli: verify json schema and --out") {
  const auto path = std::filesystem::temp_directory_path() /
                    ("entropia_report_" + std::to_string(::getpid()) + ".json");
  const CliResult r = run_cli("verify --prop P-1.2-special-forms --max 500 "
                              "--format json --out " + path.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const json j = json::parse(slurp(path));
  std::filesystem::remove(path);
  CHECK(j.at("tool_version").is_string());
  CHECK(j.at("command") == "verify --prop P-1.2-special-forms --max 500");
  REQUIRE(j.at("reports").size() == 1);
  const json& rep = j["reports"][0];
  CHECK(rep.at("property") == "P-1.2-special-forms");
  CHECK(rep.at("verdict") == "holds-on-range");
  CHECK(rep.at("tested").get<long long>() > 0);
  CHECK(rep.at("violations").is_array());
  CHECK(rep.at("elapsed_ms").is_number());
}

TEST_CASE("cli: verify reports are deterministic across worker counts") {
  const std::string base = "verify --prop P-2.5-coprime-k --format json --jobs ";
  json a = json::parse(run_cli(base + "1").out);
  json b = json::parse(run_cli(base + "3").out);
  for (auto* j : {&a, &b})
    for (auto& rep : (*j)["reports"]) rep["elapsed_ms"] = 0.0;
  CHECK(a == b);
  CHECK(a.at("command") == "verify --prop P-2.5-coprime-k");  // no --jobs echo
}

TEST_CASE("cli: ENTROPIA_JOBS provides the default worker count") {
  const CliResult r = run_cli("verify --prop P-1.1-entropy-bound --max 1000");
  REQUIRE(r.code == 0);
  // env default must not change results
  const auto dir = std::filesystem::temp_directory_path();
  const auto tag = dir / ("entropia_env_" + std::to_string(::getpid()));
  const std::string cmd = std::string("ENTROPIA_JOBS=4 ") + ENTROPIA_CLI_PATH +
                          " verify --prop P-1.1-entropy-bound --max 1000 > " +
                          tag.string() + " 2>/dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  const std::string envout = slurp(tag);
  std::filesystem::remove(tag);
  CHECK_THAT(envout, ContainsSubstring("tested=999"));
  CHECK_THAT(envout, ContainsSubstring("holds-on-range"));
}

TEST_CASE("cli: examples command reproduces the worked numerics") {
  const CliResult r = run_cli("examples");
  REQUIRE(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("H(10)"));
  CHECK_THAT(r.out, ContainsSubstring("0.693147180560"));
  CHECK_THAT(r.out, ContainsSubstring("H(40)"));
  CHECK_THAT(r.out, ContainsSubstring("2.2493"));       // flagged misprint
  CHECK_THAT(r.out, ContainsSubstring("D(100||200)"));
  CHECK_THAT(r.out, ContainsSubstring("0.0088"));       // flagged misprint
  CHECK_THAT(r.out, ContainsSubstring("all reproduced within 1e-9"));
  const auto first = r.out.find("MISPRINT");
  REQUIRE(first != std::string::npos);
  CHECK(r.out.find("MISPRINT", first + 1) != std::string::npos);  // two of them
}

TEST_CASE("cli: help and version") {
  const CliResult h = run_cli("--help");
  CHECK(h.code == 0);
  CHECK_THAT(h.out, ContainsSubstring("verify"));
  CHECK_THAT(h.out, ContainsSubstring("expdivisors"));
  const CliResult v = run_cli("--version");
  CHECK(v.code == 0);
  CHECK_THAT(v.out, ContainsSubstring("0.1.0"));
}
