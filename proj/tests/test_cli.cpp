#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pcforge/cli.hpp"
#include "pcforge/dimacs.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  json report;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = pcforge::cli::run(args, out, err);
  json report;
  if (!out.str().empty() && out.str().front() == '{') report = json::parse(out.str());
  return {code, report, err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "pcforge_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("check urc on the q-Horn family reports the a-conjunction") {
  const std::string file = (scratch() / "psi_qhorn_3.cnf").string();
  REQUIRE(call({"gen", "psi_qhorn", "3", "-o", file}).code == 0);
  const auto r = call({"check", "urc", file, "--witness"});
  CHECK(r.code == 1);
  CHECK(r.report["verdict"] == false);
  CHECK(r.report["witness"] == json::array({4, 5, 6}));
  CHECK(r.report["witness_valid"] == true);
  CHECK(r.report["inputs"][0]["fnv1a"].get<std::string>().size() == 16);
  CHECK(r.err.find("witness") != std::string::npos);
}

TEST_CASE("gen gamma_dprime 3") {
  const auto r = call({"gen", "gamma_dprime", "3", "--companions"});
  CHECK(r.code == 0);
  CHECK(r.report["clauses"] == 13);
  CHECK(pcforge::parse_dimacs(r.report["dimacs"].get<std::string>()).formula().size() == 13);
  CHECK(r.report["companions"]["e_m"].size() == 3);
  const auto q = call({"gen", "psi_qhorn", "2", "--companions"});
  CHECK(q.report["companions"]["u_bar"].size() == 4);
}

TEST_CASE("qhorn compile with verification") {
  const std::string file = write("two_sat.cnf", "p cnf 4 4\n1 2 0\n-2 3 0\n-3 -4 0\n4 -1 0\n");
  const std::string out = (scratch() / "two_sat_urc.cnf").string();
  const auto r = call({"qhorn", "compile", file, "-o", out, "--verify"});
  CHECK(r.code == 0);
  CHECK(r.report["urc"] == true);
  CHECK(r.report["encoding"] == true);
  CHECK(fs::exists(out));
}

TEST_CASE("qhorn recognize and sat") {
  const std::string bad = write("not_qhorn.cnf", "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n");
  const auto r = call({"qhorn", "recognize", bad});
  CHECK(r.code == 1);
  CHECK(r.err.find("NOT-QHORN") != std::string::npos);
  CHECK(call({"qhorn", "sat", bad}).code == 2);
  const std::string two = write("sat2.cnf", "p cnf 2 1\n1 2 0\n");
  const auto s = call({"qhorn", "sat", two});
  CHECK(s.code == 0);
  CHECK(s.report["status"] == "SAT");
  const auto v = call({"qhorn", "recognize", two});
  CHECK(v.report["valuation"]["1"] == "1/2");
}

TEST_CASE("unit propagation") {
  const std::string file = write("chain.cnf", "p cnf 3 2\n-1 2 0\n-2 3 0\n");
  const auto r = call({"up", file, "--assume", "1"});
  CHECK(r.code == 0);
  CHECK(r.report["derived"] == json::array({1, 2, 3}));
  const std::string contra = write("contra.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  const auto c = call({"up", contra});
  CHECK(c.report["status"] == "conflict");
  CHECK(c.err.find("CONFLICT") != std::string::npos);
}

TEST_CASE("exit codes for errors and limits") {
  const std::string file = write("small.cnf", "p cnf 3 1\n1 2 3 0\n");
  CHECK(call({"check", "pc", file, "--bogus"}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"check", "pc", (scratch() / "missing.cnf").string()}).code == 2);
  CHECK(call({"check", "pc", write("broken.cnf", "p cnf 2 1\n1 7 0\n")}).code == 2);
  const auto limited = call({"check", "pc", file, "--limit", "2"});
  CHECK(limited.code == 3);
  CHECK(limited.report.contains("error"));
  CHECK(call({"check", "pc", file}).code == 0);
}

TEST_CASE("remaining subcommands") {
  const std::string a = write("eq_a.cnf", "p cnf 3 2\n-1 2 0\n-2 3 0\n");
  const std::string b = write("eq_b.cnf", "p cnf 3 3\n-1 2 0\n-2 3 0\n-1 3 0\n");
  CHECK(call({"equiv", a, b}).code == 0);
  CHECK(call({"equiv", a, write("eq_c.cnf", "p cnf 3 1\n-1 2 0\n")}).code == 1);

  const auto p = call({"primes", a});
  CHECK(p.report["clauses"] == 3);

  const std::string enc = (scratch() / "parity_enc.cnf").string();
  const std::string spec = (scratch() / "parity_cnf.cnf").string();
  call({"gen", "parity_enc", "3", "-o", enc});
  call({"gen", "parity_cnf", "3", "-o", spec});
  CHECK(call({"encodes", enc, spec}).code == 0);
  CHECK(call({"check", "pc", enc}).code == 0);

  const auto d = call({"dr", write("or.cnf", "p cnf 2 1\n1 2 0\n")});
  CHECK(d.report["meta_vars"] == 4);
  CHECK(d.report["dimacs"].get<std::string>().find("c meta 3 -1") != std::string::npos);

  const std::string gp = (scratch() / "gamma_prime_2.cnf").string();
  call({"gen", "gamma_prime", "2", "-o", gp});
  CHECK(call({"check", "pc-dr", gp}).code == 0);
  const auto red = call({"reduce", "urc", gp, "--seed", "5"});
  CHECK(red.code == 0);
  CHECK(red.report["after"].get<int>() <= red.report["before"].get<int>());
  CHECK(call({"reduce", "pc", write("notpc.cnf", "p cnf 3 2\n-1 2 0\n-2 3 0\n")}).code == 0);

  CHECK(call({"absorb", a, "--clause", "-1,2"}).code == 0);
  CHECK(call({"absorb", a, "--clause", "-1 3"}).code == 0);
  const std::string delta = write("delta.cnf", "p cnf 4 3\n-1 2 0\n-1 3 0\n-2 -3 4 0\n");
  CHECK(call({"absorb", delta, "--clause", "-1 4"}).code == 1);
}

TEST_CASE("suite subcommand") {
  const auto r = call({"suite", "--only", "10,1"});
  CHECK(r.code == 0);
  CHECK(r.report["criteria"].size() == 2);
}
