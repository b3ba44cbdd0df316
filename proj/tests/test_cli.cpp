#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "padic/cli.hpp"

using padic::cli::main_entry;
using Json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

// digits of a serialized p-adic number, read back as an integer mod p^n
long long value_of(const Json& x, long long p) {
  long long v = 0, scale = 1;
  for (long long d : x["digits"]) {
    v += d * scale;
    scale *= p;
    if (scale > (1LL << 40)) break;
  }
  for (int i = 0; i < x["valuation"].get<int>(); ++i) v *= p;
  return v;
}

}  // namespace

TEST_CASE("analyze certifies (5,2,2,6)") {
  auto r = run({"analyze", "--p", "5", "--q", "2", "--k", "2", "--theta", "6"});
  CHECK(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["verdict"] == "full-shift-chaos");
  CHECK(j["kappa"] == 2);
  CHECK(j["tau"] == 1);
  CHECK(j["incidence"] == Json::parse("[[1,1],[1,1]]"));
  CHECK(j["witnesses"]["covering"]["radius_exponent"] == 2);
  // centers 9 and 14 mod 25
  auto balls = j["witnesses"]["covering"]["balls"];
  REQUIRE(balls.size() == 2);
  CHECK(value_of(balls[0]["center"], 5) % 25 == 9);
  CHECK(value_of(balls[1]["center"], 5) % 25 == 14);
  // 1 is attractive, the two fixed points in X are repelling
  REQUIRE(j["fixed_points"].size() == 3);
  CHECK(j["fixed_points"][0]["class"] == "attractive");
  CHECK(j["fixed_points"][1]["class"] == "repelling");
  CHECK(j["fixed_points"][2]["class"] == "repelling");
}

TEST_CASE("analyze verdicts and exit codes") {
  auto attractor = run({"analyze", "--p", "7", "--q", "3", "--k", "2", "--theta", "8"});
  CHECK(attractor.code == 0);
  CHECK(Json::parse(attractor.out)["verdict"] == "unique-attractor");

  auto control = run({"analyze", "--p", "5", "--q", "2", "--k", "10", "--theta", "6"});
  CHECK(control.code == 2);
  CHECK(Json::parse(control.out)["verdict"] == "inconclusive");

  auto csv = run({"analyze", "--p", "7", "--q", "2", "--k", "3", "--theta", "8", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out ==
        "p,q,k,theta,s,t,kappa,tau,condition_holds,verdict\n"
        "7,2,3,8,0,1,3,1,true,full-shift-chaos\n");
}

TEST_CASE("bad input exits 1 with a message") {
  CHECK(run({"analyze", "--p", "4"}).code == 1);
  CHECK(run({"analyze", "--p", "5", "--q", "10"}).code == 1);
  CHECK(run({"analyze", "--theta", "2"}).code == 1);  // theta outside E_p
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({"analyze", "--nope"}).code == 1);
  CHECK(run({"analyze", "--format", "xml"}).code == 1);
  CHECK(run({"orbit"}).code == 1);  // needs --x
  auto r = run({"periodic", "--word", "1,3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("precision exhaustion suggests a larger precision") {
  auto r = run({"julia", "--precision", "8", "--depth", "12"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--precision 16") != std::string::npos);
}

TEST_CASE("periodic --word 1,2") {
  auto r = run({"periodic", "--word", "1,2", "--precision", "64"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  REQUIRE(j["points"].size() == 1);
  CHECK(j["points"][0]["residual_exponent"].get<int>() >= 32);
  CHECK(j["points"][0]["itinerary"] == Json::parse("[1,2,1,2]"));

  auto all = Json::parse(run({"periodic", "--depth", "3"}).out);
  CHECK(all["count"] == 8);
  CHECK(all["trace_A_n"] == "8");
}

TEST_CASE("julia, orbit and itinerary") {
  auto j = Json::parse(run({"julia", "--depth", "2"}).out);
  CHECK(j["julia"]["count"] == 8);

  auto orbit = Json::parse(run({"orbit", "--x", "3", "--depth", "40"}).out);
  CHECK(orbit["orbit"][0]["region"] == "B1");
  CHECK(orbit["convergence_to_one"]["converged"] == true);

  // 9 lies in ball 1 and its image leaves X
  auto it = Json::parse(run({"itinerary", "--x", "9", "--depth", "5"}).out);
  CHECK(it["word"] == Json::parse("[1]"));
  CHECK(it["escaped_at"] == 1);

  auto none = run({"itinerary", "--p", "7", "--q", "3", "--theta", "8", "--x", "2"});
  CHECK(none.code == 2);
}

TEST_CASE("sweep is deterministic and ordered") {
  std::vector<std::string> args{"sweep", "--p", "5", "--tmin", "1", "--tmax", "2", "--format", "csv"};
  auto a = run(args);
  auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  std::istringstream lines(a.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 9);
  CHECK(rows[1].rfind("1,1,1+5^1*1,", 0) == 0);
  CHECK(rows[8].rfind("2,4,1+5^2*4,", 0) == 0);
}

TEST_CASE("repeated runs are byte-identical") {
  for (std::string cmd : {"analyze", "julia", "periodic", "gibbs-check"}) {
    std::vector<std::string> args{cmd, "--precision", "32", "--seed", "7"};
    CHECK(run(args).out == run(args).out);
  }
}

TEST_CASE("gibbs-check") {
  auto r = run({"gibbs-check", "--p", "5", "--q", "2", "--k", "2", "--coupling", "5", "--levels", "2",
                "--precision", "32"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["as_expected"] == true);
  bool saw_perturbed = false;
  for (const auto& f : j["fields"]) {
    bool expect = f["expected"] == "compatible";
    for (const auto& c : f["compatibility"]) {
      if (expect) CHECK(c["ok"] == true);
    }
    if (!expect) {
      saw_perturbed = true;
      CHECK(f["compatibility"][0]["ok"] == false);
      CHECK(f["compatibility"][0].contains("witness"));
    }
  }
  CHECK(saw_perturbed);
  CHECK(j["fields"].size() == 6);

  // theta and coupling must agree
  CHECK(run({"gibbs-check", "--coupling", "5", "--theta", "6"}).code == 1);
}

TEST_CASE("--out writes a file") {
  const std::string path = "test_cli_out.json";
  auto r = run({"analyze", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  Json j = Json::parse(in);
  CHECK(j["verdict"] == "full-shift-chaos");
  std::remove(path.c_str());
}
