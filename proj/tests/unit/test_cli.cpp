#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pbdcs/cli.hpp"
#include "pbdcs/design.hpp"

using json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = pbdcs::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "pbdcs_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("designs gen and validate") {
  auto path = tmp("sts15.pbd");
  auto gen = run({"designs", "gen", "--family", "sts", "--v", "15", "-o", path});
  CHECK(gen.code == 0);
  CHECK(pbdcs::read_design(path).size() == 35);
  auto val = run({"designs", "validate", path, "--json"});
  CHECK(val.code == 0);
  auto j = json::parse(val.out);
  CHECK(j["status"] == "OK");
  CHECK(j["payload"]["ok"] == true);

  auto broken = tmp("broken.pbd");
  std::ofstream(broken) << "v 7 PBD\n0 1 2\n";
  CHECK(run({"designs", "validate", broken}).code == 3);
  auto oor = tmp("oor.pbd");
  std::ofstream(oor) << "v 3 PBD\n0 1 3\n";
  auto r = run({"designs", "validate", oor, "--json"});
  CHECK(r.code == 3);
  auto je = json::parse(r.out);
  CHECK(je["status"] == "ERROR");
  CHECK(je["diagnostics"][0].get<std::string>().find(".OUT_OF_RANGE") != std::string::npos);

  auto none = run({"designs", "gen", "--family", "search", "--v", "6", "--k-set", "3", "-o", tmp("x.pbd"), "--json"});
  CHECK(none.code == 0);
  CHECK(json::parse(none.out)["payload"]["result"] == "NOT_FOUND");
  CHECK(run({"designs", "gen", "--family", "pg2", "--q", "4", "-o", tmp("x.pbd")}).code != 0);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"designs", "gen", "--family", "unknown", "-o", tmp("u.pbd")}).code == 2);
  CHECK(run({"recover", "--frame", tmp("missing.fmf"), "--sparsity", "1", "--trials", "1", "--seed", "1",
             "--solver", "bp"})
            .code == 4);
}

TEST_CASE("frame build and analyze") {
  auto design = tmp("fano.pbd");
  REQUIRE(run({"designs", "gen", "--family", "pg2", "--q", "2", "-o", design}).code == 0);
  auto frame = tmp("fano.fmf");
  REQUIRE(run({"frame", "build", "--design", design, "--construction", "con1", "--hadamard", "sylvester", "-o",
               frame})
              .code == 0);
  auto a = run({"frame", "analyze", frame, "--design", design, "--json"});
  REQUIRE(a.code == 0);
  auto j = json::parse(a.out);
  CHECK(j["payload"]["etf"] == true);
  CHECK(std::abs(j["payload"]["mip"].get<double>() - 1.0 / 3.0) < 1e-12);
  CHECK(j["payload"]["bounds"]["certified_epsilon"] == 0.0);

  auto ag = tmp("ag3.pbd");
  REQUIRE(run({"designs", "gen", "--family", "ag2", "--q", "3", "-o", ag}).code == 0);
  auto r = run({"frame", "build", "--design", ag, "--construction", "mub", "--mub-e", "1", "-o", tmp("m.fmf"),
                "--json"});
  CHECK(r.code == 4);
  CHECK(json::parse(r.out)["diagnostics"][0].get<std::string>().find("NONPRIME_REPLICATION") !=
        std::string::npos);
}

TEST_CASE("plan") {
  auto r = run({"plan", "--n", "3000", "--k", "5", "--json"});
  REQUIRE(r.code == 0);
  auto p = json::parse(r.out)["payload"];
  CHECK(p["result"] == "FOUND");
  CHECK(p["v"] == 249);
  CHECK(p["alpha"] == json::array({876, 1248, 876}));
  CHECK(p["existence"] == "asymptotic-only");
  auto nf = json::parse(run({"plan", "--n", "24", "--h", "5", "--json"}).out);
  CHECK(nf["status"] == "OK");
  CHECK(nf["payload"]["result"] == "NOT_FOUND");
  CHECK(run({"plan", "--n", "24"}).code == 2);
}

TEST_CASE("recover and pipeline are byte-for-byte repeatable") {
  std::vector<std::string> pipe = {"pipeline", "--family", "pg2", "--q", "2", "--construction", "con1",
                                   "--hadamard", "sylvester", "--sparsity", "1", "--trials", "20",
                                   "--seed", "7", "--json"};
  auto a = run(pipe);
  auto b = run(pipe);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto j = json::parse(a.out)["payload"];
  CHECK(j["analyze"]["etf"] == true);
  CHECK(j["recover"]["successes"] == 20);

  auto design = tmp("sts9.pbd");
  REQUIRE(run({"designs", "gen", "--family", "sts", "--v", "9", "-o", design}).code == 0);
  auto frame = tmp("sts9.fmf");
  REQUIRE(run({"frame", "build", "--design", design, "--construction", "con0", "-o", frame}).code == 0);
  auto csv = tmp("trials.csv");
  std::vector<std::string> rec = {"recover", "--frame", frame, "--sparsity", "1", "--trials", "10", "--seed",
                                  "3", "--solver", "omp", "--json", "--csv", csv};
  auto r1 = run(rec);
  auto r2 = run(rec);
  REQUIRE(r1.code == 0);
  CHECK(r1.out == r2.out);
  CHECK(json::parse(r1.out)["payload"]["successes"] == 10);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "trial,t,solver,rel_error,iters,success");
}
