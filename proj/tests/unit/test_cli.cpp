#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rgit/cli/cli.hpp"
#include "rgit/common/errors.hpp"

using namespace rgit;
using rgit::cli::Json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("classify example") {
  auto r = call({"classify", "--weights", "1/2,1/2,1/2,1/2", "--partition", "12|3|4"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j["class"] == "strictly_semistable");
  CHECK(j["witnesses"] == Json::parse("[[1,2]]"));
}

TEST_CASE("walls example") {
  auto j = Json::parse(call({"walls", "--m", "4", "--n", "2"}).out);
  CHECK(j["walls"].size() == 7);
  int relevant = 0;
  for (const auto& w : j["walls"]) relevant += w["relevant"].get<bool>();
  CHECK(relevant == 3);
  CHECK(j["walls"][1] == Json::parse(R"({"J":[1,2],"d":1,"relevant":true,"facet":false})"));
}

TEST_CASE("polygon and chamber payloads") {
  auto stick = Json::parse(call({"polygon", "analyze", "--sides", "5,1,1,1"}).out);
  CHECK(stick["exists"] == false);
  auto kite = Json::parse(call({"polygon", "analyze", "--sides", "2,1,1,1"}).out);
  CHECK(kite["chamber"] == Json::parse(R"({"12":"+","13":"+","14":"+"})"));
  CHECK(kite["moduli_dim"] == 1);
  auto ch = Json::parse(call({"chambers", "--m", "4"}).out);
  CHECK(ch["count"] == 8);
  CHECK(ch["chambers"][0]["signature"] == Json::parse(R"({"12":"-","13":"-","14":"-"})"));
}

TEST_CASE("exit codes") {
  auto domain = call({"locate", "--weights", "5/4,1/4,1/4,1/4"});
  CHECK(domain.code == 2);
  CHECK(Json::parse(domain.out)["error"] == "NotEffective");

  auto wall = call({"relative", "forgetful", "--m", "5", "--index", "1", "--weights", "1/2,1/2,1/2,1/2", "--eps", "1/10"});
  CHECK(wall.code == 2);
  CHECK(Json::parse(wall.out)["error"] == "WallBase");

  auto ambiguous = call({"relative", "pair", "--index", "5", "--weights", "1/2,1/2,1/2,1/2", "--mode", "limit"});
  CHECK(ambiguous.code == 2);
  CHECK(Json::parse(ambiguous.out)["error"] == "BoundaryAmbiguous");

  auto rank = call({"classify", "--weights", "1,1,1", "--matrix", "[[1,1,1],[2,2,2],[0,0,0]]"});
  CHECK(rank.code == 2);
  CHECK(Json::parse(rank.out)["error"] == "RankDeficient");

  CHECK(call({"walls", "--m", "4"}).code == 1);
  CHECK(call({"walls", "--m", "four", "--n", "2"}).code == 1);
  CHECK(call({"classify", "--weights", "1/2,x", "--partition", "1|2"}).code == 1);
  CHECK(call({"nonsense"}).code == 1);
  CHECK(call({}).code == 1);
  auto bad = call({"classify", "--weights", "1/2,1/2,1/2,1/2"});
  CHECK(bad.code == 1);
  CHECK(Json::parse(bad.err)["error"] == "InputError");
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("jobs reject unknown fields and match flags") {
  CHECK_THROWS_AS(cli::execute_job(Json::parse(R"({"command":"walls","input":{"m":4,"n":2,"x":1}})")), InputError);
  CHECK_THROWS_AS(cli::execute_job(Json::parse(R"({"command":"walls","input":{"m":4,"n":2},"extra":0})")), InputError);
  CHECK_THROWS_AS(cli::execute("bogus", Json::object()), InputError);

  auto job = cli::execute_job(Json::parse(
      R"({"command":"classify","input":{"weights":["1/2","1/2","1/2","1/2"],"partition":[[1,2],[3],[4]]}})"));
  CHECK(job.text() == call({"classify", "--weights", "1/2,1/2,1/2,1/2", "--partition", "12|3|4"}).out);

  auto batch = cli::execute("classify", Json::parse(R"({"weights":"1/2,1/2,1/2,1/2","partitions":["12|3|4","1|2|3|4","123|4"]})"));
  REQUIRE(batch.json["verdicts"].size() == 3);
  CHECK(batch.json["verdicts"][0]["class"] == "strictly_semistable");
  CHECK(batch.json["verdicts"][1]["class"] == "stable");
  CHECK(batch.json["verdicts"][2]["class"] == "unstable");

  auto pts = cli::execute("classify", Json::parse(R"({"weights":"1/2,1/2,1/2,1/2","points":[[1,0],[1,0],[0,1],[1,1]]})"));
  CHECK(pts.json["class"] == "strictly_semistable");

  auto pair = cli::execute("relative", Json::parse(
      R"({"instance":"pair","index":5,"weights":"3/5,7/10,1/4,9/20","linearization":{"mode":"finite","n":12}})"));
  const auto limit = cli::execute("relative", Json::parse(
      R"({"instance":"pair","index":5,"weights":"3/5,7/10,1/4,9/20","linearization":{"mode":"limit"}})"));
  CHECK(pair.json["stable_from"].get<long>() <= 12);
  CHECK(pair.json["semistable"] == limit.json["semistable"]);
  CHECK_THROWS_AS(cli::execute("relative", Json::parse(
                      R"({"instance":"pair","index":5,"weights":"3/5,7/10,1/4,9/20","linearization":{"mode":"limit","n":3}})")),
                  InputError);
}

TEST_CASE("output files") {
  const std::string path = "test_cli_output.json";
  auto r = call({"walls", "--m", "4", "--n", "2", "--output", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(path) == call({"walls", "--m", "4", "--n", "2"}).out);
  std::remove(path.c_str());
}

TEST_CASE("render") {
  auto a = call({"render", "--u", "1,-1,0,0", "--v", "0,0,1,-1"});
  auto b = call({"render", "--u", "1,-1,0,0", "--v", "0,0,1,-1"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("<svg") != std::string::npos);
  // Square section: four corners, two traces, and a third wall containing the plane.
  CHECK(a.out.find("<polygon class=\"slice\" points=\"420.000,20.000 20.000,20.000 20.000,420.000 420.000,420.000\"") !=
        std::string::npos);
  std::size_t lines = 0, labels = 0;
  for (std::size_t p = a.out.find("<line"); p != std::string::npos; p = a.out.find("<line", p + 1)) ++lines;
  for (std::size_t p = a.out.find("<text class"); p != std::string::npos; p = a.out.find("<text class", p + 1)) ++labels;
  CHECK(lines == 2);
  CHECK(labels == 4);
  CHECK(a.out.find("data-wall=\"12\"") != std::string::npos);

  CHECK(call({"render", "--u", "1,-1,0,0", "--v", "2,-2,0,0"}).code == 2);
  CHECK(call({"render", "--u", "1,0,0,0", "--v", "0,0,1,-1"}).code == 2);
  CHECK(call({"render", "--point", "1,1,1,1", "--u", "1,-1,0,0", "--v", "0,0,1,-1"}).code == 2);
  CHECK(call({"render", "--point", "1,1,0,0", "--u", "1,-1,0,0", "--v", "0,0,1,-1"}).code == 2);
}

TEST_CASE("golden files") {
  const std::string dir = RGIT_GOLDEN_DIR;
  auto cases = Json::parse(slurp(dir + "/cases.json"));
  for (const auto& c : cases) {
    std::vector<std::string> args = c["args"].get<std::vector<std::string>>();
    if (args[0] == "run") args[2] = dir + "/" + args[2];
    auto r = call(args);
    const std::string ext = c.value("svg", false) ? ".svg" : ".json";
    INFO(c["name"].get<std::string>());
    CHECK(r.code == c.value("exit", 0));
    CHECK(r.out == slurp(dir + "/expected/" + c["name"].get<std::string>() + ext));
  }
}
