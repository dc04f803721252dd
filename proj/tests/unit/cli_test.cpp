#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "cli/cli.hpp"
#include "cli/formats.hpp"
#include "testset/generators.hpp"
#include "testset/solvers.hpp"

using namespace testset;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "testset_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("instance file round trip") {
  auto li = complete({3, 2});
  li.instance.set_test_names(std::vector<std::string>(li.instance.test_count(), "t"));
  const auto doc = cli::instance_to_json(li);
  const auto back = cli::instance_from_json(doc);
  CHECK(back == li);
  CHECK(cli::dump(cli::instance_to_json(back)) == cli::dump(doc));

  for (const auto& g : {compact(3), atom({3, 2}), level({2, 2, 2}), sc_adversarial_instance(64, 4)}) {
    const auto text = cli::dump(cli::instance_to_json(g));
    CHECK(cli::instance_from_json(cli::Json::parse(text)) == g);
  }

  CHECK_THROWS_AS(cli::instance_from_json(cli::Json::parse(R"({"n": 2, "tests": [[5]]})")), cli::FormatError);
  CHECK_THROWS_AS(cli::instance_from_json(cli::Json::parse(R"({"tests": []})")), cli::FormatError);
  CHECK_THROWS_AS(cli::instance_from_json(cli::Json::parse(R"({"n": 2, "tests": [[0]], "planted_optimal": [3]})")),
                  cli::FormatError);
}

TEST_CASE("matrix format") {
  const Instance inst(3, {{0, 2}, {}});
  const auto text = cli::instance_to_matrix(inst);
  CHECK(text == "3 2\n101\n000\n");
  CHECK(cli::instance_from_matrix(text) == inst);
  CHECK_THROWS_AS(cli::instance_from_matrix("3 1\n10\n"), cli::FormatError);
  CHECK_THROWS_AS(cli::instance_from_matrix("2 1\n12\n"), cli::FormatError);
  CHECK_THROWS_AS(cli::instance_to_matrix(atom({3, 2}).instance), cli::FormatError);

  // Conversion preserves solver output.
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 30; ++rep) {
    const auto r = random_instance(2 + rng() % 20, 3 + rng() % 10, 0.5, rng());
    if (!r.feasible) continue;
    const auto back = cli::instance_from_matrix(cli::instance_to_matrix(r.instance));
    CHECK(sga(back) == sga(r.instance));
  }
}

TEST_CASE("gen and solve") {
  const auto path = scratch("atom.json").string();
  auto g = invoke({"gen", "atom", "--q", "3", "--t", "2", "-o", path});
  REQUIRE(g.code == cli::kOk);
  const auto li = cli::load_instance(path);
  CHECK(li.instance.item_count() == 128);
  CHECK(li.instance.test_count() == 28);
  CHECK(fs::exists(path + ".size.json"));

  const auto report = scratch("atom.report.json").string();
  const auto trace = scratch("atom.csv").string();
  auto s = invoke({"solve", path, "--alg", "sga", "-o", report, "--trace", trace});
  REQUIRE(s.code == cli::kOk);
  const auto doc = cli::Json::parse(cli::read_text(report));
  CHECK(doc["result"]["size"] == 12);
  for (const auto& l : doc["result"]["selected_labels"]) CHECK(l.get<std::string>().rfind("T'", 0) == 0);
  CHECK(cli::read_text(trace).rfind("step,test_id,gain,measure_before,measure_after,phase\n", 0) == 0);

  // Same command twice: byte-identical report.
  const auto report2 = scratch("atom.report2.json").string();
  REQUIRE(invoke({"solve", path, "--alg", "sga", "-o", report2, "--trace", trace}).code == 0);
  CHECK(cli::read_text(report) == cli::read_text(report2));

  const auto c1 = scratch("c1.json").string();
  REQUIRE(invoke({"gen", "compact", "--q", "1", "-o", c1}).code == 0);
  CHECK(cli::load_instance(c1).instance.item_count() == 2);

  const auto c3 = scratch("c3.json").string();
  REQUIRE(invoke({"gen", "compact", "--q", "3", "-o", c3}).code == 0);
  auto e = invoke({"solve", c3, "--alg", "exact"});
  REQUIRE(e.code == 0);
  CHECK(cli::Json::parse(e.out)["result"]["size"] == 3);
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == cli::kBadArgs);
  CHECK(invoke({"gen", "nope", "-o", "x.json"}).code == cli::kBadArgs);
  CHECK(invoke({"gen", "atom", "--q", "1", "-o", scratch("bad.json").string()}).code == cli::kBadArgs);
  CHECK(invoke({"gen", "complete", "--q", "2", "--J", "2", "-o", scratch("bad.json").string()}).code == cli::kBadArgs);
  CHECK(invoke({"gen", "level", "--q", "3", "--J", "5", "--t", "1", "-o", scratch("big.json").string()}).code ==
        cli::kSizeCap);

  const auto infeasible = scratch("inf.json");
  cli::write_text(infeasible, R"({"n": 3, "tests": [[0]]})");
  auto r = invoke({"solve", infeasible.string()});
  CHECK(r.code == cli::kInfeasible);
  CHECK(r.err.find("items 1 and 2") != std::string::npos);

  const auto broken = scratch("broken.json");
  cli::write_text(broken, "{not json");
  CHECK(invoke({"solve", broken.string()}).code == cli::kIo);
  CHECK(invoke({"analyze", "bounds", "--n", "1"}).code == cli::kBadArgs);
  CHECK(invoke({"trace", infeasible.string(), "--m-star", "1"}).code == cli::kBadArgs);
}

TEST_CASE("analyze and trace") {
  auto b = invoke({"analyze", "bounds", "--J", "391"});
  REQUIRE(b.code == 0);
  const double lower = cli::Json::parse(b.out)["lower_coefficient"].get<double>();
  CHECK(lower >= 1.0004609);
  CHECK(lower < 1.00047);

  auto s = invoke({"analyze", "bounds", "--n", "1000", "--m-star", "31"});
  REQUIRE(s.code == 0);
  CHECK(cli::Json::parse(s.out)["sga_coefficient"].get<double>() <= 1.13534);

  const auto rnd = scratch("rnd.json").string();
  REQUIRE(invoke({"gen", "random", "--n", "12", "--m", "10", "--seed", "3", "-o", rnd}).code == 0);
  auto lem = invoke({"analyze", "lemmas", rnd, "--exact"});
  REQUIRE(lem.code == 0);
  CHECK(cli::Json::parse(lem.out)["all_hold"] == true);

  const auto lv = scratch("level.json").string();
  REQUIRE(invoke({"gen", "level", "--q", "2", "--J", "2", "--t", "2", "-o", lv}).code == 0);
  auto cl = invoke({"analyze", "claims", lv});
  REQUIRE(cl.code == 0);
  CHECK(cli::Json::parse(cl.out)["all_hold"] == true);

  auto tr = invoke({"trace", rnd, "--m-star", "4"});
  REQUIRE(tr.code == 0);
  CHECK(tr.out.rfind("step,test_id,gain,measure_before,measure_after,phase,potential\n", 0) == 0);
  CHECK(tr.out.find("phase,count,budget,within_budget,blank,potential_start,potential_monotone") != std::string::npos);
}

TEST_CASE("bench") {
  const auto suite = scratch("suite.json");
  cli::write_text(suite, R"({"algorithms": ["sga", "ich"],
    "runs": [{"family": "random", "n": 10, "m": 12, "density": 0.5},
             {"family": "complete", "q": 3, "J": [2]}]})");
  const auto d1 = scratch("bench1"), d2 = scratch("bench2");
  auto r1 = invoke({"bench", suite.string(), "--seeds", "20", "-o", d1.string(), "--jobs", "4"});
  auto r2 = invoke({"bench", suite.string(), "--seeds", "20", "-o", d2.string()});
  REQUIRE(r1.code == 0);
  REQUIRE(r2.code == 0);
  const auto csv = cli::read_text(d1 / "bench.csv");
  CHECK(csv == cli::read_text(d2 / "bench.csv"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 40 + 2);
}

TEST_CASE("convert") {
  const auto m = scratch("inst.txt");
  cli::write_text(m, "3 2\n110\n011\n");
  const auto j = scratch("inst.json");
  REQUIRE(invoke({"convert", m.string(), j.string()}).code == 0);
  CHECK(cli::load_instance(j).instance == cli::instance_from_matrix(cli::read_text(m)));
  const auto m2 = scratch("inst2.txt");
  REQUIRE(invoke({"convert", j.string(), m2.string()}).code == 0);
  CHECK(cli::read_text(m2) == cli::read_text(m));
}
