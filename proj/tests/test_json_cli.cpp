#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "octoslice/json_io.hpp"
#include "test_support.hpp"

using namespace octoslice;

namespace {

struct Run {
  int code;
  json out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "octoslice");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  json j;
  if (!out.str().empty() && (out.str()[0] == '{' || out.str()[0] == '[')) j = json::parse(out.str());
  return {code, j, err.str()};
}

}  // namespace

TEST_SUITE("json") {
  TEST_CASE("octonion, unit and complex round trips") {
    const Octonion x{1.5, -2, 0, 0.25, 7, 0, 0, -1};
    CHECK(parse_octonion(json(x)) == x);
    const UnitImaginary u(Octonion{0, 0.6, 0, 0.8});
    CHECK(parse_unit(json(u)) == u);
    CHECK(parse_complex(json(ComplexPoint{0.5, -2})) == ComplexPoint{0.5, -2});
    CHECK_THROWS_AS(parse_octonion(json::array({1, 2})), ParseError);
    CHECK_THROWS_AS(parse_unit(json::array({2, 0, 0, 0, 0, 0, 0})), ParseError);
  }

  TEST_CASE("domain round trips") {
    const std::vector<Domain> ds{
        Domain(Ball{Octonion{1, 2}, 0.5}),
        Domain(BallUnion{{Ball{Octonion{}, 1}, Ball{Octonion{3}, 2}}}),
        Domain(SlabCone{UnitImaginary::basis(2), 0.5}),
        Domain(BallChain{UnitImaginary::basis(1), UnitImaginary::basis(4), 512, 0.3})};
    for (const auto& d : ds) CHECK(json(parse_domain(json(d))) == json(d));
    CHECK_THROWS_AS(parse_domain(json{{"type", "torus"}}), ParseError);
    CHECK_THROWS_AS(parse_domain(json{{"type", "ball"}, {"center", json(Octonion{})}, {"radius", -1}}),
                    ParseError);
  }

  TEST_CASE("plans override defaults and reject unknown keys") {
    const SamplePlan p = parse_plan(json{{"seed", 9}, {"link_angle", 0.2}});
    CHECK(p.seed == 9);
    CHECK(p.link_angle == 0.2);
    CHECK(p.sphere_samples == SamplePlan{}.sphere_samples);
    CHECK(json(parse_plan(json(p))) == json(p));
    CHECK_THROWS_AS(parse_plan(json{{"sead", 1}}), ParseError);
    CHECK_THROWS_AS(parse_plan(json{{"a_steps", 1.5}}), ParseError);
    CHECK_THROWS_AS(parse_plan(json{{"link_angle", -1}}), ParseError);
  }

  TEST_CASE("paths and witnesses round trip") {
    const Polyline p = Polyline::uniform({Octonion{0, 1}, Octonion{1, 1}, Octonion{1, 0, 1}});
    CHECK(json(parse_polyline(json(p))) == json(p));
    CHECK(json(parse_polyline(json(p.values))) == json(p));
    const CircularLifting cl = lift_decompose(p);
    CHECK(json(parse_complex_path(json(cl.base))) == json(cl.base));
    CHECK(json(parse_sphere_path(json(cl.coord))) == json(cl.coord));
    CCLWitness w{cl.base, cl.coord, cl.coord, 100, true};
    CHECK(json(parse_witness(json(w))) == json(w));
    CHECK_THROWS_AS(parse_text("{nope"), ParseError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), ParseError);
  }

  TEST_CASE("golden fixtures carry every built-in field") {
    const json g = golden_fixtures();
    for (const char* name : {"slab-cone", "sqrt-example", "constant", "identity", "gaussian"})
      CHECK(g.contains(name));
    CHECK(g["sqrt-example"]["points"].size() == 3);
  }

  TEST_CASE("golden fixtures match the committed snapshot") {
    const json frozen = read_json_file(OCTOSLICE_FIXTURE_DIR "/golden.json");
    const json now = golden_fixtures();
    REQUIRE(frozen.size() == now.size());
    for (const auto& [name, entry] : frozen.items()) {
      INFO(name);
      CHECK(entry["domain"] == now[name]["domain"]);
      const auto& a = entry["points"];
      const auto& b = now[name]["points"];
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(parse_octonion(a[k]["input"]) == parse_octonion(b[k]["input"]));
        CHECK((parse_octonion(a[k]["expected"]) - parse_octonion(b[k]["expected"])).norm() <=
              a[k]["tolerance"].get<double>());
      }
    }
  }
}

TEST_SUITE("cli") {
  TEST_CASE("eval and op succeed with exit 0") {
    const Run r = run_cli({"eval", "--field", "identity", "--point", "[1,2,0,0,0,0,0,0]"});
    CHECK(r.code == 0);
    const Run s = run_cli({"op", "--name", "slice-fueter", "--field", "sqrt-example", "--point",
                       "[1,2,0,0,0,0,0,0]"});
    CHECK(s.code == 0);
  }

  TEST_CASE("verification failures exit 1, passes exit 0") {
    CHECK(run_cli({"sfr-check", "--field", "identity"}).code == 1);
    CHECK(run_cli({"sfr-check", "--field", "sqrt-example"}).code == 0);
  }

  TEST_CASE("usage and parse errors exit 2") {
    CHECK(run_cli({"bogus"}).code == 2);
    CHECK(run_cli({"eval"}).code == 2);
    const Run bad = run_cli({"lift-approx", "--path", "[[0,1,0,0,0,0,0,0],[1,1,0,0,0,0,0,0]]", "--delta", "-1"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("\"error\"") != std::string::npos);
    CHECK(run_cli({"eval", "--field", "nope", "--point", "[0,0,0,0,0,0,0,0]"}).code == 2);
    CHECK(run_cli({"eval", "--plan", "{\"sead\":1}", "--point", "[0,0,0,0,0,0,0,0]"}).code == 2);
  }

  TEST_CASE("domain errors are reported on stdout with exit 1") {
    const Run r = run_cli({"eval", "--field", "slab-cone", "--point", "[0,0,3,0,0,0,0,0]"});
    CHECK(r.code == 1);
    CHECK(r.out["error"] == "domain");
  }

  TEST_CASE("stem of the slab-cone field") {
    CHECK(run_cli({"stem", "--field", "slab-cone", "--z", "[1,2]"}).code == 2);
    const Run r = run_cli({"stem", "--field", "slab-cone", "--z", "[1,2]", "--units",
                     "[[1,0,0,0,0,0,0],[0.8660254037844386,0.5,0,0,0,0,0]]"});
    REQUIRE(r.code == 0);
    CHECK(r.out["u"][0].get<double>() == doctest::Approx(1.0));
    CHECK(r.out["v"][0].get<double>() == doctest::Approx(2.0));
  }

  TEST_CASE("output is deterministic") {
    const Run a = run_cli({"quotient", "--domain", "{\"type\":\"ball\",\"center\":[0,3,0,0,0,0,0,0],\"radius\":1}", "--summary"});
    const Run b = run_cli({"quotient", "--domain", "{\"type\":\"ball\",\"center\":[0,3,0,0,0,0,0,0],\"radius\":1}", "--summary"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out["components"] == 2);
  }
}
