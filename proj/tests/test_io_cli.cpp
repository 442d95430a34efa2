#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "avo/cli.hpp"
#include "avo/corpus.hpp"
#include "avo/io.hpp"

using namespace avo;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("avo_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

int run(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

}  // namespace

TEST_CASE("parse the golden mean file") {
  const auto p = parse_sft_spec(R"({"group": "Z", "alphabet": [0, 1], "forbidden": [[[[0], 1], [[1], 1]]]})");
  CHECK(p.spec.forbidden.size() == 1);
  CHECK(window_size(p.spec) == 1);
  CHECK(p.warnings.empty());
}

TEST_CASE("parse errors carry a location") {
  try {
    parse_sft_spec(R"({"group": "Z^2", "alphabet": ["0","1"], "forbidden": [{"cells": [[[0,0,0], "1"]]}]})");
    FAIL("expected an arity error");
  } catch (const ParseError& e) {
    CHECK(e.where() == "forbidden[0].cells[0]");
  }
  CHECK_THROWS_AS(parse_sft_spec(R"({"group": "Z", "alphabet": ["0"], "forbidden": [{"cells": [[[0], "1"]]}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_sft_spec(R"({"group": "Q", "alphabet": ["0"]})"), ParseError);
  try {
    parse_sft_spec("{\"group\": \"Z\",\n \"alphabet\": [}");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.where().rfind("byte", 0) == 0);
  }
}

TEST_CASE("duplicate forbidden patterns are dropped with a warning") {
  const auto p = parse_sft_spec(
      R"({"group": "Z", "alphabet": ["0","1"], "forbidden": [{"cells": [[[0], "1"], [[1], "1"]]}, {"cells": [[[4], "1"], [[5], "1"]]}]})");
  CHECK(p.spec.forbidden.size() == 1);
  CHECK(p.warnings.size() == 1);
}

TEST_CASE("corpus round-trips") {
  for (const auto& name : corpus_names()) {
    CAPTURE(name);
    const auto e = builtin_example(name);
    const auto text = serialize_spec(e.spec, e.map);
    const auto back = parse_sft_spec(text);
    CHECK(back.spec.forbidden == e.spec.forbidden);
    CHECK(back.spec.alphabet == e.spec.alphabet);
    CHECK(back.map.has_value() == e.map.has_value());
    CHECK(serialize_spec(back.spec, back.map) == text);
  }
  CHECK(builtin_example("ledrappier").spec.forbidden.size() == 4);
  CHECK_THROWS_WITH_AS(builtin_example("nope"), doctest::Contains("goldenmean"), std::invalid_argument);
}

TEST_CASE("certificate files") {
  auto r = find_certificate(builtin_example("goldenmean").spec, Family::InductiveIntervals, Budget{});
  REQUIRE(r.certificate);
  const auto text = serialize_certificate(*r.certificate);
  const auto loaded = load_certificate(text, Budget{});
  CHECK(loaded.check.ok);
  CHECK(certificate_digest(loaded.certificate) == certificate_digest(*r.certificate));
  auto j = nlohmann::json::parse(text);
  j["radius"] = 2;
  CHECK_THROWS_AS(parse_certificate(j.dump()), ParseError);
}

TEST_CASE("command line") {
  const auto gm = write_temp("gm.json", serialize_spec(builtin_example("goldenmean").spec));
  const auto full = write_temp("full.json", R"({"group": "Z", "alphabet": ["0","1"], "forbidden": []})");
  const auto st = write_temp("st.json", serialize_spec(builtin_example("spacetimeF").spec));
  std::string out;
  CHECK(run({"certify", gm, "--family", "ii"}, &out) == 0);
  CHECK(out.find("radius: 1") != std::string::npos);
  CHECK(run({"compare", full, gm}, &out) == 0);
  CHECK(out.find("verdict: NotSubset") != std::string::npos);
  CHECK(out.find("witness: {(0):1, (1):1}") != std::string::npos);
  CHECK(run({"certify", st, "--family", "ii", "--budget", "small"}) == 2);
  CHECK(run({"certify"}) == 1);
  CHECK(run({"example", "nope"}) == 1);
  CHECK(run({"empty", gm, "--json"}, &out) == 0);
  CHECK(nlohmann::json::parse(out)["verdict"] == "Nonempty");
  const auto cert = (std::filesystem::temp_directory_path() / "avo_test_gm.cert").string();
  CHECK(run({"certify", gm, "--out", cert}) == 0);
  CHECK(run({"language", cert, "--shape", "interval:0:2"}, &out) == 0);
  CHECK(out.find("count: 5") != std::string::npos);
  std::string a, b;
  run({"compare", full, gm}, &a);
  run({"compare", full, gm}, &b);
  auto strip = [](std::string s) { return s.substr(0, s.find("wall_ms")); };
  CHECK(strip(a) == strip(b));
}
