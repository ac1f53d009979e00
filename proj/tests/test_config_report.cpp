#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "core/config.hpp"
#include "core/report.hpp"
#include "core/suites.hpp"
#include "json.hpp"

using namespace lfv;

namespace {

// a fast configuration: two structural suites on the smallest model
const char* kSmallConfig = R"({
  "model": {"name": "abelian", "n": 2},
  "seed": 7,
  "samples": {"frames": 3, "minkowski": 10},
  "suites": ["frames", "minkowski"]
})";

}  // namespace

TEST_CASE("defaults fill an empty configuration") {
  const RunConfig cfg = parse_config("{}");
  CHECK(cfg.model.name == "heisenberg3");
  CHECK(cfg.norm.kind == "hermitian");
  CHECK(cfg.seed == 42);
  CHECK(cfg.tol_scale == 1.0);
  CHECK(cfg.suites == all_suites());
  CHECK(cfg.sample_count("minkowski") == 200);
  CHECK(cfg.tolerance("berwald") == 1e-4);
  CHECK(cfg.make_model().n == 3);
  CHECK(cfg.make_norm().is_hermitian());
}

TEST_CASE("explicit fields override defaults and round-trip") {
  const RunConfig cfg = parse_config(R"({
    "model": {"name": "affine1"},
    "norm": {"kind": "pnorm", "p": 1.5, "weights": [1.0, 2.0]},
    "seed": 99,
    "samples": {"kahler": 5},
    "tolerances": {"kahler": 1e-3},
    "scheme": {"step": 1e-5, "order": 4, "richardson": true},
    "suites": ["kahler", "kahler", "curvature"],
    "tol_scale": 2.0
  })");
  CHECK(cfg.model.name == "affine1");
  CHECK(cfg.norm.p == 1.5);
  CHECK(cfg.seed == 99);
  CHECK(cfg.sample_count("kahler") == 5);
  CHECK(cfg.sample_count("curvature") == 50);
  CHECK(cfg.tolerance("kahler") == doctest::Approx(2e-3));    // scaled
  CHECK(cfg.tolerance("curvature") == doctest::Approx(2e-4).epsilon(1e-12));
  CHECK(cfg.scheme.richardson);
  // duplicates collapse, order preserved
  REQUIRE(cfg.suites.size() == 2);
  CHECK(cfg.suites[0] == "kahler");
  CHECK(cfg.suites[1] == "curvature");
}

TEST_CASE("complex matrix entries accept numbers and [re, im] pairs") {
  const RunConfig cfg = parse_config(R"({
    "model": {"name": "abelian", "n": 2},
    "norm": {"kind": "hermitian",
             "matrix": [[2, [0.3, 0.1]], [[0.3, -0.1], 1]]}
  })");
  CHECK(cfg.norm.matrix[0][1] == Complex(0.3, 0.1));
  CHECK(cfg.norm.matrix[0][0] == Complex(2, 0));
  CHECK_NOTHROW(cfg.make_norm());
}

TEST_CASE("malformed input is rejected with the right category") {
  // not JSON at all
  CHECK_THROWS_AS(parse_config("{nope"), ParseError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ParseError);

  // a bad model name keeps its own exception type end to end
  CHECK_THROWS_AS(parse_config(R"({"model": {"name": "noSuchGroup"}})"), UnknownModel);

  // structurally valid JSON, semantically invalid configs
  const char* bad[] = {
      R"({"model": {"name": "abelian", "n": 0}})",
      R"({"model": {"name": "abelian", "extra": 1}})",
      R"({"banana": 1})",
      R"({"norm": {"kind": "pnorm", "p": 0.5}})",
      R"({"norm": {"kind": "pnorm", "p": 1.0}})",
      R"({"norm": {"kind": "taxicab"}})",
      R"({"norm": {"kind": "hermitian", "p": 1.5}})",
      R"({"norm": {"kind": "pnorm", "matrix": [[1]]}})",
      R"({"norm": {"kind": "hermitian", "matrix": [[1, 0]]}})",
      R"({"norm": {"kind": "hermitian", "matrix": [[[1, 2, 3]]]}})",
      R"({"norm": {"kind": "hermitian", "matrix": [[1, 0], [0, -1]]}})",
      R"({"model": {"name": "heisenberg3"},
          "norm": {"kind": "hermitian", "matrix": [[1, 0], [0, 1]]}})",
      R"({"model": {"name": "heisenberg3"},
          "norm": {"kind": "pnorm", "p": 1.5, "weights": [1, 1]}})",
      R"({"norm": {"kind": "pnorm", "p": 1.5, "weights": [1, -1, 1]}})",
      R"({"seed": -1})",
      R"({"seed": 1.5})",
      R"({"samples": {"frames": 0}})",
      R"({"samples": {"quantum": 3}})",
      R"({"tolerances": {"frames": 0}})",
      R"({"scheme": {"order": 3}})",
      R"({"scheme": {"step": 0.5}})",
      R"({"scheme": {"step": 1e-10}})",
      R"({"suites": []})",
      R"({"suites": ["frames", "sprocket"]})",
      R"({"tol_scale": 0})",
      R"({"tol_scale": -1})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_config(text), ValidationError);
  }

  // the unknown-suite message names the valid ones
  try {
    parse_config(R"({"suites": ["sprocket"]})");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("curvature") != std::string::npos);
  }
}

TEST_CASE("file loading distinguishes missing files from bad content") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), IoError);

  const std::string path = "/tmp/lfv_test_config.json";
  {
    std::ofstream out(path);
    out << kSmallConfig;
  }
  const RunConfig cfg = load_config(path);
  CHECK(cfg.model.name == "abelian");
  CHECK(cfg.seed == 7);
  std::remove(path.c_str());
}

TEST_CASE("canonical form and hash are stable under key reordering") {
  const RunConfig a = parse_config(R"({"seed": 7, "model": {"name": "affine1"}})");
  const RunConfig b = parse_config(R"({"model": {"name": "affine1"}, "seed": 7})");
  CHECK(canonical_json(a) == canonical_json(b));
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);

  const RunConfig c = parse_config(R"({"model": {"name": "affine1"}, "seed": 8})");
  CHECK(config_hash(a) != config_hash(c));

  // tolerance scaling changes the materialized tolerances, hence the hash
  const RunConfig d = parse_config(R"({"model": {"name": "affine1"}, "seed": 7, "tol_scale": 2})");
  CHECK(config_hash(a) != config_hash(d));
}

TEST_CASE("suite execution is deterministic and fully serialized") {
  const RunConfig cfg = parse_config(kSmallConfig);
  const auto first = run_suites(cfg);
  const auto second = run_suites(cfg);

  REQUIRE(first.size() == 2);
  CHECK(first[0].suite == "frames");
  CHECK(first[1].suite == "minkowski");
  CHECK(all_passed(first));

  // byte-identical reports for identical config + seed; runtime is excluded
  // from serialization precisely so this comparison can hold
  const std::string ja = render_report(first, cfg, ReportFormat::Json);
  const std::string jb = render_report(second, cfg, ReportFormat::Json);
  CHECK(ja == jb);
  CHECK(ja.find("runtime") == std::string::npos);

  // the empty report never counts as success
  CHECK_FALSE(all_passed({}));
}

TEST_CASE("json report carries schema, identity and per-check rows") {
  const RunConfig cfg = parse_config(kSmallConfig);
  const auto reports = run_suites(cfg);
  const auto j = nlohmann::json::parse(render_report(reports, cfg, ReportFormat::Json));

  CHECK(j.at("schema_version").get<int>() == 1);
  CHECK(j.at("model").get<std::string>() == "abelian(2)");  // resolved name
  CHECK(j.at("dimension").get<int>() == 2);
  CHECK(j.at("norm").get<std::string>() == "hermitian");
  CHECK(j.at("seed").get<std::uint64_t>() == 7);
  CHECK(j.at("config_hash").get<std::string>() == config_hash(cfg));
  CHECK(j.at("all_passed").get<bool>());
  CHECK(j.at("engine").at("generator").get<std::string>() == "splitmix64");

  REQUIRE(j.at("suites").size() == 2);
  const auto& frames = j.at("suites").at(0);
  CHECK(frames.at("suite").get<std::string>() == "frames");
  CHECK(frames.at("pass").get<bool>());
  REQUIRE(!frames.at("checks").empty());
  for (const auto& chk : frames.at("checks")) {
    CHECK(chk.contains("id"));
    CHECK(chk.at("value").is_number());
    CHECK(chk.at("tolerance").is_number());
    CHECK(chk.at("pass").is_boolean());
    CHECK((chk.at("comparison") == "<=" || chk.at("comparison") == ">"));
    CHECK(chk.at("pass").get<bool>());  // passing row: worst_point may be null
  }
}

TEST_CASE("failing rows surface the witness point in both formats") {
  // crush the tolerances so honest stencil noise trips the comparisons
  RunConfig cfg = parse_config(R"({
    "model": {"name": "heisenberg3"},
    "samples": {"connection": 2},
    "suites": ["connection"],
    "tol_scale": 1e-12
  })");
  const auto reports = run_suites(cfg);
  CHECK_FALSE(all_passed(reports));

  const auto j = nlohmann::json::parse(render_report(reports, cfg, ReportFormat::Json));
  CHECK_FALSE(j.at("all_passed").get<bool>());
  bool found_witness = false;
  for (const auto& chk : j.at("suites").at(0).at("checks")) {
    if (chk.at("pass").get<bool>() || chk.at("worst_point").is_null()) continue;
    found_witness = true;
    const auto& wp = chk.at("worst_point");
    REQUIRE(wp.at("z").size() == 3);
    REQUIRE(wp.at("w").size() == 3);
    CHECK(wp.at("z").at(0).size() == 2);  // [re, im]
  }
  CHECK(found_witness);

  const std::string md = render_report(reports, cfg, ReportFormat::Markdown);
  CHECK(md.find("## connection — FAIL") != std::string::npos);
  CHECK(md.find("worst") != std::string::npos);
}

TEST_CASE("markdown report shape for a passing run") {
  const RunConfig cfg = parse_config(kSmallConfig);
  const std::string md = render_report(run_suites(cfg), cfg, ReportFormat::Markdown);
  CHECK(md.find("## frames — PASS") != std::string::npos);
  CHECK(md.find("## minkowski — PASS") != std::string::npos);
  CHECK(md.find("| check |") != std::string::npos);
  CHECK(md.find("frames.holomorphy") != std::string::npos);
  CHECK(md.find("seed") != std::string::npos);
}

TEST_CASE("a suite that throws is folded into the report, not a crash") {
  const RunConfig cfg = parse_config(kSmallConfig);
  const VerificationReport rep = run_suite(cfg, "sprocket");
  CHECK_FALSE(rep.error.empty());
  CHECK_FALSE(rep.pass());
  CHECK_FALSE(all_passed({rep}));

  const auto j = nlohmann::json::parse(render_report({rep}, cfg, ReportFormat::Json));
  CHECK_FALSE(j.at("all_passed").get<bool>());
  CHECK(j.at("suites").at(0).at("error").get<std::string>() == rep.error);
}
