#include <catch_amalgamated.hpp>

#include <random>

#include "amalgsep/io/parse.hpp"
#include "amalgsep/io/report.hpp"
#include "fixtures.hpp"

using namespace amalgsep;
using namespace testing_support;
using io::Json;

namespace {

  std::string const kData = AMALGSEP_DATA_DIR;

}  // namespace

TEST_CASE("groups survive a JSON round trip", "[io]") {
  for (auto const& x : small_corpus(24)) {
    auto back = io::group_from_json(Json::parse(io::group_to_json(x).dump()));
    CHECK(back.table() == x.table());
    CHECK(back.names() == x.names());
  }
  auto z4 = io::load_group(kData + "/z4.json");
  CHECK(z4.order() == 4);
  CHECK(io::parse_group_element(z4, "a^3") == *z4.find("a3"));
  CHECK(io::parse_group_element(z4, "a^-1") == *z4.find("a3"));
  CHECK(io::parse_group_element(z4, "1") == 0);
}

TEST_CASE("malformed groups are rejected", "[io]") {
  Json ok = Json::parse(R"({"schema": 1, "order": 2, "table": [[0, 1], [1, 0]]})");
  CHECK_NOTHROW(io::group_from_json(ok));

  auto extra     = ok;
  extra["color"] = "red";
  CHECK_THROWS_AS(io::group_from_json(extra), Error);

  auto version      = ok;
  version["schema"] = 2;
  CHECK_THROWS_AS(io::group_from_json(version), Error);

  auto order     = ok;
  order["order"] = 3;
  CHECK_THROWS_AS(io::group_from_json(order), Error);

  auto table     = ok;
  table["table"] = "nope";
  CHECK_THROWS_AS(io::group_from_json(table), Error);

  CHECK_THROWS_AS(io::load_group(kData + "/bad.json"), Error);
  CHECK_THROWS_AS(io::load_group(kData + "/missing.json"), Error);
  CHECK_THROWS_AS(io::parse_group_element(construct_group(cyclic_table(2)), "q"), Error);
}

TEST_CASE("presentations load from files", "[io]") {
  auto z4 = io::load_presentation(kData + "/z4amalgam.json");
  REQUIRE(z4.is_finite());
  CHECK(z4.finite().a().subgroup().order() == 2);

  auto s3 = io::load_presentation(kData + "/s3z4.json");
  REQUIRE(s3.is_finite());
  CHECK(s3.finite().a().group().order() == 6);

  auto g2 = io::load_presentation(kData + "/g2.json");
  REQUIRE_FALSE(g2.is_finite());
  CHECK(g2.free().a().rank() == 1);

  auto t = io::load_presentation(kData + "/thm21.json");
  REQUIRE_FALSE(t.is_finite());
  CHECK(t.free().b().rank() == 2);

  auto bad_phi = z4.source;
  bad_phi["phi"] = {{"e", "e"}, {"a2", "b"}};
  CHECK_THROWS_AS(io::presentation_from_json(bad_phi, kData), Error);

  auto bad_kind    = z4.source;
  bad_kind["kind"] = "weird";
  CHECK_THROWS_AS(io::presentation_from_json(bad_kind, kData), Error);

  auto free_phi   = g2.source;
  free_phi["phi"] = Json::object();
  CHECK_THROWS_AS(io::presentation_from_json(free_phi, kData), Error);
}

TEST_CASE("elements print and parse back", "[io][property]") {
  std::mt19937_64 rng(17);
  auto            z4 = io::load_presentation(kData + "/z4amalgam.json").finite();
  auto            g2 = power_amalgam(2);
  auto            t  = thm21_amalgam();
  for (int i = 0; i < 300; ++i) {
    auto x = random_element(z4, rng, 6);
    CHECK(io::parse_element(z4, z4.to_string(x)) == x);
    auto y = random_element(g2, rng, 6);
    CHECK(io::parse_element(g2, g2.to_string(y)) == y);
    auto w = random_element(t, rng, 5);
    CHECK(io::parse_element(t, t.to_string(w)) == w);
  }
  CHECK(io::parse_element(z4, "1").length() == 0);
  CHECK(io::parse_element(g2, "A:a B:b^-1 A:a").length() == 3);
  CHECK_THROWS_AS(io::parse_element(z4, "a B:b"), Error);
  CHECK_THROWS_AS(io::parse_element(z4, "C:a"), Error);
  CHECK_THROWS_AS(io::parse_element(z4, "A:a^x"), Error);
  CHECK_THROWS_AS(io::parse_element(g2, "A:z"), Error);

  CHECK(io::element_text(kData + "/g2_h.json") == "A:a B:b^7");
  CHECK(io::element_text("A:a") == "A:a");
}

TEST_CASE("reports carry the job and validate", "[io]") {
  io::JobSpec job{"witness", {"g2.json"}, {{"p", 2}}, "out.json"};
  auto        back = io::job_from_json(io::job_json(job));
  CHECK(back.command == job.command);
  CHECK(back.inputs == job.inputs);
  CHECK(back.parameters == job.parameters);

  auto rep = io::report_json(job, "separated", 0, {{"x", 1}});
  CHECK_NOTHROW(io::validate_report(rep));
  CHECK(rep["schema"] == 1);

  auto extra     = rep;
  extra["extra"] = true;
  CHECK_THROWS_AS(io::validate_report(extra), Error);
  auto code         = rep;
  code["exit_code"] = 7;
  CHECK_THROWS_AS(io::validate_report(code), Error);
  auto no_schema = rep;
  no_schema.erase("schema");
  CHECK_THROWS_AS(io::validate_report(no_schema), Error);
}

TEST_CASE("witness reports embed a checkable target", "[io]") {
  auto       g  = z4_amalgam();
  auto const ab = g.multiply(g.letter(Side::A, 1), g.letter(Side::B, 1));
  auto       r  = separate_from_cyclic(g, g.letter(Side::A, 1), ab, CompatMode::Plain);
  auto       j  = io::witness_json(g, r);
  REQUIRE(j["outcome"] == "separated");
  auto t = io::group_from_json(j["witness"]["target"]);
  CHECK(t.order() == r.target.order());
  auto hi = *t.find(j["witness"]["h_image"].get<std::string>());
  for (auto const& name : j["witness"]["g_image_powers"]) {
    CHECK(*t.find(name.get<std::string>()) != hi);
  }
}
