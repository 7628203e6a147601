#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "ioident/report.hpp"
#include "support.hpp"

using namespace ioident;
using nlohmann::json;

namespace {

json analyze_json(const std::string& name, AnalysisSettings s = {}) {
  return json::parse(emit_report(analyze(testing::load_model(name), s), ReportFormat::Json));
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("JSON layout") {
  AnalysisSettings s;
  s.check_functions = {"a", "(a + b)^2"};
  std::string text = emit_report(analyze(testing::load_model("growth.model"), s), ReportFormat::Json);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(text);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"model", "settings", "io_equations", "field_generators", "certificates",
                                         "first_integrals", "equality_status", "membership_queries",
                                         "verification"});
  CHECK(j["model"]["lambda"] == 2);
  CHECK(j["settings"]["series_order"] == "auto");
  CHECK(j["settings"]["depth"] == 1);
  CHECK(j["io_equations"] == json::array({"y' - (a + b)*y"}));
  CHECK(j["field_generators"] == json::array({"a + b"}));
  CHECK(j["certificates"][0]["status"] == "identifiable_by_wronskian");
  CHECK(j["certificates"][0]["witness"]["subset"] == json::array({"y"}));
  CHECK(j["equality_status"] == "equality_certified_up_to_degree");
  CHECK(j["membership_queries"][0]["member"] == false);
  CHECK(j["membership_queries"][1]["member"] == true);
  CHECK(j["verification"]["presentation_found"] == true);
  CHECK(j["verification"]["series_vanishing"] == true);
}

TEST_CASE("reports of the other fixtures") {
  AnalysisSettings s;
  s.first_integral_degree = 1;
  json o = analyze_json("oscillator.model", s);
  CHECK(o["io_equations"] == json::array({"y2'", "y1'' + w*y1*y2 + w^2*y1"}));
  CHECK(o["field_generators"] == json::array({"w"}));
  for (const auto& c : o["certificates"]) {
    CHECK(c["status"] == "no_certificate");
    CHECK(c["witness"].is_null());
  }
  CHECK(o["first_integrals"] == json::array({"x3"}));
  CHECK(o["equality_status"] == "first_integral_found");

  json h = analyze_json("hidden_rate.model", s);
  CHECK(h["field_generators"] == json::array({"m1", "m2"}));
  CHECK(h["first_integrals"] == json::array({"x1"}));
}

TEST_CASE("text report") {
  AnalysisSettings s;
  s.check_functions = {"a"};
  std::string t = emit_report(analyze(testing::load_model("growth.model"), s), ReportFormat::Text);
  CHECK(contains(t, "IO: y' - (a + b)*y\n"));
  CHECK(contains(t, "field of IO-identifiable functions: Q(a + b)\n"));
  CHECK(contains(t, "certificate: a + b (equation 1): identifiable"));
  CHECK(contains(t, "membership: a -> false\n"));
  CHECK(contains(t, "first integrals (degree <= 3): none\n"));
}

TEST_CASE("depth exhaustion is reported, not thrown") {
  AnalysisSettings s;
  s.depth = 1;
  s.check_functions = {"w"};
  AnalysisReport r = analyze(testing::load_model("oscillator.model"), s);
  CHECK_FALSE(r.complete);
  CHECK_FALSE(r.error.empty());
  CHECK(r.field_generators.empty());
  REQUIRE(r.membership_queries.size() == 1);
  CHECK_FALSE(r.membership_queries[0].member.has_value());
  json j = json::parse(emit_report(r, ReportFormat::Json));
  CHECK(j["verification"]["presentation_found"] == false);
  CHECK(j["verification"].contains("eliminated"));
  CHECK(j["membership_queries"][0]["member"].is_null());
  CHECK(contains(emit_report(r, ReportFormat::Text), "no verified presentation"));
}

TEST_CASE("bad check functions are parse errors") {
  AnalysisSettings s;
  s.check_functions = {"x1 + a"};
  CHECK_THROWS_AS(analyze(testing::load_model("growth.model"), s), ParseError);
  s.check_functions = {"a +"};
  CHECK_THROWS_AS(analyze(testing::load_model("growth.model"), s), ParseError);
}

TEST_CASE("reports are reproducible byte for byte") {
  for (const auto& name : testing::fixture_names()) {
    for (std::uint64_t seed : {0ull, 7ull}) {
      AnalysisSettings s;
      s.seed = seed;
      Model m = testing::load_model(name);
      std::string a = emit_report(analyze(m, s), ReportFormat::Json);
      std::string b = emit_report(analyze(testing::load_model(name), s), ReportFormat::Json);
      CHECK(a == b);
      CHECK(emit_report(analyze(m, s), ReportFormat::Text) == emit_report(analyze(m, s), ReportFormat::Text));
    }
  }
}
