// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "ioident/ioident.h"

#ifndef IOIDENT_MODELS_DIR
#define IOIDENT_MODELS_DIR "models"
#endif

namespace {

std::string path(const char* name) { return std::string(IOIDENT_MODELS_DIR) + "/" + name; }

std::string take(char* s) {
  std::string out = s ? s : "";
  ioident_string_free(s);
  return out;
}

const char* kGrowth = "params: a, b\nstates: x1\noutputs: y\nx1' = (a + b)*x1\ny = x1\n";

}  // namespace

TEST_CASE("version and defaults") {
  CHECK(std::string(ioident_version()) == "0.1.0");
  ioident_options o;
  ioident_options_init(&o);
  CHECK(o.seed == 0);
  CHECK(o.depth < 0);
  CHECK(o.trials == 5);
  CHECK(o.first_integral_degree == 3);
}

TEST_CASE("parse, print and free") {
  ioident_model* m = nullptr;
  REQUIRE(ioident_model_parse(kGrowth, &m) == IOIDENT_OK);
  char* s = nullptr;
  REQUIRE(ioident_model_to_string(m, &s) == IOIDENT_OK);
  std::string text = take(s);
  CHECK(text.find("x1' = a*x1 + b*x1") != std::string::npos);
  ioident_model_free(m);
}

TEST_CASE("error reporting") {
  ioident_model* m = nullptr;
  CHECK(ioident_model_load("/nonexistent/file.model", &m) == IOIDENT_ERR_IO);
  CHECK(m == nullptr);
  CHECK(std::string(ioident_last_error()).find("cannot read") != std::string::npos);

  CHECK(ioident_model_parse("params: a\nstates: x\noutputs: y\nx' = a *\ny = x\n", &m) == IOIDENT_ERR_PARSE);
  CHECK(ioident_last_error_line() == 4);
  CHECK(ioident_last_error_column() > 0);

  CHECK(ioident_model_parse(nullptr, &m) == IOIDENT_ERR_ARGUMENT);
  REQUIRE(ioident_model_parse(kGrowth, &m) == IOIDENT_OK);
  ioident_options o;
  ioident_options_init(&o);
  o.trials = 0;
  ioident_report* r = nullptr;
  CHECK(ioident_analyze(m, &o, nullptr, 0, &r) == IOIDENT_ERR_ARGUMENT);
  CHECK(r == nullptr);
  const char* bad[] = {"a +"};
  CHECK(ioident_analyze(m, nullptr, bad, 1, &r) == IOIDENT_ERR_PARSE);

  ioident_model* ext = nullptr;
  ioident_model* with_input = nullptr;
  REQUIRE(ioident_model_parse("params: p\nstates: x\ninputs: u\noutputs: y\nx' = u\ny = x\n", &with_input) ==
          IOIDENT_OK);
  CHECK(ioident_model_extend(with_input, "x*u", &ext) == IOIDENT_ERR_UNSUPPORTED);
  ioident_model_free(with_input);
  ioident_model_free(m);
}

TEST_CASE("analysis through the C interface") {
  ioident_model* m = nullptr;
  REQUIRE(ioident_model_load(path("growth.model").c_str(), &m) == IOIDENT_OK);
  const char* checks[] = {"a", "a + b"};
  ioident_report* r = nullptr;
  REQUIRE(ioident_analyze(m, nullptr, checks, 2, &r) == IOIDENT_OK);
  CHECK(ioident_report_complete(r) == 1);
  char* out = nullptr;
  REQUIRE(ioident_report_render(r, IOIDENT_FORMAT_TEXT, &out) == IOIDENT_OK);
  std::string text = take(out);
  CHECK(text.find("IO: y' - (a + b)*y") != std::string::npos);
  CHECK(text.find("membership: a -> false") != std::string::npos);
  CHECK(text.find("membership: a + b -> true") != std::string::npos);
  REQUIRE(ioident_report_render(r, IOIDENT_FORMAT_JSON, &out) == IOIDENT_OK);
  CHECK(take(out).rfind("{", 0) == 0);
  ioident_report_free(r);

  int member = -1;
  const char* gens[] = {"a + b", "a - b"};
  REQUIRE(ioident_field_membership(m, "a", gens, 2, &member) == IOIDENT_OK);
  CHECK(member == 1);
  REQUIRE(ioident_field_membership(m, "a", gens, 1, &member) == IOIDENT_OK);
  CHECK(member == 0);
  ioident_model_free(m);
}

TEST_CASE("depth exhaustion still yields a report") {
  ioident_model* m = nullptr;
  REQUIRE(ioident_model_load(path("oscillator.model").c_str(), &m) == IOIDENT_OK);
  ioident_options o;
  ioident_options_init(&o);
  o.depth = 1;
  ioident_report* r = nullptr;
  CHECK(ioident_analyze(m, &o, nullptr, 0, &r) == IOIDENT_ERR_DEPTH);
  REQUIRE(r != nullptr);
  CHECK(ioident_report_complete(r) == 0);
  ioident_report_free(r);
  ioident_model_free(m);
}

TEST_CASE("model extension") {
  ioident_model* m = nullptr;
  REQUIRE(ioident_model_load(path("hidden_rate.model").c_str(), &m) == IOIDENT_OK);
  ioident_model* e = nullptr;
  REQUIRE(ioident_model_extend(m, "x1*x2", &e) == IOIDENT_OK);
  char* s = nullptr;
  REQUIRE(ioident_model_to_string(e, &s) == IOIDENT_OK);
  std::string text = take(s);
  CHECK(text.find("states: x1, x2, x3") != std::string::npos);
  CHECK(text.find("outputs: y, y2") != std::string::npos);
  ioident_model_free(e);
  REQUIRE(ioident_model_denominator(m, &s) == IOIDENT_OK);
  CHECK(take(s) == "1");
  ioident_model_free(m);

  REQUIRE(ioident_model_parse("params: k\nstates: x\noutputs: y\nx' = x/(k + x)\ny = x\n", &m) == IOIDENT_OK);
  REQUIRE(ioident_model_denominator(m, &s) == IOIDENT_OK);
  CHECK(take(s) == "k + x");
  ioident_model_free(m);
}
