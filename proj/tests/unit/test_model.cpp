#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ioident/model.hpp"
#include "support.hpp"

using namespace ioident;

namespace {

struct ParseFailure {
  int line = 0, column = 0;
  std::string message;
};

ParseFailure parse_failure(const std::string& text) {
  try {
    parse_model(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column(), e.what()};
  }
  FAIL("model parsed unexpectedly: " << text);
  return {};
}

}  // namespace

TEST_CASE("fixtures load") {
  Model g = testing::load_model("growth.model");
  CHECK(g.params == std::vector<std::string>{"a", "b"});
  CHECK(g.n() == 1);
  CHECK(g.m() == 1);
  CHECK(g.kappa() == 0);
  CHECK(to_string(g.f[0]) == "a*x1 + b*x1");
  CHECK(to_string(g.Q) == "1");

  Model o = testing::load_model("oscillator.model");
  CHECK(o.n() == 3);
  CHECK(o.m() == 2);
  CHECK(to_string(o.f[0]) == "w*x2 + x2*x3");
  CHECK(to_string(o.g[1]) == "x3");
}

TEST_CASE("denominators are cleared into one common multiple") {
  Model m = parse_model(
      "params: k\nstates: x1, x2\ninputs: u\noutputs: y\n"
      "x1' = k/(x1 + 1)\nx2' = u/x2\ny = x1/2\n");
  CHECK(to_string(m.Q) == "x1*x2 + x2");
  CHECK(to_string(m.f[0]) == "k*x2");
  CHECK(to_string(m.f[1]) == "x1*u + u");
  CHECK(to_string(m.g[0]) == "1/2*x1^2*x2 + 1/2*x1*x2");
}

TEST_CASE("printing round-trips") {
  for (const auto& name : testing::fixture_names()) {
    Model m = testing::load_model(name);
    CHECK(parse_model(to_string(m)) == m);
  }
  Model m = parse_model(
      "params: k\nstates: x\ninputs: u\noutputs: y\nx' = (k*x - u)/(x^2 + 3)\ny = x^(2) + 1/k\n");
  CHECK(parse_model(to_string(m)) == m);
}

TEST_CASE("comments, blank lines and optional inputs") {
  Model m = parse_model("# header\n\nparams: p # trailing\nstates: x\n\noutputs: y\nx' = -p*x\ny = x\n");
  CHECK(m.inputs.empty());
  CHECK(to_string(m.f[0]) == "-p*x");
}

TEST_CASE("syntax errors carry positions") {
  auto e = parse_failure("params: a\nstates: x\noutputs: y\nx' = a*x +\ny = x\n");
  CHECK(e.line == 4);
  CHECK(e.message.find("expected a number") != std::string::npos);

  e = parse_failure("params: a\nstates: x\noutputs: y\nx' = a $ x\ny = x\n");
  CHECK(e.line == 4);
  CHECK(e.column == 8);

  e = parse_failure("params: a\nstates: x\noutputs: y\nx' = b*x\ny = x\n");
  CHECK(e.line == 4);
  CHECK(e.column == 6);
  CHECK(e.message.find("undeclared identifier 'b'") != std::string::npos);
}

TEST_CASE("semantic errors") {
  auto msg = [](const std::string& t) { return parse_failure(t).message; };
  CHECK(msg("params: a\nstates: x\noutputs: y\nx' = y\ny = x\n").find("cannot appear") != std::string::npos);
  CHECK(msg("params: a\nstates: x\noutputs: y\nx' = x'\ny = x\n").find("derivatives") != std::string::npos);
  CHECK(msg("params: a\nstates: x\noutputs: y\nx' = a/0\ny = x\n").find("division by zero") != std::string::npos);
  CHECK(msg("params: a\nstates: x\noutputs: y\nx' = a/(x - x)\ny = x\n").find("division by zero") !=
        std::string::npos);
  CHECK(msg("params: a\nstates: x\noutputs: y\ny = x\n").find("missing equation for state 'x'") !=
        std::string::npos);
  CHECK(msg("params: a\nstates: x\noutputs: y\nx' = 1\n").find("missing equation for output 'y'") !=
        std::string::npos);
  CHECK(msg("params: a\nstates: x\noutputs: y\nx' = 1\nx' = 2\ny = x\n").find("duplicate equation") !=
        std::string::npos);
  CHECK(msg("params: a\nstates: x\nx' = 1\n").find("missing 'outputs:'") != std::string::npos);
  CHECK(msg("params: a\nstates: x, a\noutputs: y\nx' = 1\na' = 1\ny = x\n").find("declared twice") !=
        std::string::npos);
  CHECK(msg("params: a\nstates: x\noutputs: y\nx' = 1\nparams: b\ny = x\n").find("precede") != std::string::npos);
  CHECK(msg("params: a\nstates: x\noutputs: y\nx = 1\ny = x\n").find("derivative mark") != std::string::npos);
  CHECK(msg("params: a\nstates: x\noutputs: y\nx' = x^a\ny = x\n").find("exponent") != std::string::npos);
}

TEST_CASE("differential polynomials over a model ring") {
  Model m = testing::load_model("oscillator.model");
  auto ring = make_diff_ring(m);
  Ranking r = Ranking::standard(*ring);
  DiffPoly f = parse_diff_poly("y1'' + w*y1*y2 + w^2*y1", *ring);
  CHECK(to_string(f, *ring, r) == "y1'' + w*y1*y2 + w^2*y1");
  CHECK(to_string(parse_diff_poly("y1^(3)/w", *ring), *ring, r) == "(1/w)*y1'''");
  CHECK_THROWS_AS(parse_diff_poly("y1/y2", *ring), ParseError);

  auto g = build_sigma_generators(m, *ring);
  REQUIRE(g.diff_eqs.size() == 3);
  REQUIRE(g.out_eqs.size() == 2);
  CHECK(to_string(g.diff_eqs[0], *ring, r) == "x1' - x2*x3 - w*x2");
  CHECK(to_string(g.out_eqs[1], *ring, r) == "-x3 + y2");
  CHECK(g.saturator.is_constant());
}
