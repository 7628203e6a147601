#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ioident/groebner.hpp"
#include "ioident/ratfun.hpp"
#include "support.hpp"

using namespace ioident;
using testing::Gen;

namespace {

std::vector<std::string> strings(const std::vector<MPoly>& v) {
  std::vector<std::string> out;
  for (const auto& p : v) out.push_back(to_string(p));
  return out;
}

bool is_reduced_basis(const std::vector<MPoly>& gb) {
  for (std::size_t i = 0; i < gb.size(); ++i) {
    if (gb[i].lc() != 1) return false;
    for (std::size_t j = 0; j < gb.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : gb[i].terms())
        if (divides(gb[j].lm(), t.exp)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("cyclic-3 under lex") {
  auto r = make_ring({"x", "y", "z"}, TermOrder::lex(3));
  MPoly x = MPoly::variable(r, 0), y = MPoly::variable(r, 1), z = MPoly::variable(r, 2);
  MPoly one = MPoly::constant(r, Rat(1));
  auto gb = groebner<Rat>({x + y + z, x * y + y * z + z * x, x * y * z - one});
  CHECK(strings(gb) == std::vector<std::string>{"z^3 - 1", "y^2 + y*z + z^2", "x + y + z"});
  CHECK(is_groebner(gb));
}

TEST_CASE("unit ideal and zero generators") {
  auto r = make_ring({"x", "y"});
  MPoly x = MPoly::variable(r, 0), y = MPoly::variable(r, 1);
  MPoly one = MPoly::constant(r, Rat(1));
  auto gb = groebner<Rat>({x * y - one, x, MPoly(r)});
  REQUIRE(gb.size() == 1);
  CHECK(gb[0] == one);
  CHECK(groebner<Rat>({MPoly(r)}).empty());
}

TEST_CASE("saturation removes embedded components") {
  auto r = make_ring({"x", "y"}, TermOrder::grevlex(2));
  MPoly x = MPoly::variable(r, 0), y = MPoly::variable(r, 1);
  // (x*y, x^2) : x^inf = (1)
  auto s = saturate<Rat>({x * y, x * x}, x);
  REQUIRE(s.size() == 1);
  CHECK(s[0].is_constant());
  // (x*(y-1)) : x^inf = (y - 1)
  auto t = saturate<Rat>({x * (y - MPoly::constant(r, Rat(1)))}, x);
  CHECK(strings(t) == std::vector<std::string>{"y - 1"});
}

TEST_CASE("property: S-polynomials reduce to zero" * doctest::description("200 random ideals")) {
  Gen g(21);
  auto r = make_ring({"x", "y", "z"}, TermOrder::grevlex(3));
  for (int i = 0; i < 200; ++i) {
    std::vector<MPoly> gens;
    int k = g.integer(1, 3);
    for (int j = 0; j < k; ++j) gens.push_back(g.nonzero_poly(r, 3, 2));
    auto gb = groebner(gens);
    CHECK(is_groebner(gb));
    CHECK(is_reduced_basis(gb));
    for (const auto& f : gens) CHECK(reduce_mod_basis(f, gb).is_zero());
  }
}

TEST_CASE("property: reduced basis is independent of generator order and scaling") {
  Gen g(22);
  auto r = make_ring({"x", "y", "z"}, TermOrder({{1, OrderKind::GRevLex}, {2, OrderKind::GrLex}}));
  for (int i = 0; i < 200; ++i) {
    std::vector<MPoly> gens;
    int k = g.integer(1, 3);
    for (int j = 0; j < k; ++j) gens.push_back(g.nonzero_poly(r, 3, 2));
    auto gb = groebner(gens);
    std::vector<MPoly> other;
    for (const auto& f : gens) other.push_back(f.scale(g.nonzero_rational()));
    // add a combination of the generators, which does not change the ideal
    other.push_back(gens[0] * g.poly(r, 2, 1) + other.back());
    g.shuffle(other);
    CHECK(groebner(other) == gb);
  }
}

TEST_CASE("coefficients in a rational function field") {
  auto params = make_ring({"a"});
  auto r = make_ring({"x", "y"}, TermOrder::lex(2));
  RatFun a(MPoly::variable(params, 0));
  using KP = Poly<RatFun>;
  KP x = KP::variable(r, 0), y = KP::variable(r, 1);
  // a*x - y, x*y - a  ==>  y^2 - a^2, x - y/a
  auto gb = groebner<RatFun>({x.scale(a) - y, x * y - KP::constant(r, a)});
  REQUIRE(gb.size() == 2);
  CHECK(is_groebner(gb));
  CHECK(gb[0] == y * y - KP::constant(r, a * a));
  CHECK(gb[1] == x - y.scale(a.inverse()));
}
