#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ioident/ident_fields.hpp"
#include "support.hpp"

using namespace ioident;
using testing::Gen;

namespace {

struct Fixture {
  Model model;
  DiffRingPtr ring;
  Ranking ranking;
  EliminationResult elim;

  explicit Fixture(const std::string& name)
      : model(testing::load_model(name)), ring(make_diff_ring(model)), ranking(Ranking::standard(*ring)),
        elim(io_equations(model, ranking)) {}
};

std::vector<std::string> strings(const std::vector<RatFun>& v) {
  std::vector<std::string> out;
  for (const auto& f : v) out.push_back(to_string(f));
  return out;
}

std::vector<std::string> strings(const std::vector<MPoly>& v) {
  std::vector<std::string> out;
  for (const auto& f : v) out.push_back(to_string(f));
  return out;
}

RatFun rat(const std::string& s, const RingPtr& ring) { return parse_rational(s, ring); }

/// h(b, a) for h over the ring (a, b).
RatFun swap_ab(const RatFun& h) {
  const RingPtr& r = h.ring();
  return RatFun::fraction(remap(h.num().adopt(r), r, {1, 0}), remap(h.den().adopt(r), r, {1, 0}));
}

}  // namespace

TEST_CASE("fields of IO-identifiable functions") {
  CHECK(strings(io_identifiable_field(Fixture("growth.model").elim.presentation).generators) ==
        std::vector<std::string>{"a + b"});
  CHECK(strings(io_identifiable_field(Fixture("oscillator.model").elim.presentation).generators) ==
        std::vector<std::string>{"w"});
  CHECK(strings(io_identifiable_field(testing::load_model("hidden_rate.model")).generators) ==
        std::vector<std::string>{"m1", "m2"});
}

TEST_CASE("field membership") {
  auto r = make_ring({"a", "b"});
  auto in = [&](const std::string& h, std::vector<std::string> gens) {
    std::vector<RatFun> g;
    for (const auto& s : gens) g.push_back(rat(s, r));
    return field_membership(rat(h, r), g);
  };
  CHECK_FALSE(in("a", {"a + b"}));
  CHECK(in("(a + b)^3 + 2", {"a + b"}));
  CHECK(in("1/(a + b) - 7", {"a + b"}));
  CHECK_FALSE(in("a*b", {"a + b"}));
  CHECK(in("a*b", {"a + b", "a^2 + b^2"}));
  CHECK(in("a", {"a + b", "a - b"}));
  CHECK_FALSE(in("a", {"a^2"}));
  CHECK(in("a^4 + 1/a^2", {"a^2"}));
  CHECK(in("b/a", {"a/b"}));
  CHECK(in("3/7", {}));
  CHECK_FALSE(in("b", {}));
}

TEST_CASE("non-membership agrees with distinct values on a fibre") {
  // (1, 3) and (2, 2) share a + b = 4 but differ in a, so a is not a function of a + b
  auto r = make_ring({"a", "b"});
  RatFun s = rat("a + b", r), a = rat("a", r);
  std::vector<Rat> p{Rat(1), Rat(3)}, q{Rat(2), Rat(2)};
  REQUIRE(s.evaluate(p) == s.evaluate(q));
  CHECK(a.evaluate(p) != a.evaluate(q));
  CHECK_FALSE(field_membership(a, {s}));
}

TEST_CASE("property: membership in the symmetric field matches symmetry" * doctest::description("240 cases")) {
  // Q(a + b, a*b) is the field of symmetric functions, so h lies in it iff h(a, b) = h(b, a)
  Gen g(61);
  auto r = make_ring({"a", "b"});
  std::vector<RatFun> gens{rat("a + b", r), rat("a*b", r)};
  int members = 0;
  for (int i = 0; i < 240; ++i) {
    RatFun h = RatFun::fraction(g.poly(r, 3, 2), g.nonzero_poly(r, 2, 1));
    if (g.coin()) h = h + swap_ab(h);  // force some symmetric samples
    bool symmetric = h == swap_ab(h);
    CHECK(field_membership(h, gens) == symmetric);
    members += symmetric;
  }
  CHECK(members > 50);
}

TEST_CASE("property: fields are closed under arithmetic" * doctest::description("200 cases")) {
  Gen g(62);
  auto r = make_ring({"a", "b", "c"});
  std::vector<RatFun> gens{rat("a + b*c", r), rat("b^2", r)};
  auto element = [&] {
    RatFun e(g.nonzero_rational());
    for (int k = 0; k < 2; ++k) e = e + gens[static_cast<std::size_t>(g.integer(0, 1))] * RatFun(g.rational());
    return e;
  };
  for (int i = 0; i < 200; ++i) {
    RatFun x = element(), y = element();
    if (y.is_zero()) continue;
    CHECK(field_membership(x + y, gens));
    CHECK(field_membership(x * y, gens));
    CHECK(field_membership(x / y, gens));
    CHECK_FALSE(field_membership(x + rat("c", r) * (y * y + RatFun(1)), gens));
  }
}

TEST_CASE("Wronskian certificates") {
  Fixture growth("growth.model");
  auto c = wronskian_certificates(growth.elim.presentation, growth.model, 5, 0);
  REQUIRE(c.size() == 1);
  CHECK(to_string(c[0].coefficient) == "a + b");
  CHECK(c[0].status == CertificateStatus::IdentifiableByWronskian);
  REQUIRE(c[0].witness);
  REQUIRE(c[0].witness->subset.size() == 1);
  CHECK(to_string(c[0].witness->subset[0], *growth.ring, growth.ranking) == "y");

  for (const char* name : {"oscillator.model", "hidden_rate.model"}) {
    Fixture f(name);
    auto certs = wronskian_certificates(f.elim.presentation, f.model, 5, 0);
    CHECK_FALSE(certs.empty());
    for (const auto& cert : certs) {
      CHECK(cert.status == CertificateStatus::NoCertificate);
      CHECK_FALSE(cert.witness);
    }
  }
}

TEST_CASE("oscillator Wronskians lie in the differential ideal") {
  // Monomials of the second element besides the leader: y1*y2 and y1.
  // Their Wronskian is -y1^2*y2', which the presentation reduces to zero.
  Fixture f("oscillator.model");
  auto p = [&](const char* s) { return parse_diff_poly(s, *f.ring); };
  DiffPoly det = determinant(wronskian({p("y1*y2"), p("y1")}, 2));
  CHECK(det == p("-y1^2*y2'"));
  AutoreducedSet A = make_autoreduced_set(f.elim.presentation.elements, f.ranking);
  CHECK(ritt_reduce(det, A).remainder.is_zero());
  CHECK(not_in_ideal(det, f.model, 5, 0, 0).verdict == Membership::Undetermined);
}

TEST_CASE("certified coefficients are IO-identifiable") {
  for (const auto& name : testing::fixture_names()) {
    Fixture f(name);
    FieldDescription field = io_identifiable_field(f.elim.presentation);
    for (const auto& cert : wronskian_certificates(f.elim.presentation, f.model, 5, 0)) {
      CHECK(field_membership(cert.coefficient, field));
    }
  }
}

TEST_CASE("polynomial first integrals") {
  CHECK(polynomial_first_integrals(testing::load_model("growth.model"), 3).basis.empty());
  Model o = testing::load_model("oscillator.model");
  CHECK(strings(polynomial_first_integrals(o, 1).basis) == std::vector<std::string>{"x3"});
  CHECK(strings(polynomial_first_integrals(o, 3).basis) ==
        std::vector<std::string>{"w*x1^2 + w*x2^2 + x2^2*x3", "x3^3", "x3^2", "x3"});
  CHECK(strings(polynomial_first_integrals(testing::load_model("hidden_rate.model"), 1).basis) ==
        std::vector<std::string>{"x1"});
}

TEST_CASE("property: first integrals are annihilated by the vector field and constant on solutions") {
  std::vector<Model> models;
  for (const auto& n : testing::fixture_names()) models.push_back(testing::load_model(n));
  models.push_back(parse_model("params: k\nstates: x1, x2\noutputs: y\nx1' = k*x2\nx2' = -k*x1\ny = x1\n"));
  for (const auto& m : models) {
    for (const auto& p : polynomial_first_integrals(m, 3).basis) {
      MPoly lie(m.ring);
      for (std::size_t i = 0; i < m.n(); ++i) lie += p.derivative(m.state_index(i)) * m.f[i];
      CHECK(lie.is_zero());
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        SeriesPoint s = solve_series(m, sample_point(m, seed, 6), 6);
        Series v = eval_model_poly(p, m, s);
        for (std::size_t k = 1; k < v.size(); ++k) CHECK(is_zero(v[k]));
      }
    }
  }
}

TEST_CASE("equality certificates") {
  auto growth = equality_certificate(testing::load_model("growth.model"), 3);
  CHECK(growth.status == EqualityStatus::CertifiedUpToDegree);
  CHECK(growth.degree == 3);
  auto osc = equality_certificate(testing::load_model("oscillator.model"), 1);
  CHECK(osc.status == EqualityStatus::FirstIntegralFound);
  CHECK(strings(osc.first_integrals) == std::vector<std::string>{"x3"});
  CHECK(equality_certificate(testing::load_model("growth.model"), 0).status == EqualityStatus::Inconclusive);
}

TEST_CASE("model extension of the growth model") {
  Model m = testing::load_model("growth.model");
  auto ext = [&](const char* h) { return extend_model_for_function(m, parse_rational(h, m.ring)); };
  Model e = ext("a + b");
  CHECK(e.f[1].is_zero());
  CHECK(to_string(e.g[1]) == "-a - b + x2");
  e = ext("x1");
  CHECK(to_string(e.f[1]) == "a*x1 + b*x1");
  CHECK(to_string(e.g[1]) == "-x1 + x2");
  e = ext("1");
  CHECK(e.f[1].is_zero());
  CHECK(to_string(e.g[1]) == "x2 - 1");
}

TEST_CASE("property: the field is invariant under rescaling and reordering equations") {
  Gen g(64);
  for (const auto& name : testing::fixture_names()) {
    Model m = testing::load_model(name);
    auto ring = make_diff_ring(m);
    Ranking r = Ranking::standard(*ring);
    auto expected = strings(io_identifiable_field(m).generators);
    for (int i = 0; i < 70; ++i) {
      SigmaGenerators sg = build_sigma_generators(m, *ring);
      for (auto& e : sg.diff_eqs) e = e.scale(g.nonzero_rational());
      for (auto& e : sg.out_eqs) e = e.scale(g.nonzero_rational());
      g.shuffle(sg.diff_eqs);
      g.shuffle(sg.out_eqs);
      CHECK(strings(io_identifiable_field(io_equations(m, sg, r).presentation).generators) == expected);
    }
  }
}

TEST_CASE("model extension by a function of the states") {
  Model m = testing::load_model("hidden_rate.model");
  Model e = extend_model_for_function(m, parse_rational("x1*x2 + m1", m.ring));
  CHECK(e.states == std::vector<std::string>{"x1", "x2", "x3"});
  CHECK(e.outputs == std::vector<std::string>{"y", "y2"});
  // x3' = x1*x2' = x1*(x1*x2 + m1*x1 + m2)
  CHECK(to_string(e.f[2]) == "m1*x1^2 + x1^2*x2 + m2*x1");
  CHECK(to_string(e.g[1]) == "-x1*x2 - m1 + x3");

  Model clash = parse_model("params: p\nstates: x1, x2\noutputs: y2\nx1' = p\nx2' = x1\ny2 = x2\n");
  Model ce = extend_model_for_function(clash, parse_rational("x1", clash.ring));
  CHECK(ce.states.back() == "x3");
  CHECK(ce.outputs.back() == "y2_");

  Model with_input = parse_model("params: p\nstates: x\ninputs: u\noutputs: y\nx' = u\ny = x\n");
  CHECK_THROWS_AS(extend_model_for_function(with_input, parse_rational("x*u", with_input.ring)),
                  UnsupportedFunctionError);
}

TEST_CASE("property: extension keeps outputs and tracks the function") {
  Gen g(63);
  Model m = parse_model("params: k, d\nstates: x1, x2\noutputs: y\nx1' = k*x2 - x1\nx2' = -d*x1/(x2 + 2)\ny = x1\n");
  for (int i = 0; i < 200; ++i) {
    RatFun h = RatFun::fraction(g.poly(m.ring, 3, 2), g.coin() ? MPoly::constant(m.ring, Rat(1))
                                                              : g.nonzero_poly(m.ring, 2, 1));
    Model e = extend_model_for_function(m, h);
    SamplePoint p = sample_point(m, trial_seed(63, static_cast<std::uint64_t>(i)), 5);
    RatFun fh = h;
    Rat h0;
    try {
      h0 = fh.evaluate([&] {
        std::vector<Rat> pt = p.mu;
        pt.insert(pt.end(), p.x0.begin(), p.x0.end());
        return pt;
      }());
    } catch (const DivisionError&) {
      continue;
    }
    SamplePoint pe = p;
    pe.x0.push_back(h0);
    SeriesPoint s, se;
    try {
      s = solve_series(m, p, 5);
      se = solve_series(e, pe, 5);
    } catch (const SingularPointError&) {
      continue;
    }
    CHECK(se.y[0] == s.y[0]);
    // the new output x_new - h starts at zero and stays there
    CHECK(series_is_zero(se.y[1]));
  }
}
