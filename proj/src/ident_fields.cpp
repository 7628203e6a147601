#include "ioident/ident_fields.hpp"

#include <algorithm>
#include <map>

namespace ioident {

RatFun canonical_coefficient(const RatFun& c) {
  if (c.is_zero()) return c;
  return sgn(c.num().lc()) < 0 ? -c : c;
}

namespace {

RatFun remap_fraction(const RatFun& r, const RingPtr& target) {
  if (!r.ring()) return r.adopt(target);
  return RatFun::fraction(remap_by_name(r.num(), target), remap_by_name(r.den(), target));
}

// Copy of a polynomial in the parameters as a polynomial in Z over K = Q(mu).
KPoly in_z(const MPoly& p, const RingPtr& zring) {
  std::vector<Term<RatFun>> ts;
  for (const auto& t : p.terms()) ts.push_back({t.exp, RatFun(t.coeff)});
  return KPoly::from_terms(zring, std::move(ts));
}

}  // namespace

bool field_membership(const RatFun& h, const std::vector<RatFun>& gens) {
  if (h.is_constant()) return true;
  RingPtr pr = h.ring();
  for (const auto& g : gens)
    if (g.ring()) pr = g.ring();
  RatFun hh = remap_fraction(h, pr);

  std::vector<std::string> znames;
  for (const auto& n : pr->names()) znames.push_back("_Z_" + n);
  RingPtr zring = make_ring(znames, TermOrder::grevlex(znames.size()));

  std::vector<KPoly> rel;
  KPoly sat = KPoly::constant(zring, RatFun(1));
  for (const auto& g0 : gens) {
    RatFun g = remap_fraction(g0, pr);
    if (g.is_constant()) continue;
    KPoly den = in_z(g.den(), zring);
    rel.push_back(in_z(g.num(), zring) - den.scale(g));
    sat *= den;
  }
  std::vector<KPoly> basis = rel.empty() ? rel : saturate(rel, sat);
  KPoly test = in_z(hh.num(), zring).scale(RatFun(hh.den())) - in_z(hh.den(), zring).scale(RatFun(hh.num()));
  return (basis.empty() ? test : reduce_mod_basis(test, basis)).is_zero();
}

FieldDescription io_identifiable_field(const CharPresentation& c) {
  std::vector<RatFun> cands;
  for (const auto& e : c.elements)
    for (const auto& [m, coeff] : e.terms()) {
      if (coeff.is_constant()) continue;
      RatFun k = canonical_coefficient(coeff);
      if (std::find(cands.begin(), cands.end(), k) == cands.end()) cands.push_back(k);
    }
  auto weight = [](const RatFun& r) { return r.num().total_degree() + r.den().total_degree(); };
  std::sort(cands.begin(), cands.end(), [&](const RatFun& a, const RatFun& b) {
    if (weight(a) != weight(b)) return weight(a) < weight(b);
    return compare(a, b) > 0;
  });
  FieldDescription f;
  for (const auto& k : cands)
    if (!field_membership(k, f.generators)) f.generators.push_back(k);
  std::sort(f.generators.begin(), f.generators.end(), [](const RatFun& a, const RatFun& b) { return compare(a, b) > 0; });
  return f;
}

FieldDescription io_identifiable_field(const Model& m) {
  DiffRingPtr ring = make_diff_ring(m);
  return io_identifiable_field(io_equations(m, Ranking::standard(*ring)).presentation);
}

std::vector<Certificate> wronskian_certificates(const CharPresentation& c, const Model& m, std::size_t trials,
                                                std::uint64_t seed, std::size_t series_order) {
  std::vector<Certificate> out;
  for (std::size_t i = 0; i < c.elements.size(); ++i) {
    const DiffPoly& e = c.elements[i];
    std::vector<RatFun> coeffs;
    for (const auto& [mono, k] : e.terms()) {
      if (k.is_constant()) continue;
      RatFun ck = canonical_coefficient(k);
      if (std::find(coeffs.begin(), coeffs.end(), ck) == coeffs.end()) coeffs.push_back(ck);
    }
    if (coeffs.empty()) continue;
    std::sort(coeffs.begin(), coeffs.end(), [](const RatFun& a, const RatFun& b) { return compare(a, b) > 0; });

    std::vector<DiffMonomial> monos = sorted_monomials(e, c.ranking);
    std::reverse(monos.begin(), monos.end());
    std::size_t N = monos.size();
    std::optional<WronskianWitness> witness;
    for (std::size_t skip = N; skip-- > 0 && !witness;) {
      std::vector<DiffPoly> z;
      for (std::size_t j = 0; j < N; ++j)
        if (j != skip) z.push_back(DiffPoly::term(monos[j], RatFun(1)));
      DiffPoly det = determinant(wronskian(z, N - 1));
      if (det.is_zero()) continue;
      std::size_t K = series_order ? std::max<std::size_t>(series_order, det.max_order() + 1) : 0;
      auto v = not_in_ideal(det, m, trials, K, trial_seed(seed, 2000 + 100 * i + skip));
      if (v.verdict == Membership::NotInIdeal) witness = WronskianWitness{z, det, *v.witness_seed};
    }
    for (const auto& k : coeffs) {
      Certificate cert;
      cert.coefficient = k;
      cert.element = i;
      cert.status = witness ? CertificateStatus::IdentifiableByWronskian : CertificateStatus::NoCertificate;
      cert.witness = witness;
      out.push_back(std::move(cert));
    }
  }
  return out;
}

namespace {

// Reduced row echelon form in place; returns the pivot column of each nonzero row.
std::vector<std::size_t> rref(std::vector<std::vector<RatFun>>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && a[p][col].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    RatFun inv = a[row][col].inverse();
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      RatFun f = a[r][col];
      for (std::size_t k = col; k < cols; ++k)
        if (!a[row][k].is_zero()) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(col);
    ++row;
  }
  a.resize(row);
  return pivots;
}

// Scales p to coprime integer coefficients with a positive leading one.
MPoly integer_primitive(const MPoly& p) {
  if (p.is_zero()) return p;
  mpz_class l = 1, g = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
  }
  Rat s(l, g);
  if (sgn(p.lc()) < 0) s = -s;
  return p.scale(s);
}

std::vector<Exponents> state_monomials(std::size_t n, std::size_t D) {
  std::vector<Exponents> out;
  Exponents e(n, 0);
  auto rec = [&](auto&& self, std::size_t var, std::size_t left) -> void {
    if (var == n) {
      if (exp_degree(e) > 0) out.push_back(e);
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      e[var] = static_cast<std::uint32_t>(k);
      self(self, var + 1, left - k);
    }
    e[var] = 0;
  };
  rec(rec, 0, D);
  TermOrder ord = TermOrder::grlex(n);
  std::sort(out.begin(), out.end(), [&](const Exponents& a, const Exponents& b) { return ord.compare(a, b) > 0; });
  return out;
}

}  // namespace

FirstIntegralBasis polynomial_first_integrals(const Model& m, std::size_t D) {
  FirstIntegralBasis out;
  out.degree = D;
  if (m.n() == 0 || D == 0) return out;
  std::vector<Exponents> alphas = state_monomials(m.n(), D);
  std::size_t np = m.lambda();

  auto x_monomial = [&](const Exponents& a) {
    Exponents e(m.ring->size(), 0);
    for (std::size_t i = 0; i < m.n(); ++i) e[m.state_index(i)] = a[i];
    return MPoly::monomial(m.ring, e, Rat(1));
  };

  // rows indexed by the (x, u) part of a monomial; entries are polynomials in mu
  std::map<Exponents, std::vector<MPoly>> rows;
  for (std::size_t col = 0; col < alphas.size(); ++col) {
    MPoly p = x_monomial(alphas[col]);
    MPoly lie = MPoly::constant(m.ring, Rat(0));
    for (std::size_t i = 0; i < m.n(); ++i) lie += p.derivative(m.state_index(i)) * m.f[i];
    for (const auto& t : lie.terms()) {
      Exponents xu(t.exp.begin() + static_cast<long>(np), t.exp.end());
      Exponents pe(t.exp.begin(), t.exp.begin() + static_cast<long>(np));
      auto& row = rows[xu];
      if (row.empty()) row.assign(alphas.size(), MPoly::constant(m.param_ring, Rat(0)));
      row[col] += MPoly::monomial(m.param_ring, pe, t.coeff);
    }
  }
  std::vector<std::vector<RatFun>> a;
  for (const auto& [k, row] : rows) {
    std::vector<RatFun> r;
    for (const auto& p : row) r.push_back(RatFun(p));
    a.push_back(std::move(r));
  }
  std::vector<std::size_t> piv = rref(a, alphas.size());

  std::vector<std::vector<RatFun>> null;
  for (std::size_t free = 0; free < alphas.size(); ++free) {
    if (std::find(piv.begin(), piv.end(), free) != piv.end()) continue;
    std::vector<RatFun> v(alphas.size(), RatFun(0));
    v[free] = RatFun(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][free];
    null.push_back(std::move(v));
  }
  rref(null, alphas.size());

  for (const auto& v : null) {
    MPoly den = MPoly::constant(m.param_ring, Rat(1));
    for (const auto& c : v) den = lcm(den, c.den().adopt(m.param_ring));
    MPoly content = MPoly::constant(m.param_ring, Rat(0));
    std::vector<MPoly> nums;
    for (const auto& c : v) {
      MPoly n = c.num().adopt(m.param_ring) * exact_div(den, c.den().adopt(m.param_ring));
      content = gcd(content, n);
      nums.push_back(std::move(n));
    }
    MPoly p = MPoly::constant(m.ring, Rat(0));
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      if (nums[k].is_zero()) continue;
      MPoly c = exact_div(nums[k], content);
      p += remap_by_name(c, m.ring) * x_monomial(alphas[k]);
    }
    out.basis.push_back(integer_primitive(p));
  }
  return out;
}

EqualityCertificate equality_certificate(const Model& m, std::size_t D) {
  EqualityCertificate c;
  c.degree = D;
  if (D == 0) return c;
  FirstIntegralBasis fi = polynomial_first_integrals(m, D);
  c.first_integrals = fi.basis;
  c.status = fi.basis.empty() ? EqualityStatus::CertifiedUpToDegree : EqualityStatus::FirstIntegralFound;
  return c;
}

Model extend_model_for_function(const Model& m, const RatFun& h0) {
  RatFun h = remap_fraction(h0, m.ring);
  for (std::size_t i = 0; i < m.kappa(); ++i)
    if (h.num().involves(m.input_index(i)) || h.den().involves(m.input_index(i)))
      throw UnsupportedFunctionError("the function must not involve inputs");

  auto fresh = [&](std::string base) {
    auto taken = [&](const std::string& s) {
      for (const auto* v : {&m.params, &m.states, &m.inputs, &m.outputs})
        if (std::find(v->begin(), v->end(), s) != v->end()) return true;
      return false;
    };
    while (taken(base)) base += "_";
    return base;
  };
  std::string xn = fresh("x" + std::to_string(m.n() + 1));
  std::string yn = fresh("y" + std::to_string(m.m() + 1));

  std::vector<RatFun> srhs, orhs;
  RatFun rhs(0);
  for (std::size_t i = 0; i < m.n(); ++i) {
    RatFun fi = RatFun::fraction(m.f[i], m.Q);
    srhs.push_back(fi);
    rhs += fi * h.derivative(m.state_index(i));
  }
  for (std::size_t j = 0; j < m.m(); ++j) orhs.push_back(RatFun::fraction(m.g[j], m.Q));

  auto states = m.states;
  states.push_back(xn);
  auto outputs = m.outputs;
  outputs.push_back(yn);
  std::vector<RatFun> zs(states.size(), RatFun(0)), zo(outputs.size(), RatFun(0));
  RingPtr ring = make_model(m.params, states, m.inputs, outputs, zs, zo).ring;

  for (auto& r : srhs) r = remap_fraction(r, ring);
  for (auto& r : orhs) r = remap_fraction(r, ring);
  srhs.push_back(remap_fraction(rhs, ring));
  orhs.push_back(RatFun(MPoly::variable(ring, *ring->index_of(xn))) - remap_fraction(h, ring));
  return make_model(m.params, states, m.inputs, outputs, srhs, orhs);
}

}  // namespace ioident
