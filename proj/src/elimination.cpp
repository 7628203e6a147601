#include "ioident/elimination.hpp"

#include <algorithm>

#include "ioident/series.hpp"

namespace ioident {

ProlongedSystem prolong(const Model& m, const SigmaGenerators& g, const DiffRing& ring, const Ranking& r,
                        std::size_t depth) {
  std::vector<DiffPoly> eqs;
  for (const auto& gen : g.all()) {
    DiffPoly d = gen;
    for (std::size_t k = 0; k <= depth; ++k) {
      eqs.push_back(d);
      if (k < depth) d = d.differentiate();
    }
  }
  DiffPoly sat = lift(g.saturator, m, ring);

  std::set<DiffVar> seen;
  for (const auto& e : eqs)
    for (const auto& v : e.variables()) seen.insert(v);
  for (const auto& v : sat.variables()) seen.insert(v);

  std::vector<DiffVar> elim, kept;
  for (const auto& v : seen) (ring.kind(v.base) == VarKind::State ? elim : kept).push_back(v);
  auto by_rank = [&](DiffVar a, DiffVar b) { return r.compare(a, b) > 0; };
  std::sort(elim.begin(), elim.end(), by_rank);
  std::sort(kept.begin(), kept.end(), by_rank);

  ProlongedSystem s;
  s.depth = depth;
  s.eliminated = elim.size();
  s.vars = elim;
  s.vars.insert(s.vars.end(), kept.begin(), kept.end());
  std::vector<std::string> names;
  for (const auto& v : s.vars) names.push_back(ring.var_name(v));
  std::vector<OrderBlock> blocks;
  if (!elim.empty()) blocks.push_back({elim.size(), OrderKind::GRevLex});
  if (!kept.empty()) blocks.push_back({kept.size(), OrderKind::Lex});
  s.ring = make_ring(names, TermOrder(blocks));
  for (const auto& e : eqs) s.equations.push_back(to_algebraic(e, s));
  s.saturators.push_back(to_algebraic(sat, s));
  return s;
}

KPoly to_algebraic(const DiffPoly& f, const ProlongedSystem& s) {
  std::map<DiffVar, std::size_t> index;
  for (std::size_t i = 0; i < s.vars.size(); ++i) index[s.vars[i]] = i;
  std::vector<Term<RatFun>> terms;
  for (const auto& [mono, c] : f.terms()) {
    Exponents e(s.vars.size(), 0);
    for (const auto& [v, k] : mono) {
      auto it = index.find(v);
      if (it == index.end()) throw ArityError("derivative outside the prolonged system");
      e[it->second] = k;
    }
    terms.push_back({std::move(e), c});
  }
  return KPoly::from_terms(s.ring, std::move(terms));
}

DiffPoly from_algebraic(const KPoly& p, const ProlongedSystem& s) {
  DiffPoly out;
  for (const auto& t : p.terms()) {
    DiffMonomial mono;
    for (std::size_t i = 0; i < t.exp.size(); ++i)
      if (t.exp[i]) mono.push_back({s.vars[i], t.exp[i]});
    std::sort(mono.begin(), mono.end());
    out += DiffPoly::term(std::move(mono), t.coeff);
  }
  return out;
}

std::vector<DiffPoly> eliminate(const ProlongedSystem& s) {
  KPoly sat = KPoly::constant(s.ring, RatFun(1));
  for (const auto& q : s.saturators) sat *= q;
  std::vector<KPoly> gb = saturate(s.equations, sat);
  std::vector<DiffPoly> out;
  for (const auto& g : gb) {
    bool pure = true;
    for (std::size_t i = 0; i < s.eliminated && pure; ++i) pure = !g.involves(i);
    if (pure) out.push_back(from_algebraic(g, s));
  }
  return out;
}

int compare_polys(const DiffPoly& a, const DiffPoly& b, const Ranking& r) {
  auto ma = sorted_monomials(a, r);
  auto mb = sorted_monomials(b, r);
  for (std::size_t i = 0; i < ma.size() && i < mb.size(); ++i)
    if (int c = compare_monomials(r, ma[i], mb[i]); c != 0) return c;
  if (ma.size() != mb.size()) return ma.size() < mb.size() ? -1 : 1;
  for (const auto& m : ma)
    if (int c = compare(a.terms().at(m), b.terms().at(m)); c != 0) return c;
  return 0;
}

std::vector<DiffPoly> basic_set(std::vector<DiffPoly> candidates, const Ranking& r) {
  std::vector<DiffPoly> chosen;
  std::erase_if(candidates, [](const DiffPoly& p) { return p.is_constant(); });
  while (!candidates.empty()) {
    auto best = candidates.begin();
    Rank best_rank = rank_of(*best, r);
    for (auto it = candidates.begin() + 1; it != candidates.end(); ++it) {
      Rank rk = rank_of(*it, r);
      int c = compare_rank(r, rk, best_rank);
      if (c < 0 || (c == 0 && compare_polys(*it, *best, r) < 0)) {
        best = it;
        best_rank = rk;
      }
    }
    DiffPoly p = *best;
    chosen.push_back(p);
    std::erase_if(candidates, [&](const DiffPoly& q) { return !is_reduced(q, p, r); });
  }
  return chosen;
}

bool is_leading_derivative(DiffVar v, const std::vector<DiffPoly>& elements, const Ranking& r) {
  for (const auto& e : elements) {
    DiffVar l = leader(e, r);
    if (l.base == v.base && v.order >= l.order) return true;
  }
  return false;
}

DiffPoly remove_content(const DiffPoly& f, const std::set<DiffVar>& leading, const DiffRing& ring) {
  if (f.is_constant()) return f;
  const RingPtr& pr = ring.params();
  MPoly den = MPoly::constant(pr, Rat(1));
  for (const auto& [m, c] : f.terms()) den = lcm(den, c.den().adopt(pr));

  std::set<DiffVar> var_set = f.variables();
  std::vector<DiffVar> vars(var_set.begin(), var_set.end());
  std::vector<std::string> names = pr->names();
  for (const auto& v : vars) names.push_back(ring.var_name(v));
  RingPtr big = make_ring(names);
  std::size_t np = pr->size();
  std::vector<std::size_t> shift(np);
  for (std::size_t i = 0; i < np; ++i) shift[i] = i;

  // Coefficients (as polynomials in parameters and non-leading variables)
  // of f viewed as a polynomial in the leading variables.
  std::map<Exponents, MPoly> coeffs;
  MPoly whole = MPoly::constant(big, Rat(0));
  for (const auto& [mono, c] : f.terms()) {
    MPoly num = c.num().adopt(pr) * exact_div(den, c.den().adopt(pr));
    MPoly cp = remap(num, big, shift);
    Exponents lead_exp(vars.size(), 0), rest(big->size(), 0);
    for (const auto& [v, k] : mono) {
      std::size_t idx = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) - vars.begin());
      if (leading.count(v)) lead_exp[idx] = k;
      else rest[np + idx] = k;
    }
    MPoly t = cp * MPoly::monomial(big, rest, Rat(1));
    auto [it, fresh] = coeffs.emplace(lead_exp, t);
    if (!fresh) it->second += t;
    Exponents full = rest;
    for (std::size_t i = 0; i < vars.size(); ++i) full[np + i] += lead_exp[i];
    whole += cp * MPoly::monomial(big, full, Rat(1));
  }
  MPoly content = MPoly::constant(big, Rat(0));
  for (const auto& [e, c] : coeffs) content = gcd(content, c);
  bool involves_var = false;
  for (std::size_t i = np; i < big->size(); ++i) involves_var = involves_var || content.involves(i);
  if (!involves_var) return f;

  MPoly q = exact_div(whole, content);
  DiffPoly out;
  for (const auto& t : q.terms()) {
    Exponents pe(t.exp.begin(), t.exp.begin() + static_cast<long>(np));
    DiffMonomial mono;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (t.exp[np + i]) mono.push_back({vars[i], t.exp[np + i]});
    out += DiffPoly::term(std::move(mono), RatFun(MPoly::monomial(pr, pe, t.coeff)));
  }
  return out;
}

namespace {

std::set<DiffVar> leading_variables(const std::vector<DiffPoly>& elements, const Ranking& r) {
  std::set<DiffVar> out;
  for (const auto& e : elements)
    for (const auto& v : e.variables())
      if (is_leading_derivative(v, elements, r)) out.insert(v);
  return out;
}

std::uint32_t max_order(const std::vector<DiffPoly>& ps) {
  std::uint32_t k = 0;
  for (const auto& p : ps) k = std::max(k, p.max_order());
  return k;
}

std::vector<DiffPoly> eliminated_at(const Model& m, const DiffRing& ring, const Ranking& r, std::size_t depth) {
  return eliminate(prolong(m, build_sigma_generators(m, ring), ring, r, depth));
}

// Ritt-Wu loop: basic set of the candidates, extended by nonzero remainders
// until every candidate reduces to zero.
std::vector<DiffPoly> characteristic_set(std::vector<DiffPoly> cands, const Ranking& r) {
  for (;;) {
    std::vector<DiffPoly> b = basic_set(cands, r);
    if (b.empty()) return b;
    AutoreducedSet a = make_autoreduced_set(b, r);
    std::vector<DiffPoly> fresh;
    for (const auto& c : cands) {
      DiffPoly rem = ritt_reduce(c, a).remainder;
      if (rem.is_zero()) continue;
      if (rem.is_constant()) throw Error("inconsistent system: a nonzero constant lies in the ideal");
      fresh.push_back(normalize_monic(rem, r));
    }
    if (fresh.empty()) return a.elements;
    cands = b;
    for (auto& f : fresh)
      if (std::find(cands.begin(), cands.end(), f) == cands.end()) cands.push_back(std::move(f));
  }
}

}  // namespace

VerificationReport verify_char_presentation(const CharPresentation& c, const Model& m,
                                            const std::vector<DiffPoly>& eliminated, const VerifyOptions& opts) {
  VerificationReport rep;
  const Ranking& r = c.ranking;
  DiffRingPtr ring = make_diff_ring(m);

  bool constant = std::any_of(c.elements.begin(), c.elements.end(), [](const DiffPoly& p) { return p.is_constant(); });
  rep.autoreduced = !constant && is_autoreduced(c.elements, r);
  if (constant) return rep;

  std::set<DiffVar> lead = leading_variables(c.elements, r);
  rep.initials = true;
  rep.content_free = true;
  rep.monic = true;
  for (const auto& e : c.elements) {
    for (const auto& v : leader_data(e, r).init.variables())
      if (is_leading_derivative(v, c.elements, r)) rep.initials = false;
    if (remove_content(e, lead, *ring) != e) rep.content_free = false;
    if (normalize_monic(e, r) != e) rep.monic = false;
  }

  rep.series = true;
  for (std::size_t i = 0; i < c.elements.size() && rep.series; ++i) {
    const DiffPoly& e = c.elements[i];
    std::size_t K = opts.series_order ? std::max<std::size_t>(opts.series_order, e.max_order() + 1) : e.max_order() + 4;
    auto v = not_in_ideal(e, m, opts.trials, K, trial_seed(opts.seed, 1000 + i));
    rep.series = v.verdict == Membership::Undetermined;
  }

  std::vector<DiffPoly> gens = eliminated;
  if (gens.empty()) gens = eliminated_at(m, *ring, r, max_order(c.elements));
  rep.reduction = true;
  AutoreducedSet a = make_autoreduced_set(c.elements, r);
  if (rep.autoreduced)
    for (const auto& g : gens)
      if (!ritt_reduce(g, a).remainder.is_zero()) rep.reduction = false;
  if (!rep.autoreduced) rep.reduction = false;
  return rep;
}

EliminationResult io_equations(const Model& m, const Ranking& r, const EliminationOptions& opts) {
  DiffRingPtr ring = make_diff_ring(m);
  return io_equations(m, build_sigma_generators(m, *ring), r, opts);
}

EliminationResult io_equations(const Model& m, const SigmaGenerators& gens, const Ranking& r,
                               const EliminationOptions& opts) {
  DiffRingPtr ring = make_diff_ring(m);
  for (std::uint32_t b = 0; b < ring->size(); ++b)
    if (ring->kind(b) != VarKind::State && !r.declares(b))
      throw ArityError("ranking must declare every output and input");

  std::size_t max_depth = opts.max_depth.value_or(m.n());
  std::vector<DiffPoly> last_elim, last_partial;
  for (std::size_t d = std::min<std::size_t>(1, max_depth); d <= max_depth; ++d) {
    std::vector<DiffPoly> elim = eliminate(prolong(m, gens, *ring, r, d));
    std::vector<DiffPoly> cands;
    for (const auto& e : elim) {
      if (e.is_constant()) throw Error("inconsistent system: a nonzero constant lies in the ideal");
      cands.push_back(normalize_monic(e, r));
    }
    std::vector<DiffPoly> cs = characteristic_set(cands, r);
    last_elim = elim;
    last_partial = cs;
    if (cs.size() != m.m()) continue;

    std::set<DiffVar> lead = leading_variables(cs, r);
    for (auto& e : cs) e = normalize_monic(remove_content(e, lead, *ring), r);
    CharPresentation pres{make_autoreduced_set(cs, r).elements, r};
    VerificationReport rep = verify_char_presentation(pres, m, elim, opts.verify);
    last_partial = pres.elements;
    if (rep.passed()) return {pres, rep, d, elim};
  }
  throw DepthExhaustedError(max_depth, last_elim, last_partial);
}

}  // namespace ioident
