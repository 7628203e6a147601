#include "ioident/diff_ring.hpp"

#include <algorithm>
#include <sstream>

namespace ioident {

DiffRing::DiffRing(std::vector<std::string> names, std::vector<VarKind> kinds, RingPtr params)
    : names_(std::move(names)), kinds_(std::move(kinds)), params_(std::move(params)) {
  if (names_.size() != kinds_.size()) throw ArityError("DiffRing: names/kinds length mismatch");
}

std::optional<std::uint32_t> DiffRing::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - names_.begin());
}

std::string DiffRing::var_name(DiffVar v) const {
  std::string s = names_.at(v.base);
  if (v.order <= 3) return s + std::string(v.order, '\'');
  return s + "^(" + std::to_string(v.order) + ")";
}

DiffMonomial monomial_mul(const DiffMonomial& a, const DiffMonomial& b) {
  DiffMonomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].first, a[i].second + b[j].second});
      ++i;
      ++j;
    }
  }
  return out;
}

// ---- DiffPoly ----

DiffPoly::DiffPoly(const RatFun& c) {
  if (!c.is_zero()) terms_.emplace(DiffMonomial{}, c);
}

DiffPoly DiffPoly::variable(DiffVar v, std::uint32_t power) {
  DiffPoly p;
  if (power == 0) return DiffPoly(RatFun(1));
  p.terms_.emplace(DiffMonomial{{v, power}}, RatFun(1));
  return p;
}

DiffPoly DiffPoly::term(DiffMonomial m, const RatFun& c) {
  DiffPoly p;
  std::sort(m.begin(), m.end());
  DiffMonomial clean;
  for (const auto& [v, e] : m) {
    if (e == 0) continue;
    if (!clean.empty() && clean.back().first == v) clean.back().second += e;
    else clean.push_back({v, e});
  }
  if (!c.is_zero()) p.terms_.emplace(std::move(clean), c);
  return p;
}

void DiffPoly::add_term(const DiffMonomial& m, const RatFun& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

std::set<DiffVar> DiffPoly::variables() const {
  std::set<DiffVar> vs;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) vs.insert(v);
  return vs;
}

std::uint32_t DiffPoly::degree(DiffVar v) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& [w, e] : m)
      if (w == v) d = std::max(d, e);
  return d;
}

std::uint64_t DiffPoly::total_degree() const {
  std::uint64_t d = 0;
  for (const auto& [m, c] : terms_) {
    std::uint64_t s = 0;
    for (const auto& [w, e] : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

std::uint32_t DiffPoly::max_order() const {
  std::uint32_t o = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& [w, e] : m) o = std::max(o, w.order);
  return o;
}

DiffPoly DiffPoly::coefficient(DiffVar v, std::uint32_t k) const {
  DiffPoly out;
  for (const auto& [m, c] : terms_) {
    std::uint32_t e = 0;
    DiffMonomial rest;
    for (const auto& pe : m) {
      if (pe.first == v) e = pe.second;
      else rest.push_back(pe);
    }
    if (e == k) out.add_term(rest, c);
  }
  return out;
}

DiffPoly DiffPoly::partial(DiffVar v) const {
  DiffPoly out;
  for (const auto& [m, c] : terms_) {
    DiffMonomial rest;
    std::uint32_t e = 0;
    for (const auto& pe : m) {
      if (pe.first == v) {
        e = pe.second;
        if (e > 1) rest.push_back({v, e - 1});
      } else {
        rest.push_back(pe);
      }
    }
    if (e > 0) out.add_term(rest, c * RatFun(static_cast<long>(e)));
  }
  return out;
}

DiffPoly DiffPoly::differentiate() const {
  DiffPoly out;
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      const auto& [v, e] = m[i];
      DiffMonomial rest;
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (j == i) {
          if (e > 1) rest.push_back({v, e - 1});
        } else {
          rest.push_back(m[j]);
        }
      }
      out.add_term(monomial_mul(rest, {{v.derive(), 1}}), c * RatFun(static_cast<long>(e)));
    }
  }
  return out;
}

DiffPoly DiffPoly::differentiate(std::uint32_t times) const {
  DiffPoly p = *this;
  for (std::uint32_t k = 0; k < times; ++k) p = p.differentiate();
  return p;
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

DiffPoly DiffPoly::operator+(const DiffPoly& o) const {
  DiffPoly out(*this);
  out += o;
  return out;
}

DiffPoly DiffPoly::operator-(const DiffPoly& o) const {
  DiffPoly out(*this);
  out -= o;
  return out;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
  DiffPoly out;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) out.add_term(monomial_mul(m1, m2), c1 * c2);
  return out;
}

DiffPoly DiffPoly::scale(const RatFun& c) const {
  if (c.is_zero()) return {};
  DiffPoly out(*this);
  for (auto& [m, k] : out.terms_) k = k * c;
  return out;
}

DiffPoly DiffPoly::mul_monomial(const DiffMonomial& mono, const RatFun& c) const {
  DiffPoly out;
  for (const auto& [m, k] : terms_) out.add_term(monomial_mul(m, mono), k * c);
  return out;
}

DiffPoly DiffPoly::pow(unsigned k) const {
  DiffPoly r(RatFun(1));
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

// ---- Ranking ----

Ranking::Ranking(std::vector<std::vector<std::uint32_t>> blocks) : blocks_(std::move(blocks)) {}

Ranking Ranking::standard(const DiffRing& ring) {
  std::vector<std::uint32_t> states, io;
  for (std::uint32_t i = 0; i < ring.size(); ++i)
    if (ring.kind(i) == VarKind::State) states.push_back(i);
  for (std::uint32_t i = 0; i < ring.size(); ++i)
    if (ring.kind(i) == VarKind::Output) io.push_back(i);
  for (std::uint32_t i = 0; i < ring.size(); ++i)
    if (ring.kind(i) == VarKind::Input) io.push_back(i);
  std::vector<std::vector<std::uint32_t>> blocks;
  if (!states.empty()) blocks.push_back(states);
  blocks.push_back(io);
  return Ranking(blocks);
}

Ranking Ranking::io(const DiffRing& ring) {
  Ranking full = standard(ring);
  return Ranking({full.blocks().back()});
}

bool Ranking::declares(std::uint32_t base) const {
  for (const auto& b : blocks_)
    if (std::find(b.begin(), b.end(), base) != b.end()) return true;
  return false;
}

std::pair<std::size_t, std::size_t> Ranking::position(std::uint32_t base) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    auto it = std::find(blocks_[i].begin(), blocks_[i].end(), base);
    if (it != blocks_[i].end()) return {i, static_cast<std::size_t>(it - blocks_[i].begin())};
  }
  throw ArityError("variable with index " + std::to_string(base) + " is not covered by the ranking");
}

int Ranking::compare(DiffVar v, DiffVar w) const {
  auto [bv, pv] = position(v.base);
  auto [bw, pw] = position(w.base);
  if (bv != bw) return bv < bw ? 1 : -1;
  if (v.order != w.order) return v.order > w.order ? 1 : -1;
  if (pv != pw) return pv < pw ? 1 : -1;
  return 0;
}

int compare_rank(const Ranking& r, const Rank& a, const Rank& b) {
  if (int c = r.compare(a.lead, b.lead); c != 0) return c;
  if (a.degree != b.degree) return a.degree > b.degree ? 1 : -1;
  return 0;
}

DiffVar leader(const DiffPoly& f, const Ranking& r) {
  auto vars = f.variables();
  if (vars.empty()) throw ConstantPolynomialError("leader of a constant differential polynomial");
  DiffVar best = *vars.begin();
  for (const auto& v : vars)
    if (r.compare(v, best) > 0) best = v;
  return best;
}

Rank rank_of(const DiffPoly& f, const Ranking& r) {
  DiffVar v = leader(f, r);
  return {v, f.degree(v)};
}

LeaderData leader_data(const DiffPoly& f, const Ranking& r) {
  LeaderData d;
  d.lead = leader(f, r);
  std::uint32_t deg = f.degree(d.lead);
  d.init = f.coefficient(d.lead, deg);
  d.sep = f.partial(d.lead);
  d.rank = {d.lead, deg};
  return d;
}

namespace {

DiffMonomial sorted_desc(const DiffMonomial& m, const Ranking& r) {
  DiffMonomial s = m;
  std::sort(s.begin(), s.end(), [&](const auto& a, const auto& b) { return r.compare(a.first, b.first) > 0; });
  return s;
}

}  // namespace

int compare_monomials(const Ranking& r, const DiffMonomial& a, const DiffMonomial& b) {
  DiffMonomial sa = sorted_desc(a, r), sb = sorted_desc(b, r);
  for (std::size_t i = 0; i < std::min(sa.size(), sb.size()); ++i) {
    if (int c = r.compare(sa[i].first, sb[i].first); c != 0) return c;
    if (sa[i].second != sb[i].second) return sa[i].second > sb[i].second ? 1 : -1;
  }
  if (sa.size() != sb.size()) return sa.size() > sb.size() ? 1 : -1;
  return 0;
}

std::vector<DiffMonomial> sorted_monomials(const DiffPoly& f, const Ranking& r) {
  std::vector<DiffMonomial> ms;
  for (const auto& [m, c] : f.terms()) ms.push_back(m);
  std::sort(ms.begin(), ms.end(), [&](const auto& a, const auto& b) { return compare_monomials(r, a, b) > 0; });
  return ms;
}

bool is_reduced(const DiffPoly& f, const DiffPoly& g, const Ranking& r) {
  Rank rg = rank_of(g, r);
  for (const auto& v : f.variables())
    if (v.base == rg.lead.base && v.order > rg.lead.order) return false;
  return f.degree(rg.lead) < rg.degree;
}

AutoreducedSet make_autoreduced_set(std::vector<DiffPoly> elems, const Ranking& r) {
  std::stable_sort(elems.begin(), elems.end(), [&](const DiffPoly& a, const DiffPoly& b) {
    return compare_rank(r, rank_of(a, r), rank_of(b, r)) < 0;
  });
  return {std::move(elems), r};
}

bool is_autoreduced(const std::vector<DiffPoly>& s, const Ranking& r) {
  for (const auto& p : s)
    if (p.is_constant()) throw ConstantPolynomialError("autoreduced sets contain no constants");
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (i != j && !is_reduced(s[i], s[j], r)) return false;
  return true;
}

int compare_autoreduced(const AutoreducedSet& a, const AutoreducedSet& b) {
  const Ranking& r = a.ranking;
  std::size_t n = std::min(a.elements.size(), b.elements.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare_rank(r, rank_of(a.elements[i], r), rank_of(b.elements[i], r));
    if (c != 0) return c;
  }
  if (a.elements.size() == b.elements.size()) return 0;
  // A longer set with a matching prefix ranks lower.
  return a.elements.size() > b.elements.size() ? -1 : 1;
}

RittResult ritt_reduce(const DiffPoly& f, const AutoreducedSet& a) {
  const Ranking& r = a.ranking;
  std::vector<LeaderData> ld;
  ld.reserve(a.elements.size());
  for (const auto& e : a.elements) ld.push_back(leader_data(e, r));

  RittResult res{f, DiffPoly(RatFun(1)), {}};
  std::map<std::pair<std::size_t, std::uint32_t>, DiffPoly> derived;
  auto derivative_of = [&](std::size_t i, std::uint32_t k) -> const DiffPoly& {
    auto key = std::make_pair(i, k);
    auto it = derived.find(key);
    if (it == derived.end()) it = derived.emplace(key, a.elements[i].differentiate(k)).first;
    return it->second;
  };
  auto apply = [&](const DiffPoly& factor, const DiffPoly& coeff, std::size_t i, std::uint32_t k) {
    res.remainder = factor * res.remainder - coeff * derivative_of(i, k);
    res.multiplier = factor * res.multiplier;
    for (auto& s : res.steps) s.coefficient = factor * s.coefficient;
    res.steps.push_back({coeff, i, k});
  };

  for (;;) {
    if (res.remainder.is_zero()) break;
    auto vars = res.remainder.variables();
    // Partial reduction: highest proper derivative of a leader.
    std::optional<std::pair<DiffVar, std::size_t>> target;
    for (const auto& v : vars) {
      for (std::size_t i = 0; i < ld.size(); ++i) {
        if (v.base != ld[i].lead.base || v.order <= ld[i].lead.order) continue;
        if (!target || r.compare(v, target->first) > 0) target = {v, i};
      }
    }
    if (target) {
      auto [v, i] = *target;
      std::uint32_t e = res.remainder.degree(v);
      DiffPoly coeff = res.remainder.coefficient(v, e) * DiffPoly::variable(v, e - 1);
      apply(ld[i].sep, coeff, i, v.order - ld[i].lead.order);
      continue;
    }
    // Algebraic reduction: highest leader with excess degree.
    std::optional<std::pair<DiffVar, std::size_t>> alg;
    for (std::size_t i = 0; i < ld.size(); ++i) {
      std::uint32_t e = res.remainder.degree(ld[i].lead);
      if (e < ld[i].rank.degree) continue;
      if (!alg || r.compare(ld[i].lead, alg->first) > 0) alg = {ld[i].lead, i};
    }
    if (!alg) break;
    auto [v, i] = *alg;
    std::uint32_t e = res.remainder.degree(v);
    DiffPoly coeff = res.remainder.coefficient(v, e) * DiffPoly::variable(v, e - ld[i].rank.degree);
    apply(ld[i].init, coeff, i, 0);
  }
  return res;
}

DiffPoly certificate_combination(const RittResult& res, const AutoreducedSet& a) {
  DiffPoly sum;
  for (const auto& s : res.steps) sum += s.coefficient * a.elements.at(s.element).differentiate(s.derivative);
  return sum;
}

DiffPoly normalize_monic(const DiffPoly& f, const Ranking& r) {
  if (f.is_zero()) throw ZeroPolynomialError("normalize_monic of the zero polynomial");
  auto ms = sorted_monomials(f, r);
  const RatFun& c = f.terms().at(ms.front());
  return f.scale(c.inverse());
}

namespace {

bool negative_coeff(const RatFun& c) {
  return !c.num().is_zero() && sgn(c.num().lc()) < 0;
}

std::string monomial_string(const DiffMonomial& m, const DiffRing& ring) {
  std::string s;
  for (const auto& [v, e] : m) {
    if (!s.empty()) s += "*";
    s += ring.var_name(v);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace

std::string to_string(const DiffPoly& f, const DiffRing& ring, const Ranking& r) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& m : sorted_monomials(f, r)) {
    RatFun c = f.terms().at(m);
    bool neg = negative_coeff(c);
    if (neg) c = -c;
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    first = false;
    std::string mono = monomial_string(m, ring);
    if (mono.empty()) os << factor_string(c);
    else if (c == RatFun(1)) os << mono;
    else os << factor_string(c) << "*" << mono;
  }
  return os.str();
}

}  // namespace ioident
