#include "ioident/series.hpp"

#include <algorithm>
#include <map>

namespace ioident {

Series series_mul(const Series& a, const Series& b, std::size_t len) {
  Series r(len, Rat(0));
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Series series_div(const Series& a, const Series& b, std::size_t len) {
  if (b.empty() || is_zero(b[0])) throw DivisionError("series division by a series vanishing at 0");
  Series r(len, Rat(0));
  for (std::size_t k = 0; k < len; ++k) {
    Rat acc = k < a.size() ? a[k] : Rat(0);
    for (std::size_t j = 1; j <= k && j < b.size(); ++j) acc -= b[j] * r[k - j];
    r[k] = acc / b[0];
  }
  return r;
}

Series series_derivative(const Series& a) {
  if (a.empty()) return {};
  Series r(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) r[k - 1] = a[k] * static_cast<unsigned long>(k);
  return r;
}

bool series_is_zero(const Series& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& c) { return is_zero(c); });
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

Rat random_rational(std::mt19937_64& rng, int bound) {
  auto b = static_cast<std::uint64_t>(bound);
  long num = static_cast<long>(rng() % (2 * b + 1)) - bound;
  long den = static_cast<long>(rng() % b) + 1;
  Rat r(num, den);
  r.canonicalize();
  return r;
}

namespace {

// Evaluates p with each variable k replaced by the series vals[k].
Series eval_poly(const MPoly& p, const std::vector<const Series*>& vals, std::size_t len) {
  Series out(len, Rat(0));
  std::map<std::size_t, std::vector<Series>> powers;  // powers[var][e-1] = vals[var]^e
  auto power = [&](std::size_t var, std::uint32_t e) -> const Series& {
    auto& pw = powers[var];
    if (pw.empty()) {
      Series s(vals[var]->begin(), vals[var]->begin() + static_cast<long>(std::min(len, vals[var]->size())));
      s.resize(len, Rat(0));
      pw.push_back(std::move(s));
    }
    while (pw.size() < e) pw.push_back(series_mul(pw.back(), pw.front(), len));
    return pw[e - 1];
  };
  for (const auto& t : p.terms()) {
    Series term(len, Rat(0));
    term[0] = t.coeff;
    for (std::size_t k = 0; k < t.exp.size(); ++k)
      if (t.exp[k]) term = series_mul(term, power(k, t.exp[k]), len);
    for (std::size_t i = 0; i < len; ++i) out[i] += term[i];
  }
  return out;
}

std::vector<Series> constant_series(const std::vector<Rat>& v) {
  std::vector<Series> out;
  for (const auto& c : v) out.push_back(Series{c});
  return out;
}

std::vector<const Series*> model_values(const Model& m, const std::vector<Series>& mu, const std::vector<Series>& x,
                                        const std::vector<Series>& u) {
  std::vector<const Series*> vals;
  for (const auto& s : mu) vals.push_back(&s);
  for (std::size_t i = 0; i < m.n(); ++i) vals.push_back(&x[i]);
  for (std::size_t i = 0; i < m.kappa(); ++i) vals.push_back(&u[i]);
  return vals;
}

Rat q_at_point(const Model& m, const SamplePoint& p) {
  std::vector<Rat> pt = p.mu;
  pt.insert(pt.end(), p.x0.begin(), p.x0.end());
  for (const auto& s : p.u) pt.push_back(s.empty() ? Rat(0) : s[0]);
  return evaluate(m.Q, pt);
}

}  // namespace

SamplePoint sample_point(const Model& m, std::uint64_t seed, std::size_t K, int bound) {
  for (std::uint64_t attempt = 0; attempt < 10; ++attempt) {
    std::mt19937_64 rng(trial_seed(seed, attempt));
    SamplePoint p;
    p.seed = seed;
    for (std::size_t i = 0; i < m.lambda(); ++i) p.mu.push_back(random_rational(rng, bound));
    for (std::size_t i = 0; i < m.n(); ++i) p.x0.push_back(random_rational(rng, bound));
    for (std::size_t i = 0; i < m.kappa(); ++i) {
      Series s;
      for (std::size_t k = 0; k <= K; ++k) s.push_back(random_rational(rng, bound));
      p.u.push_back(std::move(s));
    }
    if (!is_zero(q_at_point(m, p))) return p;
  }
  throw SamplingError("could not sample a point where the denominator is nonzero");
}

SeriesPoint solve_series(const Model& m, const SamplePoint& p, std::size_t K) {
  if (p.mu.size() != m.lambda() || p.x0.size() != m.n() || p.u.size() != m.kappa())
    throw ArityError("sample point does not match the model");
  if (is_zero(q_at_point(m, p))) throw SingularPointError("denominator vanishes at the sample point");

  SeriesPoint s;
  s.order = K;
  s.mu = p.mu;
  for (const auto& ui : p.u) {
    Series v = ui;
    v.resize(K + 1, Rat(0));
    s.u.push_back(std::move(v));
  }
  auto mu = constant_series(p.mu);
  s.x = constant_series(p.x0);

  for (std::size_t k = 0; k < K; ++k) {
    auto vals = model_values(m, mu, s.x, s.u);
    Series q = eval_poly(m.Q, vals, k + 1);
    for (std::size_t i = 0; i < m.n(); ++i) {
      Series r = series_div(eval_poly(m.f[i], vals, k + 1), q, k + 1);
      s.x[i].push_back(r[k] / static_cast<unsigned long>(k + 1));
    }
  }
  auto vals = model_values(m, mu, s.x, s.u);
  Series q = eval_poly(m.Q, vals, K + 1);
  for (std::size_t j = 0; j < m.m(); ++j) s.y.push_back(series_div(eval_poly(m.g[j], vals, K + 1), q, K + 1));
  return s;
}

Series eval_model_poly(const MPoly& p, const Model& m, const SeriesPoint& s) {
  auto mu = constant_series(s.mu);
  return eval_poly(p.adopt(m.ring), model_values(m, mu, s.x, s.u), s.order + 1);
}

Series eval_on_series(const DiffPoly& f, const SeriesPoint& s) {
  std::uint32_t ord = f.max_order();
  if (s.order < ord + 1) throw TruncationError("series order too small for the derivatives involved");
  std::size_t len = s.order + 1 - ord;
  std::map<DiffVar, Series> cache;
  auto base_series = [&](std::uint32_t b) -> const Series& {
    std::size_t n = s.x.size(), m = s.y.size();
    if (b < n) return s.x[b];
    if (b < n + m) return s.y[b - n];
    if (b < n + m + s.u.size()) return s.u[b - n - m];
    throw ArityError("variable outside the series point");
  };
  auto var_series = [&](DiffVar v) -> const Series& {
    auto it = cache.find(v);
    if (it != cache.end()) return it->second;
    Series d = base_series(v.base);
    for (std::uint32_t k = 0; k < v.order; ++k) d = series_derivative(d);
    d.resize(len);
    return cache.emplace(v, std::move(d)).first->second;
  };
  Series out(len, Rat(0));
  for (const auto& [mono, c] : f.terms()) {
    Series term(len, Rat(0));
    term[0] = c.evaluate(s.mu);
    for (const auto& [v, e] : mono)
      for (std::uint32_t k = 0; k < e; ++k) term = series_mul(term, var_series(v), len);
    for (std::size_t i = 0; i < len; ++i) out[i] += term[i];
  }
  return out;
}

std::vector<Series> residuals(const Model& m, const SeriesPoint& s) {
  std::vector<Series> out;
  Series q = eval_model_poly(m.Q, m, s);
  for (std::size_t i = 0; i < m.n(); ++i) {
    Series lhs = series_mul(q, series_derivative(s.x[i]), s.order);
    Series f = eval_model_poly(m.f[i], m, s);
    for (std::size_t k = 0; k < s.order; ++k) lhs[k] -= f[k];
    out.push_back(std::move(lhs));
  }
  for (std::size_t j = 0; j < m.m(); ++j) {
    Series lhs = series_mul(q, s.y[j], s.order + 1);
    Series g = eval_model_poly(m.g[j], m, s);
    for (std::size_t k = 0; k <= s.order; ++k) lhs[k] -= g[k];
    out.push_back(std::move(lhs));
  }
  return out;
}

MembershipVerdict not_in_ideal(const DiffPoly& f, const Model& m, std::size_t trials, std::size_t K,
                               std::uint64_t seed) {
  if (K == 0) K = f.max_order() + 4;
  MembershipVerdict v;
  std::size_t failures = 0;
  std::uint64_t draw = 0;
  while (v.trials < trials) {
    std::uint64_t s = trial_seed(seed, draw++);
    try {
      SamplePoint p = sample_point(m, s, K);
      Series val = eval_on_series(f, solve_series(m, p, K));
      ++v.trials;
      if (!series_is_zero(val)) {
        v.verdict = Membership::NotInIdeal;
        v.witness_seed = s;
        return v;
      }
    } catch (const DivisionError&) {
      // a coefficient of f is undefined at the sampled parameters
      if (++failures > 10) throw SamplingError("too many singular sample points");
    }
  }
  return v;
}

DiffMatrix wronskian(const std::vector<DiffPoly>& z, std::size_t M) {
  DiffMatrix w(M, std::vector<DiffPoly>(z.size()));
  for (std::size_t j = 0; j < z.size(); ++j) {
    DiffPoly d = z[j];
    for (std::size_t i = 0; i < M; ++i) {
      w[i][j] = d;
      if (i + 1 < M) d = d.differentiate();
    }
  }
  return w;
}

DiffPoly determinant(const DiffMatrix& a) {
  std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw ArityError("determinant of a non-square matrix");
  if (n == 0) return DiffPoly(RatFun(1));
  if (n == 1) return a[0][0];
  DiffPoly det;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    DiffMatrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<DiffPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(std::move(row));
    }
    DiffPoly term = a[0][j] * determinant(minor);
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

}  // namespace ioident
