#pragma once

// Buchberger's algorithm over an exact field K.  Pair selection uses the
// normal strategy (smallest lcm under the ring order) with ties broken by
// generation index, so the run is fully deterministic.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "ioident/poly.hpp"

namespace ioident {

template <class K>
Poly<K> spoly(const Poly<K>& f, const Poly<K>& g) {
  Exponents l = exp_lcm(f.lm(), g.lm());
  return f.mul_term(exp_sub(l, f.lm()), K(1) / f.lc()) - g.mul_term(exp_sub(l, g.lm()), K(1) / g.lc());
}

namespace detail {

struct Pair {
  std::size_t i;
  std::size_t j;
  Exponents lcm;
};

inline bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] && b[k]) return false;
  return true;
}

}  // namespace detail

/// Reduced Groebner basis: monic, inter-reduced, sorted by increasing leading monomial.
template <class K>
std::vector<Poly<K>> groebner(const std::vector<Poly<K>>& generators) {
  using detail::Pair;
  RingPtr ring;
  for (const auto& g : generators)
    if (g.ring()) ring = g.ring();

  std::vector<Poly<K>> polys;
  std::vector<std::size_t> basis;  // indices into polys
  std::vector<Pair> pairs;

  auto update = [&](std::size_t h) {
    const Exponents& lh = polys[h].lm();
    std::vector<Pair> fresh;
    for (std::size_t g : basis) {
      fresh.push_back({g, h, exp_lcm(lh, polys[g].lm())});
    }
    // Chain criterion among the new pairs.
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      const auto& p = fresh[a];
      if (detail::coprime(polys[p.i].lm(), lh)) {
        kept.push_back(p);
        continue;
      }
      bool redundant = false;
      for (std::size_t b = 0; b < fresh.size() && !redundant; ++b) {
        if (a == b) continue;
        const auto& q = fresh[b];
        if (!divides(q.lcm, p.lcm)) continue;
        if (q.lcm != p.lcm) redundant = true;
        else if (b < a) redundant = true;  // equal lcms: keep the first one
      }
      if (!redundant) kept.push_back(p);
    }
    // Product criterion.
    std::vector<Pair> accepted;
    for (auto& p : kept)
      if (!detail::coprime(polys[p.i].lm(), lh)) accepted.push_back(std::move(p));
    // Prune old pairs made redundant by h.
    std::vector<Pair> old;
    for (auto& p : pairs) {
      bool drop = divides(lh, p.lcm) && exp_lcm(polys[p.i].lm(), lh) != p.lcm &&
                  exp_lcm(polys[p.j].lm(), lh) != p.lcm;
      if (!drop) old.push_back(std::move(p));
    }
    pairs = std::move(old);
    for (auto& p : accepted) pairs.push_back(std::move(p));
    std::vector<std::size_t> nb;
    for (std::size_t g : basis)
      if (!divides(lh, polys[g].lm())) nb.push_back(g);
    nb.push_back(h);
    basis = std::move(nb);
  };

  auto current_basis = [&]() {
    std::vector<Poly<K>> b;
    b.reserve(basis.size());
    for (std::size_t k : basis) b.push_back(polys[k]);
    return b;
  };

  for (const auto& g0 : generators) {
    Poly<K> g = g0.adopt(ring);
    if (g.is_zero()) continue;
    Poly<K> r = basis.empty() ? g : reduce_mod_basis(g, current_basis());
    if (r.is_zero()) continue;
    polys.push_back(make_monic(r));
    update(polys.size() - 1);
  }

  const TermOrder* ord = ring ? &ring->order() : nullptr;
  while (!pairs.empty()) {
    auto best = pairs.begin();
    for (auto it = pairs.begin() + 1; it != pairs.end(); ++it) {
      int c = ord ? ord->compare(it->lcm, best->lcm) : 0;
      if (c < 0 || (c == 0 && std::tie(it->j, it->i) < std::tie(best->j, best->i))) best = it;
    }
    Pair p = *best;
    pairs.erase(best);
    Poly<K> s = spoly(polys[p.i], polys[p.j]);
    Poly<K> r = reduce_mod_basis(s, current_basis());
    if (r.is_zero()) continue;
    polys.push_back(make_monic(r));
    update(polys.size() - 1);
  }

  // Inter-reduce the minimal basis.
  std::vector<Poly<K>> gb = current_basis();
  std::sort(gb.begin(), gb.end(), [&](const Poly<K>& a, const Poly<K>& b) {
    return ord ? ord->compare(a.lm(), b.lm()) < 0 : false;
  });
  std::vector<Poly<K>> out;
  for (std::size_t k = 0; k < gb.size(); ++k) {
    std::vector<Poly<K>> others;
    for (std::size_t m = 0; m < gb.size(); ++m)
      if (m != k) others.push_back(gb[m]);
    Poly<K> tail = gb[k] - Poly<K>::monomial(ring, gb[k].lm(), gb[k].lc());
    Poly<K> red = others.empty() ? tail : reduce_mod_basis(tail, others);
    out.push_back(make_monic(Poly<K>::monomial(ring, gb[k].lm(), gb[k].lc()) + red));
  }
  for (std::size_t k = 0; k < out.size(); ++k) gb[k] = out[k];
  return gb;
}

/// True iff every S-polynomial of `basis` reduces to zero modulo `basis`.
template <class K>
bool is_groebner(const std::vector<Poly<K>>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!reduce_mod_basis(spoly(basis[i], basis[j]), basis).is_zero()) return false;
  return true;
}

/// Generators of (G) : s^infinity, via a tag variable t with t*s - 1 and
/// elimination of t.  The result is a reduced Groebner basis in G's ring.
template <class K>
std::vector<Poly<K>> saturate(const std::vector<Poly<K>>& generators, const Poly<K>& s) {
  if (s.is_zero()) throw DivisionError("saturation by zero");
  RingPtr ring = s.ring();
  for (const auto& g : generators)
    if (g.ring()) ring = g.ring();
  if (!ring || s.is_constant()) return groebner(generators);

  std::vector<std::string> names;
  std::string tag = "_t";
  while (ring->index_of(tag)) tag += "_";
  names.push_back(tag);
  for (const auto& n : ring->names()) names.push_back(n);
  std::vector<OrderBlock> blocks{{1, OrderKind::Lex}};
  for (const auto& b : ring->order().blocks()) blocks.push_back(b);
  RingPtr tagged = make_ring(names, TermOrder(blocks));

  std::vector<std::size_t> shift(ring->size());
  for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = i + 1;

  std::vector<Poly<K>> gens;
  for (const auto& g : generators) gens.push_back(remap(g.adopt(ring), tagged, shift));
  gens.push_back(Poly<K>::variable(tagged, 0) * remap(s.adopt(ring), tagged, shift) -
                 Poly<K>::constant(tagged, K(1)));

  std::vector<Poly<K>> out;
  std::vector<std::size_t> back(tagged->size(), 0);
  for (std::size_t i = 1; i < back.size(); ++i) back[i] = i - 1;
  for (const auto& g : groebner(gens))
    if (!g.involves(0)) out.push_back(remap(g, ring, back));
  return out;
}

}  // namespace ioident
