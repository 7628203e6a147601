#pragma once

// Sparse multivariate polynomials over an exact coefficient field.
//
// A Poly<K> lives in a PolyRing: an ordered list of named indeterminates plus
// a term order.  Terms are kept sorted in decreasing order under that term
// order, so the leading term is always terms().front().  A polynomial without
// a ring is a bare constant; it adopts the ring of the other operand in mixed
// arithmetic.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ioident/errors.hpp"

namespace ioident {

using Rat = mpq_class;
using Exponents = std::vector<std::uint32_t>;

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }
inline bool is_one(const Rat& r) { return r == 1; }

namespace detail {
template <class K>
bool coeff_zero(const K& c) {
  return is_zero(c);
}
}  // namespace detail

enum class OrderKind { Lex, GrLex, GRevLex };

struct OrderBlock {
  std::size_t size;
  OrderKind kind;
  bool operator==(const OrderBlock&) const = default;
};

/// Term order made of consecutive variable blocks compared left to right.
/// Index 0 is the greatest variable.
class TermOrder {
public:
  TermOrder() = default;
  explicit TermOrder(std::vector<OrderBlock> blocks) : blocks_(std::move(blocks)) {}

  static TermOrder lex(std::size_t n) { return TermOrder({{n, OrderKind::Lex}}); }
  static TermOrder grlex(std::size_t n) { return TermOrder({{n, OrderKind::GrLex}}); }
  static TermOrder grevlex(std::size_t n) { return TermOrder({{n, OrderKind::GRevLex}}); }

  const std::vector<OrderBlock>& blocks() const { return blocks_; }
  std::size_t arity() const {
    std::size_t n = 0;
    for (const auto& b : blocks_) n += b.size;
    return n;
  }

  /// Returns -1, 0 or 1.
  int compare(const Exponents& a, const Exponents& b) const {
    std::size_t off = 0;
    for (const auto& blk : blocks_) {
      if (int c = compare_block(blk.kind, a, b, off, blk.size); c != 0) return c;
      off += blk.size;
    }
    return 0;
  }

  bool operator==(const TermOrder&) const = default;

private:
  static int compare_block(OrderKind kind, const Exponents& a, const Exponents& b,
                           std::size_t off, std::size_t len) {
    if (kind != OrderKind::Lex) {
      std::uint64_t da = 0, db = 0;
      for (std::size_t i = off; i < off + len; ++i) {
        da += a[i];
        db += b[i];
      }
      if (da != db) return da > db ? 1 : -1;
    }
    if (kind == OrderKind::GRevLex) {
      for (std::size_t i = off + len; i-- > off;) {
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
      }
      return 0;
    }
    for (std::size_t i = off; i < off + len; ++i) {
      if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    return 0;
  }

  std::vector<OrderBlock> blocks_;
};

class PolyRing {
public:
  PolyRing(std::vector<std::string> names, TermOrder order)
      : names_(std::move(names)), order_(std::move(order)) {
    if (order_.blocks().empty()) order_ = TermOrder::grlex(names_.size());
    if (order_.arity() != names_.size()) throw ArityError("term order arity does not match variable count");
  }

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  const TermOrder& order() const { return order_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  bool operator==(const PolyRing& o) const { return names_ == o.names_ && order_ == o.order_; }

private:
  std::vector<std::string> names_;
  TermOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline RingPtr make_ring(std::vector<std::string> names, TermOrder order = {}) {
  return std::make_shared<const PolyRing>(std::move(names), std::move(order));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Exponents exp_add(const Exponents& a, const Exponents& b) {
  Exponents r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline Exponents exp_sub(const Exponents& a, const Exponents& b) {
  Exponents r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

inline Exponents exp_lcm(const Exponents& a, const Exponents& b) {
  Exponents r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline std::uint64_t exp_degree(const Exponents& a) {
  std::uint64_t d = 0;
  for (auto e : a) d += e;
  return d;
}

template <class K>
struct Term {
  Exponents exp;
  K coeff;
};

template <class K>
class Poly {
public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(RingPtr ring, const K& c) {
    Poly p(std::move(ring));
    if (!detail::coeff_zero(c)) p.terms_.push_back({Exponents(p.arity(), 0), c});
    return p;
  }
  static Poly constant(const K& c) { return constant(nullptr, c); }

  static Poly variable(RingPtr ring, std::size_t index, std::uint32_t power = 1) {
    Exponents e(ring->size(), 0);
    e.at(index) = power;
    return monomial(std::move(ring), std::move(e), K(1));
  }

  static Poly monomial(RingPtr ring, Exponents exp, const K& c) {
    Poly p(std::move(ring));
    if (exp.size() != p.arity()) throw ArityError("exponent vector arity mismatch");
    if (!detail::coeff_zero(c)) p.terms_.push_back({std::move(exp), c});
    return p;
  }

  /// Builds a canonical polynomial from unsorted, possibly repeated terms.
  static Poly from_terms(RingPtr ring, std::vector<Term<K>> terms) {
    Poly p(std::move(ring));
    for (auto& t : terms)
      if (t.exp.size() != p.arity()) throw ArityError("exponent vector arity mismatch");
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t arity() const { return ring_ ? ring_->size() : 0; }
  const std::vector<Term<K>>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && exp_degree(terms_[0].exp) == 0);
  }

  const Term<K>& lead() const {
    if (terms_.empty()) throw ZeroPolynomialError("leading term of zero polynomial");
    return terms_.front();
  }
  const K& lc() const { return lead().coeff; }
  const Exponents& lm() const { return lead().exp; }

  K constant_coeff() const {
    if (!terms_.empty() && exp_degree(terms_.back().exp) == 0) return terms_.back().coeff;
    return K(0);
  }

  /// Same polynomial viewed in another ring with identical arity (term order may differ).
  Poly with_ring(RingPtr ring) const {
    if (ring_ && ring->size() != ring_->size()) throw ArityError("with_ring: arity mismatch");
    std::vector<Term<K>> ts = terms_;
    if (!ring_)
      for (auto& t : ts) t.exp.assign(ring->size(), 0);
    return from_terms(std::move(ring), std::move(ts));
  }

  std::uint32_t degree(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exp[var]);
    return d;
  }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, exp_degree(t.exp));
    return d;
  }

  bool involves(std::size_t var) const {
    for (const auto& t : terms_)
      if (t.exp[var] != 0) return true;
    return false;
  }

  /// Coefficients of powers of `var`, each with `var` removed.
  std::map<std::uint32_t, Poly> coefficients_in(std::size_t var) const {
    std::map<std::uint32_t, std::vector<Term<K>>> parts;
    for (const auto& t : terms_) {
      Term<K> c = t;
      c.exp[var] = 0;
      parts[t.exp[var]].push_back(std::move(c));
    }
    std::map<std::uint32_t, Poly> out;
    for (auto& [d, ts] : parts) out.emplace(d, from_terms(ring_, std::move(ts)));
    return out;
  }

  Poly coefficient_of(std::size_t var, std::uint32_t power) const {
    std::vector<Term<K>> ts;
    for (const auto& t : terms_)
      if (t.exp[var] == power) {
        ts.push_back(t);
        ts.back().exp[var] = 0;
      }
    return from_terms(ring_, std::move(ts));
  }

  Poly derivative(std::size_t var) const {
    std::vector<Term<K>> ts;
    for (const auto& t : terms_) {
      if (t.exp[var] == 0) continue;
      Term<K> d = t;
      d.coeff = t.coeff * K(static_cast<long>(t.exp[var]));
      d.exp[var] -= 1;
      ts.push_back(std::move(d));
    }
    return from_terms(ring_, std::move(ts));
  }

  Poly operator-() const {
    Poly r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  Poly operator+(const Poly& o) const { return merge(o, false); }
  Poly operator-(const Poly& o) const { return merge(o, true); }

  Poly operator*(const Poly& o) const {
    RingPtr ring = common_ring(o);
    if (is_zero() || o.is_zero()) return Poly(ring);
    Poly a = adopt(ring), b = o.adopt(ring);
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].exp, b.terms_[0].coeff);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].exp, a.terms_[0].coeff);
    std::vector<Term<K>> ts;
    ts.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) ts.push_back({exp_add(x.exp, y.exp), x.coeff * y.coeff});
    return from_terms(ring, std::move(ts));
  }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scale(const K& c) const {
    if (detail::coeff_zero(c)) return Poly(ring_);
    Poly r(*this);
    for (auto& t : r.terms_) t.coeff = t.coeff * c;
    return r;
  }

  /// Multiplication by a single term; term order is preserved so no resort is needed.
  Poly mul_term(const Exponents& e, const K& c) const {
    if (detail::coeff_zero(c)) return Poly(ring_);
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({exp_add(t.exp, e), t.coeff * c});
    return r;
  }

  Poly pow(unsigned k) const {
    Poly result = constant(ring_, K(1));
    Poly base = *this;
    while (k) {
      if (k & 1u) result = result * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return result;
  }

  bool operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    if (!terms_.empty() && ring_ && o.ring_ && !same_ring(ring_, o.ring_)) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (!(terms_[i].coeff == o.terms_[i].coeff)) return false;
      if (ring_ && o.ring_) {
        if (terms_[i].exp != o.terms_[i].exp) return false;
      } else if (exp_degree(terms_[i].exp) != 0 || exp_degree(o.terms_[i].exp) != 0) {
        return false;
      }
    }
    return true;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Lifts a ring-less constant into `ring`; no-op otherwise.
  Poly adopt(const RingPtr& ring) const {
    if (ring_ || !ring) return *this;
    Poly r(ring);
    for (const auto& t : terms_) r.terms_.push_back({Exponents(ring->size(), 0), t.coeff});
    return r;
  }

private:
  RingPtr common_ring(const Poly& o) const {
    if (!ring_) return o.ring_;
    if (!o.ring_) return ring_;
    if (!same_ring(ring_, o.ring_)) throw ArityError("polynomials over different variable sets");
    return ring_;
  }

  Poly merge(const Poly& o, bool subtract) const {
    RingPtr ring = common_ring(o);
    Poly a = adopt(ring), b = o.adopt(ring);
    Poly r(ring);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    const TermOrder* ord = ring ? &ring->order() : nullptr;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == a.terms_.size()) c = -1;
      else if (j == b.terms_.size()) c = 1;
      else c = ord ? ord->compare(a.terms_[i].exp, b.terms_[j].exp) : 0;
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(b.terms_[j++]);
        if (subtract) r.terms_.back().coeff = -r.terms_.back().coeff;
      } else {
        K s = subtract ? K(a.terms_[i].coeff - b.terms_[j].coeff) : K(a.terms_[i].coeff + b.terms_[j].coeff);
        if (!detail::coeff_zero(s)) r.terms_.push_back({a.terms_[i].exp, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void canonicalize() {
    if (terms_.empty()) return;
    if (ring_) {
      const TermOrder& ord = ring_->order();
      std::sort(terms_.begin(), terms_.end(),
                [&](const Term<K>& x, const Term<K>& y) { return ord.compare(x.exp, y.exp) > 0; });
    }
    std::vector<Term<K>> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().exp == t.exp) {
        out.back().coeff = out.back().coeff + t.coeff;
      } else {
        if (!out.empty() && detail::coeff_zero(out.back().coeff)) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && detail::coeff_zero(out.back().coeff)) out.pop_back();
    terms_ = std::move(out);
  }

  RingPtr ring_;
  std::vector<Term<K>> terms_;
};

using MPoly = Poly<Rat>;

/// Normal form of `f` modulo `basis` by multivariate division (full reduction).
template <class K>
Poly<K> reduce_mod_basis(const Poly<K>& f, const std::vector<Poly<K>>& basis) {
  Poly<K> p = f;
  Poly<K> r(f.ring());
  const RingPtr& ring = f.ring();
  std::vector<Term<K>> rem;
  while (!p.is_zero()) {
    const Term<K>& lt = p.lead();
    bool divided = false;
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      if (divides(g.lm(), lt.exp)) {
        K c = lt.coeff / g.lc();
        p = p - g.mul_term(exp_sub(lt.exp, g.lm()), c);
        divided = true;
        break;
      }
    }
    if (!divided) {
      rem.push_back(lt);
      p = p - Poly<K>::monomial(ring, lt.exp, lt.coeff);
    }
  }
  return Poly<K>::from_terms(ring, std::move(rem));
}

/// Exact quotient a / b; throws DivisionError when b does not divide a.
template <class K>
Poly<K> exact_div(const Poly<K>& a, const Poly<K>& b) {
  if (b.is_zero()) throw DivisionError("division by zero polynomial");
  RingPtr ring = a.ring() ? a.ring() : b.ring();
  if (a.ring() && b.ring() && !same_ring(a.ring(), b.ring()))
    throw ArityError("polynomials over different variable sets");
  Poly<K> r = a.adopt(ring);
  Poly<K> d = b.adopt(ring);
  std::vector<Term<K>> q;
  while (!r.is_zero()) {
    if (!divides(d.lm(), r.lm())) throw DivisionError("exact division failed: divisor does not divide");
    Exponents e = exp_sub(r.lm(), d.lm());
    K c = r.lc() / d.lc();
    r = r - d.mul_term(e, c);
    q.push_back({std::move(e), std::move(c)});
  }
  return Poly<K>::from_terms(ring, std::move(q));
}

/// Divides by the leading coefficient.
template <class K>
Poly<K> make_monic(const Poly<K>& p) {
  if (p.is_zero()) return p;
  return p.scale(K(1) / p.lc());
}

// ---- MPoly utilities (implemented in poly.cpp) ----

/// Greatest common divisor normalized to leading coefficient 1; gcd(0, 0) = 0.
MPoly gcd(const MPoly& a, const MPoly& b);
MPoly lcm(const MPoly& a, const MPoly& b);

/// Pseudo-remainder of a by b with respect to variable `var`.
MPoly prem(const MPoly& a, const MPoly& b, std::size_t var);

/// Evaluates at a full rational point (one value per ring variable).
Rat evaluate(const MPoly& p, const std::vector<Rat>& point);

/// Maps p into `target`, sending variable i of p's ring to variable map[i] of target.
template <class K>
Poly<K> remap(const Poly<K>& p, const RingPtr& target, const std::vector<std::size_t>& map) {
  std::vector<Term<K>> ts;
  ts.reserve(p.size());
  for (const auto& t : p.terms()) {
    Exponents e(target->size(), 0);
    for (std::size_t i = 0; i < t.exp.size(); ++i)
      if (t.exp[i]) e.at(map.at(i)) += t.exp[i];
    ts.push_back({std::move(e), t.coeff});
  }
  return Poly<K>::from_terms(target, std::move(ts));
}

/// Maps p into `target` by variable name; every variable used by p must exist there.
template <class K>
Poly<K> remap_by_name(const Poly<K>& p, const RingPtr& target) {
  if (!p.ring()) return p.adopt(target);
  std::vector<std::size_t> map(p.ring()->size(), 0);
  for (std::size_t i = 0; i < map.size(); ++i) {
    auto idx = target->index_of(p.ring()->names()[i]);
    if (!idx) {
      if (p.involves(i)) throw ArityError("variable '" + p.ring()->names()[i] + "' missing in target ring");
      continue;
    }
    map[i] = *idx;
  }
  return remap(p, target, map);
}

std::string rat_to_string(const Rat& r);

/// Renders a monomial such as "a^2*b" (empty string for 1).
std::string monomial_to_string(const Exponents& e, const std::vector<std::string>& names);

std::string to_string(const MPoly& p);

}  // namespace ioident
