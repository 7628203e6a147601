#include "ioident/poly.hpp"

namespace ioident {
namespace {

MPoly one_in(const RingPtr& ring) { return MPoly::constant(ring, Rat(1)); }

std::optional<std::size_t> first_common_var(const MPoly& a, const MPoly& b) {
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (a.involves(i) || b.involves(i)) return i;
  return std::nullopt;
}

MPoly gcd_rec(const MPoly& a, const MPoly& b);

MPoly content_in(const MPoly& p, std::size_t var) {
  MPoly g;
  bool first = true;
  for (const auto& [deg, c] : p.coefficients_in(var)) {
    if (c.is_constant()) return one_in(p.ring());
    g = first ? c : gcd_rec(g, c);
    first = false;
    if (g.is_constant()) return one_in(p.ring());
  }
  return make_monic(g);
}

MPoly primitive_in(const MPoly& p, std::size_t var) {
  return make_monic(exact_div(p, content_in(p, var)));
}

// Both arguments nonzero.  Result is determined up to a rational unit.
MPoly gcd_rec(const MPoly& a, const MPoly& b) {
  if (a.is_constant() || b.is_constant()) return one_in(a.ring() ? a.ring() : b.ring());
  std::size_t v = *first_common_var(a, b);
  if (!a.involves(v)) return gcd_rec(a, content_in(b, v));
  if (!b.involves(v)) return gcd_rec(content_in(a, v), b);

  MPoly ca = content_in(a, v);
  MPoly cb = content_in(b, v);
  MPoly pa = make_monic(exact_div(a, ca));
  MPoly pb = make_monic(exact_div(b, cb));
  MPoly c = gcd_rec(ca, cb);

  if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    MPoly r = prem(pa, pb, v);
    pa = pb;
    if (r.is_zero()) break;
    if (!r.involves(v)) return c;
    pb = primitive_in(r, v);
  }
  return c * pa;
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
  if (a.ring() && b.ring() && !same_ring(a.ring(), b.ring()))
    throw ArityError("gcd: polynomials over different variable sets");
  RingPtr ring = a.ring() ? a.ring() : b.ring();
  if (a.is_zero()) return make_monic(b.adopt(ring));
  if (b.is_zero()) return make_monic(a.adopt(ring));
  return make_monic(gcd_rec(a.adopt(ring), b.adopt(ring)));
}

MPoly lcm(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return MPoly(a.ring() ? a.ring() : b.ring());
  return make_monic(exact_div(a * b, gcd(a, b)));
}

MPoly prem(const MPoly& a, const MPoly& b, std::size_t var) {
  std::uint32_t db = b.degree(var);
  MPoly lcb = b.coefficient_of(var, db);
  MPoly r = a;
  while (!r.is_zero() && r.degree(var) >= db) {
    std::uint32_t dr = r.degree(var);
    MPoly lcr = r.coefficient_of(var, dr);
    MPoly shift = dr > db ? MPoly::variable(r.ring(), var, dr - db) : one_in(r.ring());
    r = r * lcb - lcr * shift * b;
  }
  return r;
}

Rat evaluate(const MPoly& p, const std::vector<Rat>& point) {
  if (p.arity() != point.size() && p.ring()) throw ArityError("evaluate: point arity mismatch");
  Rat sum = 0;
  for (const auto& t : p.terms()) {
    Rat v = t.coeff;
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (t.exp[i] == 0) continue;
      Rat base = point[i];
      mpq_class pw;
      mpz_pow_ui(pw.get_num_mpz_t(), base.get_num_mpz_t(), t.exp[i]);
      mpz_pow_ui(pw.get_den_mpz_t(), base.get_den_mpz_t(), t.exp[i]);
      pw.canonicalize();
      v *= pw;
    }
    sum += v;
  }
  return sum;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

std::string monomial_to_string(const Exponents& e, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

std::string to_string(const MPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rat c = t.coeff;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::string mono = p.ring() ? monomial_to_string(t.exp, p.ring()->names()) : std::string();
    if (mono.empty()) {
      os << rat_to_string(c);
    } else if (c == 1) {
      os << mono;
    } else {
      os << rat_to_string(c) << "*" << mono;
    }
  }
  return os.str();
}

}  // namespace ioident
