#include "ioident/ratfun.hpp"

namespace ioident {

RatFun RatFun::fraction(const MPoly& num, const MPoly& den) {
  if (den.is_zero()) throw DivisionError("rational function with zero denominator");
  RatFun r;
  if (num.is_zero()) {
    RingPtr ring = num.ring() ? num.ring() : den.ring();
    r.num_ = MPoly(ring);
    r.den_ = MPoly::constant(ring, Rat(1));
    return r;
  }
  MPoly n = num, d = den;
  if (!d.is_constant()) {
    MPoly g = gcd(n, d);
    if (!g.is_constant()) {
      n = exact_div(n, g);
      d = exact_div(d, g);
    }
  }
  Rat c = d.lc();
  r.num_ = n.scale(Rat(1) / c);
  r.den_ = d.scale(Rat(1) / c);
  return r;
}

std::optional<Rat> RatFun::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return num_.constant_coeff() / den_.constant_coeff();
}

RatFun RatFun::adopt(const RingPtr& ring) const {
  RatFun r(*this);
  r.num_ = num_.adopt(ring);
  r.den_ = den_.adopt(ring);
  return r;
}

RatFun RatFun::operator-() const {
  RatFun r(*this);
  r.num_ = -num_;
  return r;
}

RatFun RatFun::operator+(const RatFun& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (is_polynomial() && o.is_polynomial()) {
    RatFun r;
    r.num_ = num_ + o.num_;
    r.den_ = MPoly::constant(r.num_.ring() ? r.num_.ring() : ring(), Rat(1));
    return r;
  }
  if (den_ == o.den_) return fraction(num_ + o.num_, den_);
  return fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const { return *this + (-o); }

RatFun RatFun::operator*(const RatFun& o) const {
  if (is_zero() || o.is_zero()) {
    RatFun z;
    RingPtr rg = ring() ? ring() : o.ring();
    return z.adopt(rg);
  }
  if (is_polynomial() && o.is_polynomial()) {
    RatFun r;
    r.num_ = num_ * o.num_;
    r.den_ = (den_ * o.den_);
    return r;
  }
  MPoly g1 = o.den_.is_constant() ? MPoly::constant(Rat(1)) : gcd(num_, o.den_);
  MPoly g2 = den_.is_constant() ? MPoly::constant(Rat(1)) : gcd(o.num_, den_);
  RatFun r;
  r.num_ = exact_div(num_, g1) * exact_div(o.num_, g2);
  r.den_ = exact_div(den_, g2) * exact_div(o.den_, g1);
  Rat c = r.den_.lc();
  if (c != 1) {
    r.num_ = r.num_.scale(Rat(1) / c);
    r.den_ = r.den_.scale(Rat(1) / c);
  }
  return r;
}

RatFun RatFun::inverse() const {
  if (is_zero()) throw DivisionError("inverse of zero rational function");
  RatFun r;
  Rat c = num_.lc();
  r.num_ = den_.scale(Rat(1) / c);
  r.den_ = num_.scale(Rat(1) / c);
  return r;
}

RatFun RatFun::operator/(const RatFun& o) const { return *this * o.inverse(); }

RatFun RatFun::pow(unsigned k) const {
  RatFun r;
  r.num_ = num_.pow(k);
  r.den_ = den_.pow(k);
  return r;
}

RatFun RatFun::derivative(std::size_t var) const {
  if (is_polynomial()) return RatFun(num_.derivative(var).scale(Rat(1) / den_.constant_coeff()));
  return fraction(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

Rat RatFun::evaluate(const std::vector<Rat>& point) const {
  Rat d = ioident::evaluate(den_, point);
  if (sgn(d) == 0) throw DivisionError("denominator vanishes at evaluation point");
  return ioident::evaluate(num_, point) / d;
}

int compare(const MPoly& a, const MPoly& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  RingPtr ring = a.ring() ? a.ring() : b.ring();
  for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
    if (ring && a.ring() && b.ring()) {
      if (int c = ring->order().compare(ta[i].exp, tb[i].exp); c != 0) return c;
    } else {
      auto da = exp_degree(ta[i].exp), db = exp_degree(tb[i].exp);
      if (da != db) return da < db ? -1 : 1;
    }
    if (int c = cmp(ta[i].coeff, tb[i].coeff); c != 0) return c < 0 ? -1 : 1;
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
  return 0;
}

int compare(const RatFun& a, const RatFun& b) {
  if (int c = compare(a.num(), b.num()); c != 0) return c;
  return compare(a.den(), b.den());
}

std::string to_string(const RatFun& r) {
  if (r.is_polynomial()) {
    Rat d = r.den().constant_coeff();
    return to_string(d == 1 ? r.num() : r.num().scale(Rat(1) / d));
  }
  std::string n = to_string(r.num());
  std::string d = to_string(r.den());
  if (r.num().size() > 1 || n.find('/') != std::string::npos) n = "(" + n + ")";
  if (r.den().size() > 1 || d.find_first_of("*/") != std::string::npos) d = "(" + d + ")";
  return n + "/" + d;
}

std::string factor_string(const RatFun& r) {
  std::string s = to_string(r);
  bool single = r.is_polynomial() && r.num().size() == 1;
  return single ? s : "(" + s + ")";
}

}  // namespace ioident
