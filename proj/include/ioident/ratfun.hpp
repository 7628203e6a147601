#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ioident/poly.hpp"

namespace ioident {

/// Element of Q(vars): a reduced fraction with monic denominator.
///
/// Canonical form: gcd(num, den) = 1, den has leading coefficient 1 under its
/// ring's term order, zero is 0/1.  Equality is therefore structural.
class RatFun {
public:
  RatFun() : den_(MPoly::constant(Rat(1))) {}
  RatFun(long c) : RatFun(Rat(c)) {}  // NOLINT(google-explicit-constructor)
  RatFun(const Rat& c) : num_(MPoly::constant(c)), den_(MPoly::constant(Rat(1))) {}  // NOLINT
  explicit RatFun(MPoly p) : num_(std::move(p)), den_(MPoly::constant(num_.ring(), Rat(1))) {}

  /// Canonical num/den; throws DivisionError when den is zero.
  static RatFun fraction(const MPoly& num, const MPoly& den);

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  const RingPtr& ring() const { return num_.ring() ? num_.ring() : den_.ring(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  /// Value when constant.
  std::optional<Rat> constant_value() const;

  RatFun operator-() const;
  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator*(const RatFun& o) const;
  RatFun operator/(const RatFun& o) const;
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

  RatFun inverse() const;
  RatFun pow(unsigned k) const;
  RatFun derivative(std::size_t var) const;

  /// Throws DivisionError when the denominator vanishes at the point.
  Rat evaluate(const std::vector<Rat>& point) const;

  bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  RatFun adopt(const RingPtr& ring) const;

private:
  MPoly num_;
  MPoly den_;
};

inline bool is_zero(const RatFun& r) { return r.is_zero(); }

/// Total order used to sort polynomials and fractions deterministically.
int compare(const MPoly& a, const MPoly& b);
int compare(const RatFun& a, const RatFun& b);

/// "num" or "(num)/(den)"; a multi-term numerator over a denominator is parenthesized.
std::string to_string(const RatFun& r);

/// Parenthesizes r when it is not a single signed product, for use as a factor.
std::string factor_string(const RatFun& r);

}  // namespace ioident
