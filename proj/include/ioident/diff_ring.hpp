#pragma once

// Differential polynomial ring K{x, y, u} over K = Q(mu).
//
// Parameters are constants of the derivation, so coefficients (RatFun over
// the parameter ring) are never differentiated.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ioident/ratfun.hpp"

namespace ioident {

struct DiffVar {
  std::uint32_t base = 0;
  std::uint32_t order = 0;

  DiffVar derive(std::uint32_t k = 1) const { return {base, order + k}; }
  auto operator<=>(const DiffVar&) const = default;
};

enum class VarKind { State, Output, Input };

/// Names and kinds of the differential indeterminates plus the parameter ring.
class DiffRing {
public:
  DiffRing(std::vector<std::string> names, std::vector<VarKind> kinds, RingPtr params);

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  VarKind kind(std::uint32_t base) const { return kinds_.at(base); }
  const RingPtr& params() const { return params_; }
  std::optional<std::uint32_t> index_of(const std::string& name) const;

  /// y, y', y'', y''', y^(4), ...
  std::string var_name(DiffVar v) const;

private:
  std::vector<std::string> names_;
  std::vector<VarKind> kinds_;
  RingPtr params_;
};

using DiffRingPtr = std::shared_ptr<const DiffRing>;

/// Sorted (variable, exponent) pairs with positive exponents.
using DiffMonomial = std::vector<std::pair<DiffVar, std::uint32_t>>;

DiffMonomial monomial_mul(const DiffMonomial& a, const DiffMonomial& b);

class DiffPoly {
public:
  using TermMap = std::map<DiffMonomial, RatFun>;

  DiffPoly() = default;
  DiffPoly(const RatFun& c);  // NOLINT(google-explicit-constructor)
  static DiffPoly variable(DiffVar v, std::uint32_t power = 1);
  static DiffPoly term(DiffMonomial m, const RatFun& c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  std::size_t size() const { return terms_.size(); }

  std::set<DiffVar> variables() const;
  std::uint32_t degree(DiffVar v) const;
  std::uint64_t total_degree() const;
  /// Highest derivative order appearing (0 for constants).
  std::uint32_t max_order() const;

  /// Coefficient of v^k, as a polynomial without v.
  DiffPoly coefficient(DiffVar v, std::uint32_t k) const;
  DiffPoly partial(DiffVar v) const;
  DiffPoly differentiate() const;
  DiffPoly differentiate(std::uint32_t times) const;

  DiffPoly operator-() const;
  DiffPoly operator+(const DiffPoly& o) const;
  DiffPoly operator-(const DiffPoly& o) const;
  DiffPoly operator*(const DiffPoly& o) const;
  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  DiffPoly scale(const RatFun& c) const;
  DiffPoly mul_monomial(const DiffMonomial& m, const RatFun& c) const;
  DiffPoly pow(unsigned k) const;

  bool operator==(const DiffPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const DiffPoly& o) const { return !(*this == o); }

private:
  void add_term(const DiffMonomial& m, const RatFun& c);
  TermMap terms_;
};

/// Elimination ranking: blocks of base variables, highest block first.
/// Inside a block the ranking is orderly: derivative order first, then the
/// position inside the block (earlier ranks higher).
class Ranking {
public:
  explicit Ranking(std::vector<std::vector<std::uint32_t>> blocks);

  /// States above everything; outputs then inputs in one orderly block.
  static Ranking standard(const DiffRing& ring);
  /// Outputs then inputs only (the IO ranking).
  static Ranking io(const DiffRing& ring);

  const std::vector<std::vector<std::uint32_t>>& blocks() const { return blocks_; }
  bool declares(std::uint32_t base) const;

  /// Returns -1, 0, 1; ArityError for an undeclared variable.
  int compare(DiffVar v, DiffVar w) const;

  bool operator==(const Ranking&) const = default;

private:
  std::pair<std::size_t, std::size_t> position(std::uint32_t base) const;
  std::vector<std::vector<std::uint32_t>> blocks_;
};

struct Rank {
  DiffVar lead;
  std::uint32_t degree = 0;
  bool operator==(const Rank&) const = default;
};

int compare_rank(const Ranking& r, const Rank& a, const Rank& b);

struct LeaderData {
  DiffVar lead;
  DiffPoly init;
  DiffPoly sep;
  Rank rank;
};

DiffVar leader(const DiffPoly& f, const Ranking& r);
Rank rank_of(const DiffPoly& f, const Ranking& r);
/// Throws ConstantPolynomialError when f has no differential variable.
LeaderData leader_data(const DiffPoly& f, const Ranking& r);

/// Lex comparison of differential monomials with variables ordered by the ranking.
int compare_monomials(const Ranking& r, const DiffMonomial& a, const DiffMonomial& b);
/// Monomials of f in decreasing ranking-lex order.
std::vector<DiffMonomial> sorted_monomials(const DiffPoly& f, const Ranking& r);

/// f reduced w.r.t. g: no proper derivative of lead(g) in f, and deg_lead(g) f < deg_lead(g) g.
bool is_reduced(const DiffPoly& f, const DiffPoly& g, const Ranking& r);

struct AutoreducedSet {
  std::vector<DiffPoly> elements;  // increasing rank
  Ranking ranking;
};

/// Sorts by rank; does not check autoreducedness.
AutoreducedSet make_autoreduced_set(std::vector<DiffPoly> elems, const Ranking& r);

bool is_autoreduced(const std::vector<DiffPoly>& s, const Ranking& r);

/// -1 when A ranks lower than B, 0 for equal rank sequences, 1 otherwise.
int compare_autoreduced(const AutoreducedSet& a, const AutoreducedSet& b);

struct ReductionStep {
  DiffPoly coefficient;
  std::size_t element = 0;
  std::uint32_t derivative = 0;
};

/// Result of Ritt reduction.  The identity
///   multiplier * f - remainder = sum coefficient_k * derive^{derivative_k}(A[element_k])
/// holds exactly; multiplier is a product of initials and separants of A.
struct RittResult {
  DiffPoly remainder;
  DiffPoly multiplier;
  std::vector<ReductionStep> steps;
};

RittResult ritt_reduce(const DiffPoly& f, const AutoreducedSet& a);

/// Right-hand side of the certificate identity, expanded.
DiffPoly certificate_combination(const RittResult& res, const AutoreducedSet& a);

/// Divides f by the coefficient of its greatest monomial in ranking-lex order.
DiffPoly normalize_monic(const DiffPoly& f, const Ranking& r);

std::string to_string(const DiffPoly& f, const DiffRing& ring, const Ranking& r);

}  // namespace ioident
