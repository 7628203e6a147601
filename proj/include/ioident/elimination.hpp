#pragma once

// Input-output equations of a model: prolongation of the generators of the
// model's differential ideal, Groebner elimination of the state derivatives,
// then differential autoreduction into a monic characteristic presentation.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ioident/diff_ring.hpp"
#include "ioident/groebner.hpp"
#include "ioident/model.hpp"

namespace ioident {

/// Polynomials over K = Q(mu), used for algebraic elimination.
using KPoly = Poly<RatFun>;

/// Finite algebraic snapshot of the differential ideal: derivatives up to
/// `depth` of every generator, with each derivative symbol a separate variable.
struct ProlongedSystem {
  std::size_t depth = 0;
  RingPtr ring;               // eliminated block first, then the kept block
  std::vector<DiffVar> vars;  // vars[i] is ring variable i
  std::size_t eliminated = 0;  // size of the leading block
  std::vector<KPoly> equations;
  std::vector<KPoly> saturators;
};

/// Variables of kind State form the eliminated block (graded reverse lex);
/// the remaining variables are ordered lexicographically by decreasing rank.
ProlongedSystem prolong(const Model& m, const SigmaGenerators& g, const DiffRing& ring, const Ranking& r,
                        std::size_t depth);

/// Throws ArityError when f uses a derivative missing from the system.
KPoly to_algebraic(const DiffPoly& f, const ProlongedSystem& s);
DiffPoly from_algebraic(const KPoly& p, const ProlongedSystem& s);

/// Generators of the elimination ideal (saturated by the system's saturators).
std::vector<DiffPoly> eliminate(const ProlongedSystem& s);

/// Deterministic total order on differential polynomials: compares the
/// monomials in decreasing ranking-lex order, then the coefficients.
int compare_polys(const DiffPoly& a, const DiffPoly& b, const Ranking& r);

/// Minimal-rank autoreduced subset, ties broken by compare_polys.
std::vector<DiffPoly> basic_set(std::vector<DiffPoly> candidates, const Ranking& r);

/// Derivatives of leaders of `elements` (the leaders included).
bool is_leading_derivative(DiffVar v, const std::vector<DiffPoly>& elements, const Ranking& r);

/// f divided by its content with respect to the given variables (the gcd of its
/// coefficients viewed as a polynomial in them), up to a factor in K.
DiffPoly remove_content(const DiffPoly& f, const std::set<DiffVar>& leading, const DiffRing& ring);

struct CharPresentation {
  std::vector<DiffPoly> elements;  // increasing rank
  Ranking ranking;
};

struct VerificationReport {
  bool autoreduced = false;
  bool initials = false;      // every initial free of leaders and their derivatives
  bool content_free = false;  // no factor over the non-leading variables
  bool monic = false;
  bool series = false;        // every element vanishes on sampled solutions
  bool reduction = false;     // every eliminated generator reduces to zero
  bool passed() const { return autoreduced && initials && content_free && monic && series && reduction; }
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 5;
  std::size_t series_order = 0;  // 0: maximal element order + 4
};

/// `eliminated` may be empty, in which case it is recomputed at the depth given
/// by the largest order appearing in the presentation.
VerificationReport verify_char_presentation(const CharPresentation& c, const Model& m,
                                            const std::vector<DiffPoly>& eliminated = {},
                                            const VerifyOptions& opts = {});

struct EliminationOptions {
  std::optional<std::size_t> max_depth;  // default: number of states
  VerifyOptions verify;
};

struct EliminationResult {
  CharPresentation presentation;
  VerificationReport verification;
  std::size_t depth = 0;
  std::vector<DiffPoly> eliminated;
};

/// Raised when no verified presentation was found up to the maximal depth.
class DepthExhaustedError : public Error {
public:
  DepthExhaustedError(std::size_t depth, std::vector<DiffPoly> eliminated, std::vector<DiffPoly> partial)
      : Error("no verified characteristic presentation up to depth " + std::to_string(depth)),
        depth_(depth), eliminated_(std::move(eliminated)), partial_(std::move(partial)) {}
  std::size_t depth() const { return depth_; }
  const std::vector<DiffPoly>& eliminated() const { return eliminated_; }
  const std::vector<DiffPoly>& partial() const { return partial_; }

private:
  std::size_t depth_;
  std::vector<DiffPoly> eliminated_;
  std::vector<DiffPoly> partial_;
};

/// Monic characteristic presentation of the IO ideal by iterative deepening.
EliminationResult io_equations(const Model& m, const Ranking& r, const EliminationOptions& opts = {});
/// Same, starting from explicit generators (any order, any nonzero scaling).
EliminationResult io_equations(const Model& m, const SigmaGenerators& g, const Ranking& r,
                               const EliminationOptions& opts = {});

}  // namespace ioident
