#pragma once

// Fields of IO-identifiable functions, membership in them, Wronskian
// identifiability certificates, polynomial first integrals and the model
// extension that turns a function of states and parameters into an output.

#include <cstdint>
#include <optional>
#include <vector>

#include "ioident/elimination.hpp"
#include "ioident/series.hpp"

namespace ioident {

/// Sign-normalized so that the leading numerator coefficient is positive.
RatFun canonical_coefficient(const RatFun& c);

struct FieldDescription {
  std::vector<RatFun> generators;  // canonical, non-constant, none redundant
};

/// Exact test h in Q(gens): with fresh variables Z for the parameters,
/// h(Z) - h(mu) must vanish on the generic fibre of mu -> gens(mu), i.e. lie in
/// (num_i(Z) - g_i(mu) den_i(Z)) : (prod den_i(Z))^inf over Q(mu)[Z].
bool field_membership(const RatFun& h, const std::vector<RatFun>& gens);
inline bool field_membership(const RatFun& h, const FieldDescription& f) { return field_membership(h, f.generators); }

/// Generators of the field spanned by the coefficients of the presentation.
/// Coefficients already in the field of earlier (simpler) ones are dropped.
FieldDescription io_identifiable_field(const CharPresentation& c);
FieldDescription io_identifiable_field(const Model& m);

enum class CertificateStatus { IdentifiableByWronskian, NoCertificate };

struct WronskianWitness {
  std::vector<DiffPoly> subset;
  DiffPoly determinant;
  std::uint64_t sample_seed = 0;
};

struct Certificate {
  RatFun coefficient;  // canonical form
  std::size_t element = 0;
  CertificateStatus status = CertificateStatus::NoCertificate;
  std::optional<WronskianWitness> witness;
};

/// One certificate per distinct non-constant coefficient of each element.
std::vector<Certificate> wronskian_certificates(const CharPresentation& c, const Model& m, std::size_t trials,
                                                std::uint64_t seed, std::size_t series_order = 0);

struct FirstIntegralBasis {
  std::size_t degree = 0;
  std::vector<MPoly> basis;  // over the model ring, primitive, in echelon form
};

/// Polynomials p(x) of degree 1..D with coefficients in Q(mu) such that
/// grad_x p . f = 0 identically; returned with denominators cleared.
FirstIntegralBasis polynomial_first_integrals(const Model& m, std::size_t D);

enum class EqualityStatus { CertifiedUpToDegree, FirstIntegralFound, Inconclusive };

struct EqualityCertificate {
  EqualityStatus status = EqualityStatus::Inconclusive;
  std::size_t degree = 0;
  std::vector<MPoly> first_integrals;
};

EqualityCertificate equality_certificate(const Model& m, std::size_t D);

/// Adds a state tracking h along trajectories, x_new' = (sum f_i dh/dx_i)/Q,
/// and an output y_new = x_new - h.  Throws UnsupportedFunctionError when h
/// involves an input.
Model extend_model_for_function(const Model& m, const RatFun& h);

}  // namespace ioident
