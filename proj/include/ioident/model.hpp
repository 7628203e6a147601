#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ioident/diff_ring.hpp"
#include "ioident/ratfun.hpp"

namespace ioident {

/// A rational ODE model  x' = f/Q,  y = g/Q  with a single common denominator.
///
/// `ring` holds the parameters, then the states, then the inputs, in declaration
/// order, under graded lex.  f, g and Q are polynomials in that ring.
struct Model {
  std::vector<std::string> params;
  std::vector<std::string> states;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  RingPtr ring;
  RingPtr param_ring;
  std::vector<MPoly> f;
  std::vector<MPoly> g;
  MPoly Q;

  std::size_t n() const { return states.size(); }
  std::size_t m() const { return outputs.size(); }
  std::size_t kappa() const { return inputs.size(); }
  std::size_t lambda() const { return params.size(); }

  std::size_t param_index(std::size_t i) const { return i; }
  std::size_t state_index(std::size_t i) const { return params.size() + i; }
  std::size_t input_index(std::size_t i) const { return params.size() + states.size() + i; }

  bool operator==(const Model& o) const;
};

/// Builds a Model from per-equation rational right-hand sides over the model
/// ring, clearing all denominators into their least common multiple.
Model make_model(std::vector<std::string> params, std::vector<std::string> states,
                 std::vector<std::string> inputs, std::vector<std::string> outputs,
                 const std::vector<RatFun>& state_rhs, const std::vector<RatFun>& output_rhs);

/// Parses the model language; throws ParseError with a 1-based line/column.
Model parse_model(std::string_view text);

/// Renders a model in the same language; parse_model(to_string(m)) == m.
std::string to_string(const Model& m);

/// Parses a rational expression over the variables of `ring`.
RatFun parse_rational(std::string_view text, const RingPtr& ring);

/// Differential ring of a model: states, then outputs, then inputs.
DiffRingPtr make_diff_ring(const Model& m);

/// Parses a differential polynomial such as "y*y'' - y'^2 + m1*y^(4)".
/// Parameters are coefficients; division is allowed by coefficients only.
DiffPoly parse_diff_poly(std::string_view text, const DiffRing& ring);

/// Lifts a polynomial over the model ring to a differential polynomial
/// (parameters go to coefficients, states and inputs become order-0 variables).
DiffPoly lift(const MPoly& p, const Model& m, const DiffRing& ring);

/// Generators of the model's differential ideal:  Q*x_i' - f_i  and  Q*y_j - g_j,
/// to be saturated by Q.
struct SigmaGenerators {
  std::vector<DiffPoly> diff_eqs;
  std::vector<DiffPoly> out_eqs;
  MPoly saturator;

  std::vector<DiffPoly> all() const {
    std::vector<DiffPoly> v = diff_eqs;
    v.insert(v.end(), out_eqs.begin(), out_eqs.end());
    return v;
  }
};

SigmaGenerators build_sigma_generators(const Model& m, const DiffRing& ring);

}  // namespace ioident
