#pragma once

// Truncated power-series solutions of a model at rational sample points.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ioident/diff_ring.hpp"
#include "ioident/model.hpp"

namespace ioident {

/// Coefficients of t^0, t^1, ... of a truncated series.
using Series = std::vector<Rat>;

Series series_mul(const Series& a, const Series& b, std::size_t len);
/// Requires b[0] != 0 (DivisionError otherwise).
Series series_div(const Series& a, const Series& b, std::size_t len);
Series series_derivative(const Series& a);
bool series_is_zero(const Series& a);

struct SamplePoint {
  std::vector<Rat> mu;
  std::vector<Rat> x0;
  std::vector<Series> u;  // polynomial inputs, one per input
  std::uint64_t seed = 0;
};

struct SeriesPoint {
  std::size_t order = 0;  // K: every series carries K+1 coefficients
  std::vector<Rat> mu;
  std::vector<Series> x;
  std::vector<Series> y;
  std::vector<Series> u;
};

/// Per-trial seed derived from a master seed.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

/// Random rational in [-bound, bound] with denominator in [1, bound].
Rat random_rational(std::mt19937_64& rng, int bound);

/// Samples mu, x* and degree-K polynomial inputs; resamples up to 10 times
/// while Q vanishes at the point, then throws SamplingError.
SamplePoint sample_point(const Model& m, std::uint64_t seed, std::size_t K, int bound = 100);

/// Taylor coefficients up to t^K of the solution through the sample point.
/// Throws SingularPointError when Q vanishes at the point.
SeriesPoint solve_series(const Model& m, const SamplePoint& p, std::size_t K);

/// Evaluates a polynomial over the model ring (params, states, inputs) along s.
Series eval_model_poly(const MPoly& p, const Model& m, const SeriesPoint& s);

/// Evaluates f along s; the result has K+1-ord(f) coefficients.
/// Throws TruncationError when K < ord(f) + 1.
Series eval_on_series(const DiffPoly& f, const SeriesPoint& s);

/// Q*x_i' - f_i (K coefficients each) followed by Q*y_j - g_j (K+1 each).
std::vector<Series> residuals(const Model& m, const SeriesPoint& s);

enum class Membership { NotInIdeal, Undetermined };

struct MembershipVerdict {
  Membership verdict = Membership::Undetermined;
  std::size_t trials = 0;
  std::optional<std::uint64_t> witness_seed;  // sample seed exhibiting a nonzero value
};

/// NotInIdeal is certain; Undetermined means f vanished on every sampled solution.
/// K = 0 selects ord(f) + 4.
MembershipVerdict not_in_ideal(const DiffPoly& f, const Model& m, std::size_t trials, std::size_t K,
                               std::uint64_t seed);

using DiffMatrix = std::vector<std::vector<DiffPoly>>;

/// Entry (i, j) is the i-th derivative of z_j, for i < M.
DiffMatrix wronskian(const std::vector<DiffPoly>& z, std::size_t M);
/// Determinant of a square matrix by cofactor expansion.
DiffPoly determinant(const DiffMatrix& a);

}  // namespace ioident
