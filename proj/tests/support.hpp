#pragma once

// Random generators and fixture helpers shared by the test executables.

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ioident/diff_ring.hpp"
#include "ioident/model.hpp"

#ifndef IOIDENT_MODELS_DIR
#define IOIDENT_MODELS_DIR "models"
#endif

namespace testing {

using namespace ioident;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string model_path(const std::string& name) { return std::string(IOIDENT_MODELS_DIR) + "/" + name; }

inline Model load_model(const std::string& name) { return parse_model(read_file(model_path(name))); }

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"growth.model", "oscillator.model", "hidden_rate.model"};
  return names;
}

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Rat rational(int bound = 9) {
    int num = integer(-bound, bound);
    int den = integer(1, bound);
    Rat r(num, den);
    r.canonicalize();
    return r;
  }

  Rat nonzero_rational(int bound = 9) {
    Rat r;
    do r = rational(bound);
    while (is_zero(r));
    return r;
  }

  MPoly poly(const RingPtr& ring, std::size_t max_terms = 4, std::uint32_t max_deg = 2) {
    std::vector<Term<Rat>> ts;
    std::size_t n = static_cast<std::size_t>(integer(0, static_cast<int>(max_terms)));
    for (std::size_t k = 0; k < n; ++k) {
      Exponents e(ring->size(), 0);
      for (auto& x : e) x = static_cast<std::uint32_t>(integer(0, static_cast<int>(max_deg)));
      ts.push_back({e, rational()});
    }
    return MPoly::from_terms(ring, std::move(ts));
  }

  MPoly nonzero_poly(const RingPtr& ring, std::size_t max_terms = 4, std::uint32_t max_deg = 2) {
    MPoly p;
    do p = poly(ring, max_terms, max_deg);
    while (p.is_zero());
    return p;
  }

  /// Coefficient in Q(params): a rational constant or a small polynomial.
  RatFun coefficient(const RingPtr& params) {
    if (!params || params->size() == 0 || coin(0.6)) return RatFun(rational());
    return RatFun(poly(params, 2, 1));
  }

  RatFun nonzero_coefficient(const RingPtr& params) {
    RatFun c;
    do c = coefficient(params);
    while (c.is_zero());
    return c;
  }

  DiffVar var(const DiffRing& ring, std::uint32_t max_order) {
    return {static_cast<std::uint32_t>(integer(0, static_cast<int>(ring.size()) - 1)),
            static_cast<std::uint32_t>(integer(0, static_cast<int>(max_order)))};
  }

  DiffPoly diff_poly(const DiffRing& ring, std::size_t max_terms = 4, std::uint32_t max_order = 2,
                     std::uint32_t max_deg = 2) {
    DiffPoly f;
    std::size_t n = static_cast<std::size_t>(integer(0, static_cast<int>(max_terms)));
    for (std::size_t k = 0; k < n; ++k) {
      DiffPoly t(coefficient(ring.params()));
      std::size_t factors = static_cast<std::size_t>(integer(0, static_cast<int>(max_deg)));
      for (std::size_t j = 0; j < factors; ++j) t = t * DiffPoly::variable(var(ring, max_order));
      f += t;
    }
    return f;
  }

  DiffPoly nonconstant_diff_poly(const DiffRing& ring, std::size_t max_terms = 4, std::uint32_t max_order = 2,
                                 std::uint32_t max_deg = 2) {
    DiffPoly f;
    do f = diff_poly(ring, max_terms, max_order, max_deg);
    while (f.is_constant());
    return f;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), rng_);
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

/// Two outputs and one input over parameters a, b.
inline DiffRingPtr small_io_ring() {
  auto params = make_ring({"a", "b"});
  return std::make_shared<const DiffRing>(std::vector<std::string>{"y1", "y2", "u"},
                                          std::vector<VarKind>{VarKind::Output, VarKind::Output, VarKind::Input},
                                          params);
}

/// One state and two outputs over parameter a.
inline DiffRingPtr small_state_ring() {
  auto params = make_ring({"a"});
  return std::make_shared<const DiffRing>(std::vector<std::string>{"x", "y1", "y2"},
                                          std::vector<VarKind>{VarKind::State, VarKind::Output, VarKind::Output},
                                          params);
}

}  // namespace testing
