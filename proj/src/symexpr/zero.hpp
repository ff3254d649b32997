#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symexpr/expr.hpp"

namespace popsym::symexpr {

enum class ZeroVerdict { Zero, NonZero, Unknown };

std::string to_string(ZeroVerdict v);

// Sampling constraints for the randomized side of the zero test. Defaults
// follow the declared ranges: theta in [0.05, 0.95], h in [0.5, 4], other
// free parameters in [-3, 3] away from zero exclusions, t >= 0.5 and
// x^2 + y^2 >= 0.25.
struct ConstraintSet {
  std::vector<std::string> nonzero_params;            // |p| kept >= 0.2
  std::vector<std::string> positive_params;           // p in [0.2, 3]
  std::map<std::string, std::pair<double, double>> param_ranges;
  std::optional<double> h_value;  // pin h (sampling only; substitution is the caller's job)
  double phi_min = 0.3, phi_max = 3.0;                // phi samples kept positive
  int samples = 20;
  std::uint64_t seed = 0x5eed5eedULL;
};

// Rewrite route used by the zero test: expand the defined parameters gamma
// and tau, resolve exponential groups that differ by integer multiples of
// logarithms, and clear Inv denominators. Zero-preserving (the cleared form
// is zero iff the input is zero on the domain where it is defined).
Expr rewrite_for_zero(const Expr& e);

// Hybrid zero test:
//   Zero     - the canonical or rewritten form is syntactically zero
//   NonZero  - some admissible sample exceeds the relative tolerance
//   Unknown  - all samples pass but rewriting does not reach zero
// Throws DomainError when no admissible sample point can be drawn.
ZeroVerdict is_zero(const Expr& e, const ConstraintSet& cs = {});

// The sampling half alone: max relative residual over the drawn points
// (used for reporting); nullopt when no point could be drawn.
std::optional<double> max_relative_residual(const Expr& e, const ConstraintSet& cs);

}  // namespace popsym::symexpr
