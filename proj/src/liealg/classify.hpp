#pragma once

#include "liealg/liealg.hpp"

namespace popsym::liealg {

// One-dimensional optimal-system classification of a nonzero element at a
// concrete porous exponent theta0 in (0,1). The representative is one of
//   case 1: X1 + k X3           (alpha1 != 0, alpha3 != 0, k = alpha3/alpha1)
//   case 2: mu1 X2 + X3         (alpha1 == 0, alpha3 != 0, mu1 in {-1,0,1})
//   case 3: X1                  (alpha1 != 0, alpha3 == 0)
//   case 4: a2 X2 + a4 X4 + a5 X5 (alpha1 == alpha3 == 0, unchanged)
// `scale` is the overall scalar applied to the element before the adjoint
// replay; `eps` are the group parameters, exact expressions (case 2 may use
// eps1 = ln(q) with rational q).
struct ClassifyResult {
  int case_id = 0;
  std::array<Rational, 5> representative{};
  std::array<Expr, 5> eps{};
  Rational scale = 1;
  Rational k = 0;  // case 1
  int mu1 = 0;     // case 2
};

ClassifyResult classify(const std::array<Rational, 5>& alpha, const Rational& theta0);

// Replays the returned eps through the general adjoint matrix applied to
// scale * alpha and compares against the representative, exactly.
bool classify_roundtrip(const ClassifyResult& r, const std::array<Rational, 5>& alpha,
                        const Rational& theta0);

Rational gamma_at(const Rational& theta0);

}  // namespace popsym::liealg
