#pragma once

#include <array>
#include <string>
#include <vector>

#include "liealg/liealg.hpp"
#include "symexpr/expr.hpp"
#include "symexpr/zero.hpp"

namespace popsym::conslaw {

using symexpr::Expr;

// the multiplier family found by the self-adjointness analysis:
// (c1 y + c2) x + c3 y + c4
Expr paper_multiplier();

// L = psi * Delta
Expr formal_lagrangian(const Expr& psi);

// delta L / delta phi for second-order L:
// dL/dphi - D_t dL/dphi_t - D_x dL/dphi_x - D_y dL/dphi_y
//        + D_x^2 dL/dphi_xx + D_x D_y dL/dphi_xy + D_y^2 dL/dphi_yy
Expr euler_lagrange(const Expr& L);

// the adjoint expression S = delta(psi Delta)/delta phi with psi kept as an
// opaque dependent variable (psi-jet atoms), and its transcription
Expr adjoint_expression();
Expr adjoint_expression_transcribed();

// S with psi = G(x,y,t,phi) substituted (total-derivative images, so a
// phi-dependent multiplier picks up chain-rule terms), minus delta1 * Delta
// with delta1 = -dG/dphi.
Expr self_adjointness_residual(const Expr& psi);

struct ConservedVector {
  Expr eta_x, eta_y, eta_t;
  std::string source;
};

// Conserved-vector construction for a point symmetry and multiplier:
//   eta^x = xi1 L + w dL/dphi_x - w D_x(dL/dphi_xx) + dL/dphi_xx D_x(w)
//   eta^y = xi2 L + w dL/dphi_y - w D_y(dL/dphi_yy) + dL/dphi_yy D_y(w)
//   eta^t = xi3 L + w dL/dphi_t
// with w = xi4 - xi1 phi_x - xi2 phi_y - xi3 phi_t.
ConservedVector conserved_vector(const liealg::VectorField& v, const Expr& psi);

Expr divergence(const ConservedVector& cv);          // D_x eta^x + D_y eta^y + D_t eta^t
Expr onshell_divergence(const ConservedVector& cv);  // reduced modulo the equation

// verbatim transcriptions of the five printed conserved vectors (gamma, tau
// symbolic; multiplier constants c1..c4)
ConservedVector printed_eta(int i);

enum class ComponentVerdict { Identical, TriviallyEquivalent, Mismatch };

struct ComponentComparison {
  Expr raw_difference;
  Expr onshell_difference;
  ComponentVerdict verdict;
};

struct VectorComparison {
  ComponentComparison x, y, t;
};

// Componentwise comparison; differences that vanish on-shell (multiples of
// the equation and its differential consequences) are trivially equivalent.
VectorComparison compare_vectors(const ConservedVector& a, const ConservedVector& b);

std::string to_string(ComponentVerdict v);

struct PotentialSystem {
  int generator;
  std::array<std::string, 3> lhs;  // curl-form left-hand sides
  std::array<Expr, 3> rhs;         // eta^t, eta^x, eta^y in the printed arrangement
  std::vector<std::pair<std::string, std::string>> gauges;  // name -> constraint
};

PotentialSystem potential_system(int i);

}  // namespace popsym::conslaw
