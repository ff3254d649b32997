#pragma once

#include <array>
#include <string>

#include "symexpr/calculus.hpp"
#include "symexpr/expr.hpp"

namespace popsym::liealg {

using symexpr::Expr;
using symexpr::Rational;

// Infinitesimal generator xi1 d/dx + xi2 d/dy + xi3 d/dt + xi4 d/dphi with
// coefficients depending on (x, y, t, phi) only.
struct VectorField {
  Expr xi1, xi2, xi3, xi4;
};

// X1 = gamma x d/dx + gamma y d/dy + t d/dt - tau phi d/dphi,
// X2 = d/dt, X3 = y d/dx - x d/dy, X4 = d/dx, X5 = d/dy,
// with gamma, tau kept symbolic. Index is 1-based.
VectorField standard_generator(int i);
std::array<VectorField, 5> standard_generators();

// Action of the field on a function of (x, y, t, phi).
Expr apply_field(const VectorField& v, const Expr& f);

VectorField commutator(const VectorField& a, const VectorField& b);

// Coordinates of w in the standard basis; throws DomainError when w is
// outside the span.
std::array<Expr, 5> expand_in_basis(const VectorField& w);

// c[i][j][k]: coefficient of X_{k+1} in [X_{i+1}, X_{j+1}] (0-based storage).
struct StructureConstants {
  Expr c[5][5][5];
};
StructureConstants structure_constants();

// Commutation table transcribed from the source table, as basis coordinates:
// entry(i,j) = coordinates of [X_i, X_j]. 1-based arguments.
std::array<Expr, 5> commutation_table_entry(int i, int j);

// Second-order prolongation coefficients of the field.
struct Prolongation {
  Expr xi4_x, xi4_y, xi4_t, xi4_xx, xi4_yy;
};
Prolongation prolong2(const VectorField& v);

// Applies the prolonged field to the governing equation and reduces on-shell.
Expr invariance_residual(const VectorField& v);

// Element alpha1 X1 + ... + alpha5 X5; components are expressions so both
// exact rational and symbolic coefficients flow through the same operations.
using AlgebraElement = std::array<Expr, 5>;

AlgebraElement element(const std::array<Rational, 5>& alpha);
AlgebraElement basis_element(int i);  // X_i, 1-based
AlgebraElement generic_element();     // symbolic alpha1..alpha5

struct Mat5 {
  Expr m[5][5];
  static Mat5 identity();
  Mat5 operator*(const Mat5& o) const;
};

// Adjoint endomorphism matrix of A in the basis, oriented as in the Killing
// form derivation: column j holds the coordinates of [X_j, A], so that
// trace(ad(A) ad(A)) reproduces (2 gamma^2 + 1) alpha1^2 - 2 alpha3^2.
Mat5 ad_matrix(const AlgebraElement& a);

Expr killing_form(const AlgebraElement& a, const AlgebraElement& b);

// Closed-form adjoint action Ad(exp(eps X_i)) on coefficient vectors
// (the invariant-function construction table rows). 1-based i.
AlgebraElement adjoint_action(int i, const Expr& eps, const AlgebraElement& a);

// Truncated series X - eps [Xi, X] + eps^2/2 [Xi, [Xi, X]] for cross-checks.
AlgebraElement adjoint_series2(int i, const Expr& eps, const AlgebraElement& a);

// Transcription of the adjoint representation table: the displayed
// Ad(exp(eps X_i)) X_j in basis coordinates. 1-based arguments.
AlgebraElement adjoint_table_entry(int i, int j, const Expr& eps);

// General adjoint transformation matrix A(eps1..eps5) = M5 M4 M3 M2 M1.
Mat5 adjoint_transform_matrix(const std::array<Expr, 5>& eps);
// Row-vector action b = a . A.
AlgebraElement apply_adjoint_matrix(const AlgebraElement& a, const Mat5& m);
// The transcription of the displayed general adjoint matrix (sigma forms).
Mat5 adjoint_transform_matrix_transcribed(const std::array<Expr, 5>& eps);

// Invariant functions of a concrete element.
struct InvariantValues {
  Expr K;        // Killing value, polynomial in gamma
  Rational M, N; // alpha1, alpha3
  int P, Q;      // 0/1 indicators
  int R, S, T;   // signs under the stated zero-pattern conditions
};
InvariantValues invariant_values(const std::array<Rational, 5>& alpha);

}  // namespace popsym::liealg
