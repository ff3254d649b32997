#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symexpr/calculus.hpp"
#include "symexpr/expr.hpp"
#include "symexpr/zero.hpp"

namespace popsym::solutions {

using symexpr::Expr;
using symexpr::Rational;
using symexpr::ZeroVerdict;

// ---------------------------------------------------------------------------
// closed-form families

enum class FamilyId { S1, S2, S3, S4, S5, S6 };

struct SolutionFamily {
  FamilyId id;
  std::string name;      // "S1".."S6"
  Expr phi;              // closed form in (x, y, t) and parameters
  bool requires_h_zero;  // the residual is exactly the source term otherwise
  symexpr::ConstraintSet constraints;  // admissible sampling region
  std::string anchor;    // stable claim anchor (report keys)
  std::string notes;     // validity notes: singular sets, parameter naming
};

const SolutionFamily& family(FamilyId id);
std::vector<FamilyId> all_families();
FamilyId family_from_name(const std::string& name);

// residual of a jet-free candidate in the governing equation, h symbolic
Expr pde_residual(const Expr& phi);

struct VerifyReport {
  FamilyId id;
  ZeroVerdict verdict;          // under the family's constraint set
  Expr residual;                // the symbolic residual that was tested
  bool via_reduction = false;   // S6: checked through its reduction chain
  std::optional<double> numeric_max;  // max relative residual over samples
  bool numeric_skipped = false;
  std::string detail;           // discrepancy notes, exact expressions
};

VerifyReport verify_family(FamilyId id);

// ---------------------------------------------------------------------------
// similarity reductions

enum class ReductionCase { R511, R511H0, R512, R513, R514, R521, R522, R522H0, R523 };

std::vector<ReductionCase> all_reductions();
std::string to_string(ReductionCase c);

struct ReducedODE {
  ReductionCase case_id;
  Expr residual;  // in lambda, G, G', G'' and parameters
};

ReducedODE reduced_ode(ReductionCase c);

// substitutes G(lambda) and its lambda-derivatives into the ODE residual
Expr ode_residual(const ReducedODE& ode, const Expr& G_of_lambda);

// the closed-form G displayed for the case, when one is displayed
std::optional<Expr> displayed_ode_solution(ReductionCase c);

enum class LambdaKind { Radial, Linear };  // lambda = X^2+Y^2 or X - (d1/d2) Y

struct SimilarityMap {
  ReductionCase case_id;
  Expr X_expr, Y_expr;  // similarity variables in (x, y, t) and parameters
  Expr prefactor;       // phi = prefactor * F(X, Y)
  LambdaKind lambda_kind;
};

SimilarityMap similarity_map(ReductionCase c);

// transcription of the displayed intermediate PDE in F (atoms F, F_X, ...)
Expr displayed_first_reduction(ReductionCase c);

// Consistency of the printed reduction chain for one case:
//  - first:  substituting the map into the governing equation reproduces the
//            displayed F-equation (up to the stated clearing factor)
//  - direct: composing the map with F = G(lambda) reproduces the displayed ODE
// Differences are returned exactly; a NonZero verdict flags a transcription
// defect in the printed display, not in the chain's mathematics.
struct ReductionConsistency {
  ReductionCase case_id;
  ZeroVerdict first;
  Expr first_difference;
  ZeroVerdict direct;
  Expr direct_difference;
};

ReductionConsistency check_reduction(ReductionCase c);

// ---------------------------------------------------------------------------
// symmetry-group actions on candidate solutions

// G1 dilation, G2 time translation, G3 rotation (exact flow), G4/G5 space
// translations; eps may be symbolic or concrete.
Expr apply_group(int i, const Expr& eps, const Expr& phi);

}  // namespace popsym::solutions
