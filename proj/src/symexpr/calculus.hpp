#pragma once

#include <functional>
#include <set>
#include <vector>

#include "symexpr/expr.hpp"

namespace popsym::symexpr {

// Partial derivative: every atom other than `wrt` is held fixed. `wrt` may be
// a space-time variable, a jet variable, or a parameter; kernels are handled
// with the chain rule. Differentiation with respect to theta is supported via
// d_theta below (theta lives in the coefficient field, not in an atom).
Expr differentiate(const Expr& e, const Atom& wrt);

// d/dtheta: quotient rule on coefficients plus n*ln(phi)*phi^(m+n theta) for
// lattice exponents and chain rule through kernel arguments.
Expr d_theta(const Expr& e);

// Total derivative along a space-time direction: partial plus the sum of
// jet-advancing terms for every jet atom present (phi and psi families).
// Throws JetOrderError if an order-5 jet would be created.
Expr total_derivative(const Expr& e, Space s);

// Every occurrence of `target` (an atom; kernels are atoms too) replaced by
// `replacement`, then normalized. An occurrence with exponent p contributes
// replacement^p via make_pow.
Expr substitute(const Expr& e, const Atom& target, const Expr& replacement);
Expr substitute_param(const Expr& e, const std::string& name, const Expr& replacement);

// Simultaneous substitution (all targets replaced in one pass, so
// replacements may mention the targets without re-substitution).
Expr substitute_many(const Expr& e, const std::vector<std::pair<Atom, Expr>>& subs);

// Replaces theta by the exact rational value everywhere (coefficients,
// lattice exponents, kernel arguments). Lattice exponents whose theta part
// does not collapse to an integer are routed through opaque powers of phi.
// Throws DomainError if a coefficient denominator vanishes at theta0.
Expr substitute_theta(const Expr& e, const Rational& theta0);

// gamma -> (theta-2)/(2(theta-1)), tau -> 1/(theta-1), applied everywhere
// including kernel arguments; idempotent.
Expr expand_defined_params(const Expr& e);

// All distinct atoms appearing in e, including those inside kernel arguments.
void collect_atoms(const Expr& e, std::set<Atom>& out);
// Jet atoms of e at top level and inside kernels.
std::vector<Atom> collect_jets(const Expr& e);
bool contains_atom(const Expr& e, const Atom& a);

// Rebuilds e bottom-up, applying fn to each kernel argument (used by the
// rewrite passes). fn receives a fully transformed argument.
Expr map_kernel_args(const Expr& e, const std::function<Expr(const Expr&)>& fn);

}  // namespace popsym::symexpr
