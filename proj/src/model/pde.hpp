#pragma once

#include "symexpr/calculus.hpp"
#include "symexpr/expr.hpp"

namespace popsym::model {

using symexpr::Expr;

// Delta = phi_t - 2 phi_x^2 - 2 phi phi_xx - 2 phi_y^2 - 2 phi phi_yy + h phi^theta
Expr delta();

// phi_t isolated on solutions: 2(phi_x^2 + phi_y^2) + 2 phi (phi_xx + phi_yy) - h phi^theta
Expr evolution_rhs();

// Eliminates every time-jet (phi_t and all its differential consequences) by
// substituting the evolution form, highest time order first, until only
// spatial jets remain. Throws JetOrderError if a substitution would need a
// jet above order 4.
Expr reduce_onshell(const Expr& e);

}  // namespace popsym::model
