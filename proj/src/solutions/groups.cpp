#include "solutions/solutions.hpp"

namespace popsym::solutions {

using namespace symexpr;

// New solutions from known ones: phi_new(p) = mu(eps) * phi(flow_{-eps}(p)).
// The dilation prefactor is e^(-eps/(theta-1)) = e^(-tau eps), consistent with
// the point transformation phi -> phi e^(-eps/(theta-1)); the rotation uses
// the exact flow of y d/dx - x d/dy so that angles compose.
Expr apply_group(int i, const Expr& eps, const Expr& phi) {
  if (!collect_jets(phi).empty())
    throw DomainError("apply_group expects a jet-free candidate solution");
  const Atom ax = Atom::var(Space::X), ay = Atom::var(Space::Y), at = Atom::var(Space::T);
  Expr x = Expr::x(), y = Expr::y(), t = Expr::t();
  switch (i) {
    case 1: {
      Expr gamma = Expr::param("gamma"), tau = Expr::param("tau");
      Expr sx = make_exp(-gamma * eps), st = make_exp(-eps);
      Expr moved = substitute_many(phi, {{ax, x * sx}, {ay, y * sx}, {at, t * st}});
      return make_exp(-tau * eps) * moved;
    }
    case 2:
      return substitute(phi, at, t - eps);
    case 3: {
      Expr c = make_cos(eps), s = make_sin(eps);
      return substitute_many(phi, {{ax, x * c - y * s}, {ay, x * s + y * c}});
    }
    case 4:
      return substitute(phi, ax, x - eps);
    case 5:
      return substitute(phi, ay, y - eps);
    default:
      throw DomainError("group index out of range");
  }
}

}  // namespace popsym::solutions
