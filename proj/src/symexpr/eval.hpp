#pragma once

#include <map>
#include <optional>
#include <string>

#include "symexpr/expr.hpp"

namespace popsym::symexpr {

// Point at which an expression is evaluated. Every free atom must be
// assigned; theta may additionally be supplied as an exact rational so that
// integer-exponent decisions are made exactly.
class PointAssignment {
 public:
  PointAssignment& set(const Atom& a, double v);
  PointAssignment& set_var(Space s, double v);
  PointAssignment& set_param(const std::string& name, double v);
  PointAssignment& set_phi(double v) { return set(Atom::jet(JetBase::Phi, JetIndex()), v); }
  PointAssignment& set_theta(const Rational& th);
  PointAssignment& set_theta(double th);

  std::optional<double> lookup(const Atom& a) const;
  double theta() const;
  bool has_theta() const { return theta_.has_value(); }
  const std::optional<Rational>& theta_exact() const { return theta_exact_; }

 private:
  std::map<Atom, double> vals_;
  std::optional<double> theta_;
  std::optional<Rational> theta_exact_;
};

// Standard double evaluation. Throws EvalError for unassigned atoms,
// fractional powers of negative bases, logs of non-positive values, and
// non-finite results.
double eval_numeric(const Expr& e, const PointAssignment& at);

// Largest |term value| of e at the point (the scale used by the relative
// zero-test tolerance).
double eval_term_scale(const Expr& e, const PointAssignment& at);

}  // namespace popsym::symexpr
