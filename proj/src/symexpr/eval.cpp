#include "symexpr/eval.hpp"

#include <cmath>

namespace popsym::symexpr {

PointAssignment& PointAssignment::set(const Atom& a, double v) {
  vals_[a] = v;
  return *this;
}

PointAssignment& PointAssignment::set_var(Space s, double v) { return set(Atom::var(s), v); }

PointAssignment& PointAssignment::set_param(const std::string& name, double v) {
  return set(Atom::param(name), v);
}

PointAssignment& PointAssignment::set_theta(const Rational& th) {
  theta_exact_ = th;
  theta_ = th.get_d();
  return *this;
}

PointAssignment& PointAssignment::set_theta(double th) {
  theta_exact_.reset();
  theta_ = th;
  return *this;
}

std::optional<double> PointAssignment::lookup(const Atom& a) const {
  auto it = vals_.find(a);
  if (it == vals_.end()) return std::nullopt;
  return it->second;
}

double PointAssignment::theta() const {
  if (!theta_) throw EvalError("theta is unassigned");
  return *theta_;
}

namespace {

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvalError(std::string("non-finite value in ") + what);
  return v;
}

double eval_coeff(const RatFunc& c, const PointAssignment& at) {
  if (c.is_constant()) {
    auto r = c.as_rational();
    return r->get_d();
  }
  if (at.theta_exact()) {
    auto v = c.eval(*at.theta_exact());
    if (!v) throw EvalError("coefficient denominator vanishes at theta");
    return v->get_d();
  }
  return c.eval(at.theta());
}

// exponent integrality for negative-base powers is decided exactly whenever
// the exponent is an exact rational after theta substitution
struct ExpVal {
  double value;
  bool exact_integer;
  long int_value;
};

double eval_atom_power(const Factor& f, const PointAssignment& at);

double eval_term(const Term& t, const PointAssignment& at) {
  double acc = eval_coeff(t.coeff, at);
  for (const auto& f : t.mono) acc *= eval_atom_power(f, at);
  return checked(acc, "term");
}

double eval_expr(const Expr& e, const PointAssignment& at) {
  double acc = 0;
  for (const auto& t : e.terms()) acc += eval_term(t, at);
  return checked(acc, "sum");
}

double ipow(double b, long n) {
  if (n < 0) {
    if (b == 0.0) throw EvalError("zero base with negative exponent");
    return 1.0 / ipow(b, -n);
  }
  double acc = 1.0, base = b;
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

double powered(double base, const ExpVal& e, const char* what) {
  if (e.exact_integer) return checked(ipow(base, e.int_value), what);
  if (base < 0.0)
    throw EvalError(std::string("negative base with non-integer exponent in ") + what);
  if (base == 0.0) {
    if (e.value > 0.0) return 0.0;
    throw EvalError(std::string("zero base with non-positive exponent in ") + what);
  }
  return checked(std::pow(base, e.value), what);
}

double eval_atom_power(const Factor& f, const PointAssignment& at) {
  const Atom& a = f.atom;
  double base = 0;
  switch (a.tag()) {
    case Atom::Tag::Var:
    case Atom::Tag::Jet:
    case Atom::Tag::Param: {
      auto v = at.lookup(a);
      if (!v) throw EvalError("unassigned atom '" + a.str() + "'");
      base = *v;
      break;
    }
    case Atom::Tag::Kernel: {
      const KernelNode& k = a.kernel();
      switch (k.kind) {
        case KernelKind::Exp:
          base = checked(std::exp(eval_expr(k.arg, at)), "exp");
          break;
        case KernelKind::Ln: {
          double x = eval_expr(k.arg, at);
          if (x <= 0.0) throw EvalError("ln of a non-positive value");
          base = std::log(x);
          break;
        }
        case KernelKind::Sin:
          base = std::sin(eval_expr(k.arg, at));
          break;
        case KernelKind::Cos:
          base = std::cos(eval_expr(k.arg, at));
          break;
        case KernelKind::Inv: {
          double x = eval_expr(k.arg, at);
          if (x == 0.0) throw EvalError("division by zero in inverse kernel");
          base = 1.0 / x;
          break;
        }
      }
      break;
    }
    default:
      throw EvalError("unhandled atom");
  }
  if (f.en == 0) return checked(ipow(base, f.em), "power");
  // lattice exponent em + en*theta on phi
  ExpVal ev;
  if (at.theta_exact()) {
    Rational total = Rational(static_cast<long>(f.em)) +
                     Rational(static_cast<long>(f.en)) * (*at.theta_exact());
    if (total.get_den() == 1 && total.get_num().fits_slong_p())
      ev = {total.get_d(), true, total.get_num().get_si()};
    else
      ev = {total.get_d(), false, 0};
  } else {
    ev = {static_cast<double>(f.em) + static_cast<double>(f.en) * at.theta(), false, 0};
  }
  return powered(base, ev, "phi power");
}

}  // namespace

double eval_numeric(const Expr& e, const PointAssignment& at) { return eval_expr(e, at); }

double eval_term_scale(const Expr& e, const PointAssignment& at) {
  double m = 0;
  for (const auto& t : e.terms()) m = std::max(m, std::abs(eval_term(t, at)));
  return m;
}

}  // namespace popsym::symexpr
