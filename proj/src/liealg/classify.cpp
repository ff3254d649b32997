#include "liealg/classify.hpp"

namespace popsym::liealg {

using namespace symexpr;

Rational gamma_at(const Rational& theta0) {
  if (!(theta0 > 0 && theta0 < 1))
    throw DomainError("theta must lie in (0,1)");
  Rational g = (theta0 - 2) / (2 * (theta0 - 1));
  if (g == 0) throw DomainError("gamma vanished; impossible for theta in (0,1)");
  return g;
}

ClassifyResult classify(const std::array<Rational, 5>& alpha, const Rational& theta0) {
  bool all_zero = true;
  for (const auto& a : alpha) all_zero = all_zero && a == 0;
  if (all_zero) throw DomainError("cannot classify the zero element");
  Rational g = gamma_at(theta0);

  ClassifyResult r;
  for (auto& e : r.eps) e = Expr();

  const Rational &a1 = alpha[0], &a3 = alpha[2];
  if (a1 != 0 && a3 != 0) {
    r.case_id = 1;
    r.scale = 1 / a1;
    Rational b2 = alpha[1] * r.scale, b4 = alpha[3] * r.scale, b5 = alpha[4] * r.scale;
    r.k = a3 / a1;
    Rational det = r.k * r.k + g * g;
    Rational e4 = (g * b4 - r.k * b5) / det;
    Rational e5 = (g * b5 + r.k * b4) / det;
    r.eps[1] = Expr(b2);
    r.eps[3] = Expr(e4);
    r.eps[4] = Expr(e5);
    r.representative = {1, 0, r.k, 0, 0};
  } else if (a1 == 0 && a3 != 0) {
    r.case_id = 2;
    r.scale = 1 / a3;
    Rational b2 = alpha[1] * r.scale, b4 = alpha[3] * r.scale, b5 = alpha[4] * r.scale;
    r.eps[4] = Expr(b4);   // eliminates the X4 coefficient
    r.eps[3] = Expr(-b5);  // eliminates the X5 coefficient
    r.mu1 = sgn(b2);
    if (b2 != 0 && abs(b2) != 1) {
      // the X1 flow scales the X2 coefficient by e^eps1: pick the smallest
      // magnitude eps1 with |coefficient| = 1, i.e. eps1 = ln(1/|b2|)
      r.eps[0] = make_ln(Expr(1 / abs(b2)));
    }
    r.representative = {0, Rational(r.mu1), 1, 0, 0};
  } else if (a1 != 0) {
    r.case_id = 3;
    r.scale = 1 / a1;
    Rational b2 = alpha[1] * r.scale, b4 = alpha[3] * r.scale, b5 = alpha[4] * r.scale;
    r.eps[1] = Expr(b2);
    r.eps[3] = Expr(b4 / g);
    r.eps[4] = Expr(b5 / g);
    r.representative = {1, 0, 0, 0, 0};
  } else {
    r.case_id = 4;
    r.scale = 1;
    r.representative = alpha;
  }
  return r;
}

bool classify_roundtrip(const ClassifyResult& r, const std::array<Rational, 5>& alpha,
                        const Rational& theta0) {
  Mat5 m = adjoint_transform_matrix(r.eps);
  AlgebraElement scaled;
  for (int i = 0; i < 5; ++i) scaled[i] = Expr(alpha[i] * r.scale);
  AlgebraElement b = apply_adjoint_matrix(scaled, m);
  for (int i = 0; i < 5; ++i) {
    Expr v = substitute_theta(expand_defined_params(b[i]), theta0);
    if (v != Expr(r.representative[i])) return false;
  }
  return true;
}

}  // namespace popsym::liealg
