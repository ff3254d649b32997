#include "liealg/liealg.hpp"

#include "model/pde.hpp"

namespace popsym::liealg {

using namespace symexpr;

namespace {
const Expr kGamma = Expr::param("gamma");
const Expr kTau = Expr::param("tau");

Expr jet(int nx, int ny, int nt) { return Expr::jet(JetBase::Phi, nx, ny, nt); }
}  // namespace

VectorField standard_generator(int i) {
  switch (i) {
    case 1:
      return {kGamma * Expr::x(), kGamma * Expr::y(), Expr::t(), -kTau * Expr::phi()};
    case 2:
      return {Expr(), Expr(), Expr(1), Expr()};
    case 3:
      return {Expr::y(), -Expr::x(), Expr(), Expr()};
    case 4:
      return {Expr(1), Expr(), Expr(), Expr()};
    case 5:
      return {Expr(), Expr(1), Expr(), Expr()};
    default:
      throw DomainError("generator index out of range");
  }
}

std::array<VectorField, 5> standard_generators() {
  std::array<VectorField, 5> g = {standard_generator(1), standard_generator(2),
                                  standard_generator(3), standard_generator(4),
                                  standard_generator(5)};
  // construction-time invariant: coefficients polynomial in x, y, t and at
  // most linear in phi
  static const bool validated = [&g] {
    const Atom phi = Atom::jet(JetBase::Phi, JetIndex());
    for (const auto& v : g)
      for (const Expr* c : {&v.xi1, &v.xi2, &v.xi3, &v.xi4}) {
        if (!differentiate(differentiate(*c, phi), phi).is_zero())
          throw DomainError("standard generator coefficient is nonlinear in phi");
        for (const auto& t : c->terms())
          for (const auto& f : t.mono)
            if (f.atom.tag() == Atom::Tag::Kernel || f.em < 0)
              throw DomainError("standard generator coefficient is not polynomial");
      }
    return true;
  }();
  (void)validated;
  return g;
}

Expr apply_field(const VectorField& v, const Expr& f) {
  return v.xi1 * differentiate(f, Atom::var(Space::X)) +
         v.xi2 * differentiate(f, Atom::var(Space::Y)) +
         v.xi3 * differentiate(f, Atom::var(Space::T)) +
         v.xi4 * differentiate(f, Atom::jet(JetBase::Phi, JetIndex()));
}

VectorField commutator(const VectorField& a, const VectorField& b) {
  return {apply_field(a, b.xi1) - apply_field(b, a.xi1),
          apply_field(a, b.xi2) - apply_field(b, a.xi2),
          apply_field(a, b.xi3) - apply_field(b, a.xi3),
          apply_field(a, b.xi4) - apply_field(b, a.xi4)};
}

std::array<Expr, 5> expand_in_basis(const VectorField& w) {
  // xi3 = a1 t + a2, xi1 = a1 gamma x + a3 y + a4, xi2 = a1 gamma y - a3 x + a5,
  // xi4 = -a1 tau phi
  const Atom ax = Atom::var(Space::X), ay = Atom::var(Space::Y), at = Atom::var(Space::T);
  Expr a1 = differentiate(w.xi3, at);
  Expr a2 = w.xi3 - a1 * Expr::t();
  Expr a3 = differentiate(w.xi1, ay);
  Expr a4 = w.xi1 - a1 * kGamma * Expr::x() - a3 * Expr::y();
  Expr a5 = w.xi2 - a1 * kGamma * Expr::y() + a3 * Expr::x();
  std::array<Expr, 5> out{a1, a2, a3, a4, a5};
  // consistency: rebuild and compare
  VectorField r{a1 * kGamma * Expr::x() + a3 * Expr::y() + a4,
                a1 * kGamma * Expr::y() - a3 * Expr::x() + a5, a1 * Expr::t() + a2,
                -a1 * kTau * Expr::phi()};
  if (!(r.xi1 == w.xi1 && r.xi2 == w.xi2 && r.xi3 == w.xi3 && r.xi4 == w.xi4))
    throw DomainError("vector field is outside the span of the standard generators");
  for (const auto& c : out) {
    for (Space s : {Space::X, Space::Y, Space::T})
      if (!differentiate(c, Atom::var(s)).is_zero())
        throw DomainError("basis expansion produced non-constant coordinates");
  }
  return out;
}

StructureConstants structure_constants() {
  StructureConstants sc;
  auto gens = standard_generators();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      auto coords = expand_in_basis(commutator(gens[i], gens[j]));
      for (int k = 0; k < 5; ++k) sc.c[i][j][k] = coords[k];
    }
  return sc;
}

std::array<Expr, 5> commutation_table_entry(int i, int j) {
  auto z = [] { return std::array<Expr, 5>{}; };
  auto unit = [](int k, const Expr& c) {
    std::array<Expr, 5> r{};
    r[k - 1] = c;
    return r;
  };
  if (i == j) return z();
  // transcribed entries; gamma symbolic
  if (i == 1 && j == 2) return unit(2, Expr(-1));
  if (i == 1 && j == 4) return unit(4, -kGamma);
  if (i == 1 && j == 5) return unit(5, -kGamma);
  if (i == 2 && j == 1) return unit(2, Expr(1));
  if (i == 3 && j == 4) return unit(5, Expr(1));
  if (i == 3 && j == 5) return unit(4, Expr(-1));
  if (i == 4 && j == 1) return unit(4, kGamma);
  if (i == 4 && j == 3) return unit(5, Expr(-1));
  if (i == 5 && j == 1) return unit(5, kGamma);
  if (i == 5 && j == 3) return unit(4, Expr(1));
  return z();
}

Prolongation prolong2(const VectorField& v) {
  auto first = [&](Space s) {
    return total_derivative(v.xi4, s) - jet(1, 0, 0) * total_derivative(v.xi1, s) -
           jet(0, 1, 0) * total_derivative(v.xi2, s) -
           jet(0, 0, 1) * total_derivative(v.xi3, s);
  };
  Expr zx = first(Space::X);
  Expr zy = first(Space::Y);
  Expr zt = first(Space::T);
  auto second = [&](const Expr& zf, Space s, const Expr& jsx, const Expr& jsy,
                    const Expr& jst) {
    return total_derivative(zf, s) - jsx * total_derivative(v.xi1, s) -
           jsy * total_derivative(v.xi2, s) - jst * total_derivative(v.xi3, s);
  };
  Expr zxx = second(zx, Space::X, jet(2, 0, 0), jet(1, 1, 0), jet(1, 0, 1));
  Expr zyy = second(zy, Space::Y, jet(1, 1, 0), jet(0, 2, 0), jet(0, 1, 1));
  return {zx, zy, zt, zxx, zyy};
}

Expr invariance_residual(const VectorField& v) {
  Expr d = model::delta();
  Prolongation p = prolong2(v);
  const Atom aphi = Atom::jet(JetBase::Phi, JetIndex());
  Expr action = v.xi1 * differentiate(d, Atom::var(Space::X)) +
                v.xi2 * differentiate(d, Atom::var(Space::Y)) +
                v.xi3 * differentiate(d, Atom::var(Space::T)) +
                v.xi4 * differentiate(d, aphi) +
                p.xi4_x * differentiate(d, Atom::jet(JetBase::Phi, JetIndex(1, 0, 0))) +
                p.xi4_y * differentiate(d, Atom::jet(JetBase::Phi, JetIndex(0, 1, 0))) +
                p.xi4_t * differentiate(d, Atom::jet(JetBase::Phi, JetIndex(0, 0, 1))) +
                p.xi4_xx * differentiate(d, Atom::jet(JetBase::Phi, JetIndex(2, 0, 0))) +
                p.xi4_yy * differentiate(d, Atom::jet(JetBase::Phi, JetIndex(0, 2, 0)));
  return model::reduce_onshell(action);
}

AlgebraElement element(const std::array<Rational, 5>& alpha) {
  AlgebraElement e;
  for (int i = 0; i < 5; ++i) e[i] = Expr(alpha[i]);
  return e;
}

AlgebraElement basis_element(int i) {
  AlgebraElement e{};
  e[i - 1] = Expr(1);
  return e;
}

AlgebraElement generic_element() {
  return {Expr::param("alpha1"), Expr::param("alpha2"), Expr::param("alpha3"),
          Expr::param("alpha4"), Expr::param("alpha5")};
}

Mat5 Mat5::identity() {
  Mat5 r;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) r.m[i][j] = Expr(i == j ? 1 : 0);
  return r;
}

Mat5 Mat5::operator*(const Mat5& o) const {
  Mat5 r;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      Expr acc;
      for (int k = 0; k < 5; ++k) acc += m[i][k] * o.m[k][j];
      r.m[i][j] = acc;
    }
  return r;
}

Mat5 ad_matrix(const AlgebraElement& a) {
  static const StructureConstants sc = structure_constants();
  Mat5 r;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      Expr acc;
      // column j: coordinates of [X_j, A] = sum_k alpha_k [X_j, X_k]
      for (int k = 0; k < 5; ++k) acc += sc.c[j][k][i] * a[k];
      r.m[i][j] = acc;
    }
  return r;
}

Expr killing_form(const AlgebraElement& a, const AlgebraElement& b) {
  Mat5 ma = ad_matrix(a), mb = ad_matrix(b);
  Expr tr;
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 5; ++k) tr += ma.m[i][k] * mb.m[k][i];
  return tr;
}

AlgebraElement adjoint_action(int i, const Expr& eps, const AlgebraElement& a) {
  AlgebraElement r = a;
  switch (i) {
    case 1: {
      Expr e1 = make_exp(eps);
      Expr eg = make_exp(kGamma * eps);
      r[1] = e1 * a[1];
      r[3] = eg * a[3];
      r[4] = eg * a[4];
      break;
    }
    case 2:
      r[1] = a[1] - eps * a[0];
      break;
    case 3: {
      Expr c = make_cos(eps), s = make_sin(eps);
      r[3] = a[3] * c + a[4] * s;
      r[4] = a[4] * c - a[3] * s;
      break;
    }
    case 4:
      r[3] = a[3] - kGamma * eps * a[0];
      r[4] = a[4] + eps * a[2];
      break;
    case 5:
      r[3] = a[3] - eps * a[2];
      r[4] = a[4] - kGamma * eps * a[0];
      break;
    default:
      throw DomainError("adjoint action index out of range");
  }
  return r;
}

AlgebraElement adjoint_series2(int i, const Expr& eps, const AlgebraElement& a) {
  static const StructureConstants sc = structure_constants();
  auto bracket_with_basis = [&](int bi, const AlgebraElement& v) {
    // [X_bi, v]
    AlgebraElement r{};
    for (int k = 0; k < 5; ++k) {
      if (v[k].is_zero()) continue;
      for (int m = 0; m < 5; ++m) r[m] += sc.c[bi - 1][k][m] * v[k];
    }
    return r;
  };
  AlgebraElement b1 = bracket_with_basis(i, a);
  AlgebraElement b2 = bracket_with_basis(i, b1);
  AlgebraElement out;
  for (int k = 0; k < 5; ++k)
    out[k] = a[k] - eps * b1[k] + Expr(Rational(1, 2)) * eps * eps * b2[k];
  return out;
}

AlgebraElement adjoint_table_entry(int i, int j, const Expr& eps) {
  AlgebraElement r = basis_element(j);
  auto unit = [](int k, const Expr& c) {
    AlgebraElement a{};
    a[k - 1] = c;
    return a;
  };
  switch (i) {
    case 1:
      if (j == 2) return unit(2, make_exp(eps));
      if (j == 4) return unit(4, make_exp(kGamma * eps));
      if (j == 5) return unit(5, make_exp(kGamma * eps));
      return r;
    case 2:
      if (j == 1) {
        r[1] = -eps;
        return r;
      }
      return r;
    case 3:
      if (j == 4) {
        AlgebraElement a{};
        a[3] = make_cos(eps);
        a[4] = -make_sin(eps);
        return a;
      }
      if (j == 5) {
        AlgebraElement a{};
        a[3] = make_sin(eps);
        a[4] = make_cos(eps);
        return a;
      }
      return r;
    case 4:
      if (j == 1) {
        r[3] = -kGamma * eps;
        return r;
      }
      if (j == 3) {
        r[4] = eps;
        return r;
      }
      return r;
    case 5:
      if (j == 1) {
        r[4] = -kGamma * eps;
        return r;
      }
      if (j == 3) {
        r[3] = -eps;
        return r;
      }
      return r;
    default:
      throw DomainError("adjoint table index out of range");
  }
}

Mat5 adjoint_transform_matrix(const std::array<Expr, 5>& eps) {
  auto unit = Mat5::identity;
  Mat5 m1 = unit(), m2 = unit(), m3 = unit(), m4 = unit(), m5 = unit();
  m1.m[1][1] = make_exp(eps[0]);
  m1.m[3][3] = make_exp(kGamma * eps[0]);
  m1.m[4][4] = make_exp(kGamma * eps[0]);
  m2.m[0][1] = -eps[1];
  m3.m[3][3] = make_cos(eps[2]);
  m3.m[3][4] = -make_sin(eps[2]);
  m3.m[4][3] = make_sin(eps[2]);
  m3.m[4][4] = make_cos(eps[2]);
  m4.m[0][3] = -kGamma * eps[3];
  m4.m[2][4] = eps[3];
  m5.m[0][4] = -kGamma * eps[4];
  m5.m[2][3] = -eps[4];
  return m5 * m4 * m3 * m2 * m1;
}

Mat5 adjoint_transform_matrix_transcribed(const std::array<Expr, 5>& eps) {
  Expr s1 = eps[3] * make_cos(eps[2]) + eps[4] * make_sin(eps[2]);
  Expr s2 = eps[3] * make_sin(eps[2]) - eps[4] * make_cos(eps[2]);
  Expr e1 = make_exp(eps[0]);
  Expr eg = make_exp(kGamma * eps[0]);
  Mat5 r = Mat5::identity();
  r.m[0][1] = -eps[1] * e1;
  r.m[0][3] = -kGamma * s1 * eg;
  r.m[0][4] = kGamma * s2 * eg;
  r.m[1][1] = e1;
  r.m[2][3] = s2 * eg;
  r.m[2][4] = s1 * eg;
  r.m[3][3] = eg * make_cos(eps[2]);
  r.m[3][4] = -eg * make_sin(eps[2]);
  r.m[4][3] = eg * make_sin(eps[2]);
  r.m[4][4] = eg * make_cos(eps[2]);
  return r;
}

AlgebraElement apply_adjoint_matrix(const AlgebraElement& a, const Mat5& m) {
  AlgebraElement r{};
  for (int j = 0; j < 5; ++j) {
    Expr acc;
    for (int i = 0; i < 5; ++i) acc += a[i] * m.m[i][j];
    r[j] = acc;
  }
  return r;
}

InvariantValues invariant_values(const std::array<Rational, 5>& alpha) {
  InvariantValues v;
  AlgebraElement a = element(alpha);
  v.K = killing_form(a, a);
  v.M = alpha[0];
  v.N = alpha[2];
  auto nz = [](const Rational& r) { return r != 0; };
  v.P = (nz(alpha[0]) || nz(alpha[1]) || nz(alpha[2])) ? 1 : 0;
  v.Q = (nz(alpha[0]) || nz(alpha[2]) || nz(alpha[3]) || nz(alpha[4])) ? 1 : 0;
  v.R = (!nz(alpha[0]) && !nz(alpha[2]) && !nz(alpha[4])) ? sgn(alpha[3]) : 0;
  v.S = !nz(alpha[0]) ? sgn(alpha[1]) : 0;
  v.T = (!nz(alpha[0]) && !nz(alpha[3]) && !nz(alpha[2])) ? sgn(alpha[4]) : 0;
  return v;
}

}  // namespace popsym::liealg
