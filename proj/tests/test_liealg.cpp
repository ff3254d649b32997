#include <doctest.h>

#include <cmath>
#include <random>

#include "liealg/classify.hpp"
#include "liealg/liealg.hpp"
#include "model/pde.hpp"
#include "symexpr/eval.hpp"
#include "symexpr/zero.hpp"

using namespace popsym;
using namespace popsym::symexpr;
using namespace popsym::liealg;

namespace {
const Expr kGamma = Expr::param("gamma");
Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}
}

TEST_CASE("standard generators match the published list") {
  auto g = standard_generators();
  CHECK(g[1].xi1.is_zero());
  CHECK(g[1].xi3 == Expr(1));              // X2 = d/dt
  CHECK(g[2].xi1 == Expr::y());            // X3 = y d/dx - x d/dy
  CHECK(g[2].xi2 == -Expr::x());
  CHECK(g[3].xi1 == Expr(1));              // X4 = d/dx
  CHECK(g[4].xi2 == Expr(1));              // X5 = d/dy
  CHECK(g[0].xi4 == -Expr::param("tau") * Expr::phi());
  // coefficients polynomial in x,y,t and at most linear in phi
  for (const auto& v : g)
    for (const Expr* c : {&v.xi1, &v.xi2, &v.xi3, &v.xi4}) {
      Atom phi = Atom::jet(JetBase::Phi, JetIndex());
      CHECK(differentiate(differentiate(*c, phi), phi).is_zero());
    }
}

TEST_CASE("commutation table reproduced entry for entry") {
  auto gens = standard_generators();
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      auto computed = expand_in_basis(commutator(gens[i - 1], gens[j - 1]));
      auto expected = commutation_table_entry(i, j);
      for (int k = 0; k < 5; ++k) {
        INFO("entry [", i, ",", j, "] coordinate ", k + 1);
        CHECK(computed[k] == expected[k]);
      }
    }
}

TEST_CASE("commutator spot values") {
  auto gens = standard_generators();
  auto c12 = expand_in_basis(commutator(gens[0], gens[1]));
  CHECK(c12[1] == Expr(-1));  // [X1,X2] = -X2
  auto c34 = expand_in_basis(commutator(gens[2], gens[3]));
  CHECK(c34[4] == Expr(1));  // [X3,X4] = X5
  auto c44 = commutator(gens[3], gens[3]);
  CHECK(c44.xi1.is_zero());
  CHECK(c44.xi2.is_zero());
}

TEST_CASE("structure constants: antisymmetry and Jacobi") {
  StructureConstants sc = structure_constants();
  CHECK(sc.c[0][3][3] == -kGamma);  // c[1][4][4] = -gamma
  CHECK(sc.c[4][2][3] == Expr(1));  // [X5,X3] = X4
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) CHECK(sc.c[i][j][k] == -sc.c[j][i][k]);
  // Jacobi on the fields themselves
  auto gens = standard_generators();
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (int k = j + 1; k < 5; ++k) {
        VectorField s1 = commutator(gens[i], commutator(gens[j], gens[k]));
        VectorField s2 = commutator(gens[j], commutator(gens[k], gens[i]));
        VectorField s3 = commutator(gens[k], commutator(gens[i], gens[j]));
        CHECK((s1.xi1 + s2.xi1 + s3.xi1).is_zero());
        CHECK((s1.xi2 + s2.xi2 + s3.xi2).is_zero());
        CHECK((s1.xi3 + s2.xi3 + s3.xi3).is_zero());
        CHECK((s1.xi4 + s2.xi4 + s3.xi4).is_zero());
      }
}

TEST_CASE("prolongation of constant fields vanishes") {
  for (int i : {2, 4, 5}) {
    Prolongation p = prolong2(standard_generator(i));
    CHECK(p.xi4_x.is_zero());
    CHECK(p.xi4_y.is_zero());
    CHECK(p.xi4_t.is_zero());
    CHECK(p.xi4_xx.is_zero());
    CHECK(p.xi4_yy.is_zero());
  }
}

TEST_CASE("prolongation of the rotation") {
  Prolongation p = prolong2(standard_generator(3));
  CHECK(p.xi4_x == Expr::jet(JetBase::Phi, 0, 1, 0));   // phi_y
  CHECK(p.xi4_y == -Expr::jet(JetBase::Phi, 1, 0, 0));  // -phi_x
}

TEST_CASE("rotation prolongation agrees with finite-difference transport") {
  // For the rotation field, D_x(omega)(u) evaluated on a test function u must
  // equal d/deps of (u composed with the inverse flow)_x at eps = 0.
  VectorField v = standard_generator(3);
  Prolongation p = prolong2(v);
  auto ux = [](double x, double y) { return std::cos(x) * std::cos(2 * y) + 0.3 * y; };
  auto uy = [](double x, double y) { return -2 * std::sin(x) * std::sin(2 * y) + 0.3 * x; };
  auto uxx = [](double x, double y) { return -std::sin(x) * std::cos(2 * y); };
  auto uxy = [](double x, double y) { return -2 * std::cos(x) * std::sin(2 * y) + 0.3; };
  double x = 0.7, y = -0.4;
  // transported derivative: g_eps(x,y) = u(x cos e - y sin e, x sin e + y cos e)
  auto gx = [&](double e) {
    double cx = std::cos(e), sx = std::sin(e);
    double X = x * cx - y * sx, Y = x * sx + y * cx;
    return ux(X, Y) * cx + uy(X, Y) * sx;
  };
  double h = 1e-6;
  double fd = (gx(h) - gx(-h)) / (2 * h);
  // D_x(omega) = xi4_x - xi1 phi_xx - xi2 phi_xy with xi1 = y, xi2 = -x
  PointAssignment at;
  at.set_theta(0.5).set_var(Space::X, x).set_var(Space::Y, y).set_var(Space::T, 1.0);
  at.set(Atom::jet(JetBase::Phi, JetIndex(0, 1, 0)), uy(x, y));
  at.set(Atom::jet(JetBase::Phi, JetIndex(1, 0, 0)), ux(x, y));
  Expr dxo = p.xi4_x - v.xi1 * Expr::jet(JetBase::Phi, 2, 0, 0) -
             v.xi2 * Expr::jet(JetBase::Phi, 1, 1, 0);
  at.set(Atom::jet(JetBase::Phi, JetIndex(2, 0, 0)), uxx(x, y));
  at.set(Atom::jet(JetBase::Phi, JetIndex(1, 1, 0)), uxy(x, y));
  double an = eval_numeric(dxo, at);
  CHECK(std::abs(fd - an) < 1e-6 * (1 + std::abs(an)));
}

TEST_CASE("invariance residual vanishes for every generator, h and theta symbolic") {
  for (int i = 1; i <= 5; ++i) {
    INFO("generator ", i);
    Expr r = invariance_residual(standard_generator(i));
    CHECK(is_zero(r) == ZeroVerdict::Zero);
  }
}

TEST_CASE("a bare x-dilation is not a symmetry") {
  VectorField v{Expr::x(), Expr(), Expr(), Expr()};
  Expr r = invariance_residual(v);
  CHECK(is_zero(r) == ZeroVerdict::NonZero);
}

TEST_CASE("ad matrix matches the displayed endomorphism") {
  AlgebraElement a = generic_element();
  Mat5 m = ad_matrix(a);
  Expr a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a5 = a[4];
  Expr want[5][5] = {
      {Expr(), Expr(), Expr(), Expr(), Expr()},
      {-a2, a1, Expr(), Expr(), Expr()},
      {Expr(), Expr(), Expr(), Expr(), Expr()},
      {-kGamma * a4, Expr(), -a5, kGamma * a1, a3},
      {-kGamma * a5, Expr(), a4, -a3, kGamma * a1}};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      INFO("entry (", i + 1, ",", j + 1, ")");
      CHECK(m.m[i][j] == want[i][j]);
    }
  CHECK(ad_matrix(AlgebraElement{}).m[3][0].is_zero());
}

TEST_CASE("killing form closed form") {
  // trace(ad(X1) ad(X1)) = 2 gamma^2 + 1
  Expr k11 = killing_form(basis_element(1), basis_element(1));
  CHECK(k11 == Expr(2) * kGamma * kGamma + Expr(1));
  // K(X1+X3, X1+X3) = 2 gamma^2 - 1
  AlgebraElement e13{Expr(1), Expr(), Expr(1), Expr(), Expr()};
  CHECK(killing_form(e13, e13) == Expr(2) * kGamma * kGamma - Expr(1));
  CHECK(killing_form(basis_element(3), basis_element(3)) == Expr(-2));
  CHECK(killing_form(basis_element(4), basis_element(4)).is_zero());
  // symbolic identity against (2 gamma^2 + 1) a1^2 - 2 a3^2
  AlgebraElement a = generic_element();
  Expr k = killing_form(a, a);
  Expr closed = (Expr(2) * kGamma * kGamma + Expr(1)) * a[0] * a[0] - Expr(2) * a[2] * a[2];
  CHECK((k - closed).is_zero());
}

TEST_CASE("adjoint action closed forms") {
  Expr eps = Expr::param("eps");
  // Ad(exp(eps X2)) X1 = X1 - eps X2
  AlgebraElement r = adjoint_action(2, eps, basis_element(1));
  CHECK(r[0] == Expr(1));
  CHECK(r[1] == -eps);
  // Ad(exp(eps X1)) X4 = e^(gamma eps) X4
  r = adjoint_action(1, eps, basis_element(4));
  CHECK(r[3] == make_exp(kGamma * eps));
  // identity at eps = 0
  AlgebraElement a = generic_element();
  for (int i = 1; i <= 5; ++i) {
    auto id = adjoint_action(i, Expr(), a);
    for (int k = 0; k < 5; ++k) CHECK(id[k] == a[k]);
  }
}

TEST_CASE("adjoint representation table (generator level)") {
  Expr eps = Expr::param("eps");
  Expr ee = make_exp(eps), eg = make_exp(kGamma * eps);
  Expr ce = make_cos(eps), se = make_sin(eps);
  auto X = [](int i) { return basis_element(i); };
  // transcribed rows: entry(i,j) = Ad(exp(eps X_i)) X_j
  std::array<std::array<AlgebraElement, 5>, 5> want;
  for (int j = 1; j <= 5; ++j) want[0][j - 1] = X(j);
  want[0][1] = {Expr(), ee, Expr(), Expr(), Expr()};
  want[0][3] = {Expr(), Expr(), Expr(), eg, Expr()};
  want[0][4] = {Expr(), Expr(), Expr(), Expr(), eg};
  for (int j = 1; j <= 5; ++j) want[1][j - 1] = X(j);
  want[1][0] = {Expr(1), -eps, Expr(), Expr(), Expr()};
  for (int j = 1; j <= 5; ++j) want[2][j - 1] = X(j);
  want[2][3] = {Expr(), Expr(), Expr(), ce, -se};
  want[2][4] = {Expr(), Expr(), Expr(), se, ce};
  for (int j = 1; j <= 5; ++j) want[3][j - 1] = X(j);
  want[3][0] = {Expr(1), Expr(), Expr(), -kGamma * eps, Expr()};
  want[3][2] = {Expr(), Expr(), Expr(1), Expr(), eps};
  for (int j = 1; j <= 5; ++j) want[4][j - 1] = X(j);
  want[4][0] = {Expr(1), Expr(), Expr(), Expr(), -kGamma * eps};
  want[4][2] = {Expr(), Expr(), Expr(1), -eps, Expr()};

  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      AlgebraElement got = adjoint_action(i, eps, X(j));
      for (int k = 0; k < 5; ++k) {
        INFO("row ", i, " col ", j, " coord ", k + 1);
        CHECK(got[k] == want[i - 1][j - 1][k]);
      }
    }
}

TEST_CASE("closed forms agree with the truncated series") {
  // at eps = 0.1, theta = 0.4: polynomial rows exact to 1e-10, transcendental
  // rows within the O(eps^3) bound 5e-4
  double theta = 0.4;
  double gamma = (theta - 2) / (2 * (theta - 1));
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-1, 1);
  std::uniform_int_distribution<int> den(1, 5);
  for (int rep = 0; rep < 20; ++rep) {
    std::array<Rational, 5> al{};  // unit-box elements, matching the table's row scale
    for (auto& a : al) a = frac(num(rng), den(rng));
    AlgebraElement a = element(al);
    for (int i = 1; i <= 5; ++i) {
      AlgebraElement closed = adjoint_action(i, Expr(Rational(1, 10)), a);
      AlgebraElement series = adjoint_series2(i, Expr(Rational(1, 10)), a);
      double tol = (i == 1 || i == 3) ? 5e-4 : 1e-10;
      for (int k = 0; k < 5; ++k) {
        PointAssignment at;
        at.set_theta(Rational(4, 10)).set_param("gamma", gamma);
        double c = eval_numeric(expand_defined_params(closed[k]), at);
        double s = eval_numeric(expand_defined_params(series[k]), at);
        CHECK(std::abs(c - s) <= tol);
      }
    }
  }
}

TEST_CASE("general adjoint matrix equals the displayed product") {
  std::array<Expr, 5> eps = {Expr::param("eps1"), Expr::param("eps2"), Expr::param("eps3"),
                             Expr::param("eps4"), Expr::param("eps5")};
  Mat5 got = adjoint_transform_matrix(eps);
  Mat5 want = adjoint_transform_matrix_transcribed(eps);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      INFO("entry (", i + 1, ",", j + 1, ")");
      CHECK((got.m[i][j] - want.m[i][j]).is_zero());
    }
  // spot value: entry (1,2) = -eps2 e^(eps1)
  CHECK(got.m[0][1] == -eps[1] * make_exp(eps[0]));
  // all eps = 0 -> identity
  Mat5 id = adjoint_transform_matrix({Expr(), Expr(), Expr(), Expr(), Expr()});
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(id.m[i][j] == Expr(i == j ? 1 : 0));
}

TEST_CASE("matrix row action equals composing the five adjoint actions") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> num(-5, 5);
  for (int rep = 0; rep < 10; ++rep) {
    std::array<Rational, 5> al{}, ep{};
    for (auto& a : al) a = frac(num(rng), 1 + std::abs(num(rng)));
    for (auto& e : ep) e = frac(num(rng), 1 + std::abs(num(rng)));
    AlgebraElement a = element(al);
    std::array<Expr, 5> eps;
    for (int i = 0; i < 5; ++i) eps[i] = Expr(ep[i]);
    AlgebraElement via_matrix = apply_adjoint_matrix(a, adjoint_transform_matrix(eps));
    AlgebraElement chain = a;
    for (int i = 5; i >= 1; --i) chain = adjoint_action(i, eps[i - 1], chain);
    for (int k = 0; k < 5; ++k) CHECK((via_matrix[k] - chain[k]).is_zero());
  }
}

TEST_CASE("invariant values on published rows") {
  auto v = invariant_values({0, 1, 1, 0, 0});  // X2 + X3
  CHECK(v.K == Expr(-2));
  CHECK(v.M == 0);
  CHECK(v.N == 1);
  CHECK(v.P == 1);
  CHECK(v.Q == 1);
  CHECK(v.R == 0);
  CHECK(v.S == 1);
  CHECK(v.T == 0);
  auto w = invariant_values({0, 0, 0, Rational(7, 2), 0});  // a4 X4, a4 > 0
  CHECK(w.K.is_zero());
  CHECK(w.Q == 1);
  CHECK(w.P == 0);
  CHECK(w.R == 1);
  auto wn = invariant_values({0, 0, 0, Rational(-3), 0});
  CHECK(wn.R == -1);
  auto z = invariant_values({0, 0, 0, 0, 0});
  CHECK(z.K.is_zero());
  CHECK(z.P == 0);
  CHECK(z.Q == 0);
}

TEST_CASE("classification: case 1 worked example") {
  // alpha = (1, 5, 2, 3, -1), theta = 1/2 => gamma = 3/2, k = 2,
  // eps2 = 5, eps4 = (gamma*3 - 2*(-1))/(4 + 9/4) = 6.5/6.25 = 26/25,
  // eps5 = (gamma*(-1) + 2*3)/6.25 = 4.5/6.25 = 18/25
  std::array<Rational, 5> al{1, 5, 2, 3, -1};
  auto r = classify(al, Rational(1, 2));
  CHECK(r.case_id == 1);
  CHECK(r.k == 2);
  CHECK(r.representative == std::array<Rational, 5>{1, 0, 2, 0, 0});
  CHECK(r.eps[1] == Expr(5));
  CHECK(r.eps[3] == Expr(Rational(26, 25)));
  CHECK(r.eps[4] == Expr(Rational(18, 25)));
  CHECK(classify_roundtrip(r, al, Rational(1, 2)));
}

TEST_CASE("classification: case 2 sign normalization") {
  std::array<Rational, 5> al{0, 3, 1, 2, -1};
  auto r = classify(al, Rational(1, 2));
  CHECK(r.case_id == 2);
  CHECK(r.mu1 == 1);
  CHECK(r.representative == std::array<Rational, 5>{0, 1, 1, 0, 0});
  CHECK(classify_roundtrip(r, al, Rational(1, 2)));
  // negative branch
  std::array<Rational, 5> an{0, -3, 1, 0, 0};
  auto rn = classify(an, Rational(1, 2));
  CHECK(rn.mu1 == -1);
  CHECK(classify_roundtrip(rn, an, Rational(1, 2)));
  // X3 alone
  std::array<Rational, 5> a3{0, 0, 1, 0, 0};
  CHECK(classify(a3, Rational(1, 2)).mu1 == 0);
}

TEST_CASE("classification: cases 3 and 4") {
  std::array<Rational, 5> a3{1, 0, 0, 0, 0};
  auto r3 = classify(a3, Rational(1, 2));
  CHECK(r3.case_id == 3);
  CHECK(r3.representative == std::array<Rational, 5>{1, 0, 0, 0, 0});
  std::array<Rational, 5> a4{0, 0, 0, 0, 2};
  auto r4 = classify(a4, Rational(1, 2));
  CHECK(r4.case_id == 4);
  CHECK(r4.representative == a4);
  CHECK(classify_roundtrip(r4, a4, Rational(1, 2)));
  CHECK_THROWS_AS(classify({0, 0, 0, 0, 0}, Rational(1, 2)), popsym::DomainError);
  CHECK_THROWS_AS(classify(a4, Rational(3, 2)), popsym::DomainError);
}

TEST_CASE("classification is idempotent") {
  for (std::array<Rational, 5> al :
       {std::array<Rational, 5>{1, 0, 2, 0, 0}, std::array<Rational, 5>{0, 1, 1, 0, 0},
        std::array<Rational, 5>{0, -1, 1, 0, 0}, std::array<Rational, 5>{1, 0, 0, 0, 0},
        std::array<Rational, 5>{0, 2, 0, 3, -1}}) {
    auto r = classify(al, Rational(1, 2));
    auto r2 = classify(r.representative, Rational(1, 2));
    CHECK(r2.representative == r.representative);
    CHECK(r2.case_id == r.case_id);
  }
}

TEST_CASE("adjoint-orbit invariants are preserved by classification") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> num(-4, 4);
  int checked = 0;
  for (int rep = 0; rep < 120; ++rep) {
    std::array<Rational, 5> al{};
    bool allz = true;
    for (auto& a : al) {
      a = frac(num(rng), 1 + std::abs(num(rng)));
      allz = allz && a == 0;
    }
    if (allz) continue;
    auto r = classify(al, Rational(1, 2));
    std::array<Rational, 5> scaled;
    for (int i = 0; i < 5; ++i) scaled[i] = al[i] * r.scale;
    auto vi = invariant_values(scaled);
    auto vr = invariant_values(r.representative);
    CHECK(vi.K == vr.K);
    CHECK(vi.M == vr.M);
    CHECK(vi.N == vr.N);
    CHECK(vi.P == vr.P);
    CHECK(vi.Q == vr.Q);
    CHECK(vi.R == vr.R);
    CHECK(vi.S == vr.S);
    CHECK(vi.T == vr.T);
    ++checked;
  }
  CHECK(checked > 100);
}
