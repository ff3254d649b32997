#include <doctest.h>

#include <cmath>
#include <random>

#include "solutions/solutions.hpp"
#include "symexpr/eval.hpp"

using namespace popsym;
using namespace popsym::symexpr;
using namespace popsym::solutions;

namespace {
Expr P(const char* n) { return Expr::param(n); }
}

TEST_CASE("pde residual basics") {
  CHECK(substitute_param(pde_residual(Expr()), "h", Expr()).is_zero());
  CHECK_THROWS_AS(pde_residual(Expr::jet(JetBase::Phi, 1, 0, 0)), popsym::DomainError);
}

TEST_CASE("paraboloid family solves at h = 0") {
  Expr res = substitute_param(pde_residual(family(FamilyId::S1).phi), "h", Expr());
  CHECK(is_zero(res) == ZeroVerdict::Zero);
}

TEST_CASE("plane family residual is exactly the source term") {
  const auto& f = family(FamilyId::S3);
  Expr res = pde_residual(f.phi);
  Expr source = P("h") * make_pow(f.phi, Expr::theta());
  CHECK(is_zero(res - source, f.constraints) == ZeroVerdict::Zero);
  CHECK(is_zero(substitute_param(res, "h", Expr()), f.constraints) == ZeroVerdict::Zero);
}

TEST_CASE("verify_family verdicts") {
  for (FamilyId id : {FamilyId::S1, FamilyId::S2, FamilyId::S3, FamilyId::S4, FamilyId::S5}) {
    INFO("family ", family(id).name);
    auto rep = verify_family(id);
    CHECK(rep.verdict == ZeroVerdict::Zero);
    CHECK(!rep.via_reduction);
    REQUIRE(rep.numeric_max.has_value());
    CHECK(*rep.numeric_max < 1e-9);
  }
}

TEST_CASE("S6 verifies through its reduction chain and skips numerics") {
  auto rep = verify_family(FamilyId::S6);
  CHECK(rep.via_reduction);
  CHECK(rep.verdict == ZeroVerdict::Zero);
  CHECK(rep.numeric_skipped);
  CHECK(rep.detail.find("nonvanishing") != std::string::npos);
}

TEST_CASE("reduced ODE registry") {
  // the two dilation chains display the same second reduction
  CHECK(reduced_ode(ReductionCase::R513).residual == reduced_ode(ReductionCase::R511).residual);
  CHECK(reduced_ode(ReductionCase::R522).residual == reduced_ode(ReductionCase::R511).residual);
  // transcription spot checks
  Expr r512 = reduced_ode(ReductionCase::R512).residual;
  Expr want = -P("h") * make_pow(P("G"), Expr::theta()) +
              Expr(8) * (P("lambda") * P("G'") * P("G'") +
                         P("G") * (P("G'") + P("lambda") * P("G''")));
  CHECK(r512 == want);
}

TEST_CASE("displayed ODE solutions satisfy their ODEs") {
  // -lambda/16 solves the h = 0 dilation ODE exactly
  Expr res = ode_residual(reduced_ode(ReductionCase::R511H0),
                          *displayed_ode_solution(ReductionCase::R511H0));
  CHECK(res.is_zero());
  // the radial power law solves the rotation ODE for symbolic h, theta
  Expr res512 = ode_residual(reduced_ode(ReductionCase::R512),
                             *displayed_ode_solution(ReductionCase::R512));
  ConstraintSet cs;
  cs.positive_params = {"lambda"};
  CHECK(is_zero(res512, cs) == ZeroVerdict::Zero);
  Expr res521 = ode_residual(reduced_ode(ReductionCase::R521),
                             *displayed_ode_solution(ReductionCase::R521));
  CHECK(is_zero(res521, cs) == ZeroVerdict::Zero);
  // the linear profile of the remaining translation chain
  Expr res514 = ode_residual(reduced_ode(ReductionCase::R514),
                             *displayed_ode_solution(ReductionCase::R514));
  Expr g514 = *displayed_ode_solution(ReductionCase::R514);
  Expr want514 = -P("alpha2") * P("h") * make_pow(g514, Expr::theta());
  ConstraintSet cs2;
  cs2.nonzero_params = {"alpha2", "d2"};
  cs2.positive_params = {"lambda"};
  CHECK(is_zero(res514 - want514, cs2) == ZeroVerdict::Zero);
}

TEST_CASE("second dilation chain: linear G cancels everything but the source") {
  ReducedODE ode = reduced_ode(ReductionCase::R523);
  Expr g = *displayed_ode_solution(ReductionCase::R523);
  Expr res = ode_residual(ode, g);
  Expr want = -P("h") * make_pow(g, Expr::theta());
  CHECK(res == want);
  // vanishes exactly when h = 0
  CHECK(substitute_param(res, "h", Expr()).is_zero());
}

TEST_CASE("similarity maps: displayed forms") {
  SimilarityMap m = similarity_map(ReductionCase::R514);
  CHECK(m.X_expr == Expr::x() - P("alpha4") * Expr::t() / P("alpha2"));
  CHECK(m.Y_expr == Expr::y() - P("alpha5") * Expr::t() / P("alpha2"));
  CHECK(m.prefactor == Expr(1));
  CHECK(m.lambda_kind == LambdaKind::Linear);
  // rotation map at t = 0 degenerates to the axis swap
  SimilarityMap r = similarity_map(ReductionCase::R512);
  CHECK(substitute(r.X_expr, Atom::var(Space::T), Expr()) == Expr::y());
  CHECK(substitute(r.Y_expr, Atom::var(Space::T), Expr()) == Expr::x());
}

TEST_CASE("reduction chains are consistent where printed correctly") {
  for (ReductionCase c : {ReductionCase::R511, ReductionCase::R512, ReductionCase::R513,
                          ReductionCase::R514, ReductionCase::R521}) {
    INFO("case ", to_string(c));
    auto rc = check_reduction(c);
    CHECK(rc.first == ZeroVerdict::Zero);
    CHECK(rc.direct == ZeroVerdict::Zero);
  }
}

TEST_CASE("second rotation-dilation chain has one typo'd displayed term") {
  auto rc = check_reduction(ReductionCase::R522);
  // the map and the displayed ODE are mutually consistent ...
  CHECK(rc.direct == ZeroVerdict::Zero);
  // ... but the displayed intermediate PDE's F-coefficient is off by 3/(theta-1)
  CHECK(rc.first == ZeroVerdict::NonZero);
  Expr tau = Expr(RatFunc(ThetaPoly(Rational(1)), ThetaPoly(std::vector<Rational>{-1, 1})));
  ConstraintSet cs;
  cs.nonzero_params = {"c1"};
  CHECK(is_zero(rc.first_difference - Expr(-3) * tau * P("F"), cs) == ZeroVerdict::Zero);
}

TEST_CASE("final dilation chain display is inconsistent with its own map") {
  auto rc = check_reduction(ReductionCase::R523);
  CHECK(rc.first == ZeroVerdict::NonZero);
  CHECK(rc.direct == ZeroVerdict::NonZero);
}

TEST_CASE("group actions on the paraboloid") {
  Expr s1 = family(FamilyId::S1).phi;
  Expr eps = P("eps");
  Expr shifted = apply_group(4, eps, s1);
  Expr xm = Expr::x() - eps;
  CHECK(shifted == -(xm * xm + Expr::y() * Expr::y()) / (Expr(16) * Expr::t()));
  Expr timed = apply_group(2, eps, s1);
  CHECK(timed == -(Expr::x() * Expr::x() + Expr::y() * Expr::y()) /
                     (Expr(16) * (Expr::t() - eps)));
}

TEST_CASE("dilated radial solution still solves") {
  Expr s2 = family(FamilyId::S2).phi;
  Expr moved = apply_group(1, Expr(Rational(3, 10)), s2);
  Expr res = pde_residual(moved);
  CHECK(is_zero(res) == ZeroVerdict::Zero);
}

TEST_CASE("every admissible family-group combination still solves") {
  Expr eps = P("eps");
  for (FamilyId id : {FamilyId::S1, FamilyId::S2, FamilyId::S3, FamilyId::S4, FamilyId::S5}) {
    const auto& f = family(id);
    for (int g = 1; g <= 5; ++g) {
      INFO("family ", f.name, " group ", g);
      Expr moved = apply_group(g, eps, f.phi);
      Expr res = pde_residual(moved);
      if (f.requires_h_zero) res = substitute_param(res, "h", Expr());
      CHECK(is_zero(res, f.constraints) == ZeroVerdict::Zero);
    }
  }
}

TEST_CASE("group law: translations and dilations compose additively") {
  Expr s1 = family(FamilyId::S1).phi;
  Expr e1 = P("eps1"), e2 = P("eps2");
  for (int g : {1, 2, 4, 5}) {
    INFO("group ", g);
    Expr twice = apply_group(g, e1, apply_group(g, e2, s1));
    Expr once = apply_group(g, e1 + e2, s1);
    CHECK(is_zero(twice - once) == ZeroVerdict::Zero);
  }
}

TEST_CASE("group law: rotations compose angles") {
  Expr s4 = family(FamilyId::S4).phi;
  Expr twice = apply_group(3, Expr(Rational(3, 10)), apply_group(3, Expr(Rational(2, 5)), s4));
  Expr once = apply_group(3, Expr(Rational(7, 10)), s4);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.6, 2.4);
  for (int i = 0; i < 24; ++i) {
    PointAssignment at;
    at.set_theta(Rational(1, 2))
        .set_var(Space::X, U(rng))
        .set_var(Space::Y, U(rng))
        .set_var(Space::T, U(rng))
        .set_param("h", 2.0)
        .set_param("c3", 1.0)
        .set_param("c4", U(rng))
        .set_param("c5", U(rng));
    double a = eval_numeric(twice, at);
    double b = eval_numeric(once, at);
    CHECK(std::abs(a - b) <= 1e-12 * (1 + std::abs(b)));
  }
}
