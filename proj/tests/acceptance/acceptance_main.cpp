// Acceptance runner: one line per criterion, exit 0 only if every criterion
// holds at its stated tolerance.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "../gen.hpp"
#include "conslaw/conslaw.hpp"
#include "liealg/classify.hpp"
#include "liealg/liealg.hpp"
#include "model/pde.hpp"
#include "numgrid/numgrid.hpp"
#include "report/report.hpp"
#include "solutions/solutions.hpp"
#include "suites/suites.hpp"
#include "symexpr/calculus.hpp"
#include "symexpr/eval.hpp"
#include "symexpr/zero.hpp"

using namespace popsym;
using namespace popsym::symexpr;
using popsym::testgen::ExprGen;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void line(int idx, bool ok, const std::string& what, double secs) {
  std::printf("%s  %2d. %s [%.2f s]\n", ok ? "PASS" : "FAIL", idx, what.c_str(), secs);
  if (!ok) ++g_failures;
}

Expr P(const char* n) { return Expr::param(n); }

// 1. commutation, adjoint and invariant tables reproduced exactly, < 5 s
void criterion1() {
  Timer t;
  bool ok = !suites::check_table("commutation").has_failure({});
  ok = ok && !suites::check_table("adjoint").has_failure({});
  ok = ok && !suites::check_table("invariants").has_failure({});
  // coefficient-level rows of the invariant-construction table on a generic
  // element, compared against an independently typed transcription
  Expr eps = P("eps"), g = P("gamma");
  liealg::AlgebraElement a = liealg::generic_element();
  Expr ee = make_exp(eps), eg = make_exp(g * eps), ce = make_cos(eps), se = make_sin(eps);
  liealg::AlgebraElement rows[5] = {
      {a[0], ee * a[1], a[2], eg * a[3], eg * a[4]},
      {a[0], a[1] - eps * a[0], a[2], a[3], a[4]},
      {a[0], a[1], a[2], a[3] * ce + a[4] * se, a[4] * ce - a[3] * se},
      {a[0], a[1], a[2], a[3] - g * eps * a[0], a[4] + eps * a[2]},
      {a[0], a[1], a[2], a[3] - eps * a[2], a[4] - g * eps * a[0]},
  };
  for (int i = 1; i <= 5; ++i) {
    liealg::AlgebraElement got = liealg::adjoint_action(i, eps, a);
    for (int k = 0; k < 5; ++k) ok = ok && got[k] == rows[i - 1][k];
  }
  double secs = t.seconds();
  line(1, ok && secs < 5.0, "table reproduction: 25 + 25 + 12 entries, exact", secs);
}

// 2. Killing form trace identity, symbolic
void criterion2() {
  Timer t;
  Expr g = P("gamma");
  liealg::AlgebraElement a = liealg::generic_element();
  Expr diff = liealg::killing_form(a, a) -
              ((Expr(2) * g * g + Expr(1)) * a[0] * a[0] - Expr(2) * a[2] * a[2]);
  line(2, is_zero(diff) == ZeroVerdict::Zero,
       "killing form equals (2 gamma^2 + 1) a1^2 - 2 a3^2, symbolic", t.seconds());
}

// 3. invariance residual of all five generators, h and theta symbolic, < 30 s
void criterion3() {
  Timer t;
  bool ok = true;
  for (int i = 1; i <= 5; ++i)
    ok = ok &&
         is_zero(liealg::invariance_residual(liealg::standard_generator(i))) == ZeroVerdict::Zero;
  double secs = t.seconds();
  line(3, ok && secs < 30.0, "on-shell invariance of X1..X5, h and theta symbolic", secs);
}

// 4. 1000 random nonzero elements classify into the theorem's list with an
// exact adjoint-matrix replay
void criterion4() {
  Timer t;
  std::mt19937_64 rng(0xC1A551F1ULL);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  const Rational theta(1, 2);
  int done = 0;
  bool ok = true;
  while (done < 1000) {
    std::array<Rational, 5> al{};
    bool allz = true;
    for (auto& v : al) {
      Rational r(num(rng), den(rng));
      r.canonicalize();
      v = r;
      allz = allz && v == 0;
    }
    if (allz) continue;
    ++done;
    auto res = liealg::classify(al, theta);
    // membership in the optimal list
    bool member = false;
    const auto& rep = res.representative;
    switch (res.case_id) {
      case 1:
        member = rep[0] == 1 && rep[1] == 0 && rep[2] != 0 && rep[3] == 0 && rep[4] == 0;
        break;
      case 2:
        member = rep[0] == 0 && (rep[1] == 1 || rep[1] == 0 || rep[1] == -1) && rep[2] == 1 &&
                 rep[3] == 0 && rep[4] == 0;
        break;
      case 3:
        member = rep == std::array<Rational, 5>{1, 0, 0, 0, 0};
        break;
      case 4:
        member = rep[0] == 0 && rep[2] == 0;
        break;
      default:
        member = false;
    }
    ok = ok && member && liealg::classify_roundtrip(res, al, theta);
    if (!ok) break;
  }
  line(4, ok, "optimal-system classification round trip, 1000 random elements, exact",
       t.seconds());
}

// 5. closed-form solution residuals, symbolic and numeric
void criterion5() {
  Timer t;
  bool ok = true;
  using solutions::FamilyId;
  for (FamilyId id :
       {FamilyId::S1, FamilyId::S2, FamilyId::S3, FamilyId::S4, FamilyId::S5}) {
    auto rep = solutions::verify_family(id);
    ok = ok && rep.verdict == ZeroVerdict::Zero;
    ok = ok && rep.numeric_max && *rep.numeric_max < 1e-9;
  }
  auto s6 = solutions::verify_family(FamilyId::S6);
  ok = ok && s6.verdict == ZeroVerdict::Zero && s6.via_reduction && s6.numeric_skipped &&
       !s6.detail.empty();
  line(5, ok,
       "solution residuals: S2,S4 symbolic; S1,S3,S5 at h=0; numerics < 1e-9; S6 via its "
       "reduction with the numeric skip reported",
       t.seconds());
}

// 6. Euler-Lagrange of the formal Lagrangian equals the displayed adjoint
void criterion6() {
  Timer t;
  line(6, conslaw::adjoint_expression() == conslaw::adjoint_expression_transcribed(),
       "euler_lagrange(Psi Delta) equals the displayed adjoint expression", t.seconds());
}

// 7. self-adjointness ledger
void criterion7() {
  Timer t;
  Expr psi = conslaw::paper_multiplier();
  Expr res = conslaw::self_adjointness_residual(psi);
  Expr want = P("h") * Expr::theta() * make_pow(Expr::phi(), Expr::theta() - Expr(1)) * psi;
  bool ok = res == want;
  ok = ok && is_zero(substitute_param(res, "h", Expr())) == ZeroVerdict::Zero;
  // surfaced as a documented discrepancy, not a failure
  suites::Options opts;
  report::Report r = suites::verify_adjoint(opts);
  bool reported = false;
  for (const auto& c : r.checks)
    reported = reported || (c.name == "self-adjointness/multiplier-family" &&
                            c.verdict == report::Verdict::DocumentedDiscrepancy);
  ok = ok && reported && !r.has_failure(report::default_expectations());
  line(7, ok, "self-adjointness residual is h theta phi^(theta-1) Psi; zero at h = 0",
       t.seconds());
}

// 8. conservation at h = 0 and the printed-vector reconciliation
void criterion8() {
  Timer t;
  bool ok = true;
  Expr psi = conslaw::paper_multiplier();
  for (int i = 1; i <= 5; ++i) {
    conslaw::ConservedVector cv =
        conslaw::conserved_vector(liealg::standard_generator(i), psi);
    Expr div0 = substitute_param(conslaw::onshell_divergence(cv), "h", Expr());
    ok = ok && is_zero(div0) == ZeroVerdict::Zero;
    conslaw::VectorComparison c = conslaw::compare_vectors(cv, conslaw::printed_eta(i));
    for (const conslaw::ComponentComparison* cc : {&c.x, &c.y, &c.t}) {
      if (cc->verdict == conslaw::ComponentVerdict::Mismatch)
        ok = ok && !cc->onshell_difference.is_zero();  // exact difference recorded
    }
    // eta^t is at worst a multiple of the equation
    ok = ok && c.t.verdict != conslaw::ComponentVerdict::Mismatch;
  }
  line(8, ok,
       "h = 0 divergences vanish for X1..X5; printed vectors match, are equation "
       "multiples, or carry exact mismatch expressions",
       t.seconds());
}

// 9. numerics: stationarity drift, dt order, dx order
void criterion9() {
  Timer t9;
  bool ok = true;
  std::string note;
  {
    Timer t;
    numgrid::Grid2D g(64, 64, 6.4 / 63, 6.4 / 63, -3.2, -3.2);
    numgrid::SimConfig cfg;
    cfg.steps = 100;
    cfg.h = 2;
    cfg.theta = Rational(1, 2);
    cfg.annulus = {{1.2, 2.8}};
    numgrid::ParamMap p = {{"h", 2.0}};
    numgrid::FieldFn fn = numgrid::make_sampler(solutions::FamilyId::S2, p, cfg.theta);
    numgrid::Field f0 = numgrid::sample(fn, g, 1.0);
    double maxphi = 0;
    for (double v : f0.v) maxphi = std::max(maxphi, std::abs(v));
    double bound = 0.2 * g.dx * g.dx / (8 * maxphi);
    double t1 = 1.0 + cfg.steps * 0.9 * bound;
    auto rep = numgrid::evolve_and_compare(solutions::FamilyId::S2, g, cfg, 1.0, t1, p);
    ok = ok && rep.linf < 1e-3 && t.seconds() < 10.0;
    note = "S2 drift " + std::to_string(rep.linf);
  }
  {
    numgrid::Grid2D g(32, 32, 1.0 / 31, 1.0 / 31, 0.0, 1.5);
    numgrid::ParamMap p = {{"alpha2", 1}, {"alpha4", 1}, {"alpha5", 0}, {"d1", 1}, {"d2", 1}};
    numgrid::SimConfig cfg;
    cfg.h = 0;
    cfg.theta = Rational(1, 2);
    cfg.steps = 2500;
    auto coarse = numgrid::evolve_and_compare(solutions::FamilyId::S3, g, cfg, 0.5, 0.56, p);
    cfg.steps = 5000;
    auto fine = numgrid::evolve_and_compare(solutions::FamilyId::S3, g, cfg, 0.5, 0.56, p);
    double ratio = coarse.linf / fine.linf;
    ok = ok && ratio > 1.6 && ratio < 2.4;
    note += ", dt ratio " + std::to_string(ratio);
  }
  {
    numgrid::FieldFn fn =
        numgrid::make_sampler(solutions::FamilyId::S2, {{"h", 2.0}}, Rational(1, 2));
    numgrid::Grid2D coarse(48, 48, 2.4 / 47, 2.4 / 47, 0.9, 0.9);
    numgrid::Grid2D fine(95, 95, 2.4 / 94, 2.4 / 94, 0.9, 0.9);
    double rc = numgrid::residual_numeric(fn, coarse, 1.0, 2.0, Rational(1, 2));
    double rf = numgrid::residual_numeric(fn, fine, 1.0, 2.0, Rational(1, 2));
    double ratio = rc / rf;
    ok = ok && ratio > 3.4 && ratio < 4.6;
    note += ", dx ratio " + std::to_string(ratio);
  }
  line(9, ok, "numerics: " + note, t9.seconds());
}

// 10. randomized property suites at 10^4 cases, fixed seeds
void criterion10() {
  Timer t;
  bool ok = true;

  {  // normalization idempotence and print/parse round trip on one corpus
    ExprGen g(0xA11CE);
    for (int i = 0; i < 10000 && ok; ++i) {
      Expr e = g.gen_top(3);
      ok = ok && Expr::from_terms(e.terms()) == e;
      ok = ok && parse(e.str()) == e;
    }
  }
  if (ok) {  // derivative vs central finite differences, 10^4 admissible points
    ExprGen g(0xD1FF);
    std::uniform_real_distribution<double> U(0.4, 1.7);
    int done = 0;
    long guard = 0;
    while (done < 10000 && ++guard < 80000 && ok) {
      Expr e = g.gen_top(2);
      Expr d = differentiate(e, Atom::var(Space::X));
      for (int p = 0; p < 4 && done < 10000; ++p) {
        PointAssignment at;
        Rational th(static_cast<long>(300 + g.rng()() % 400), 1000);
        th.canonicalize();
        at.set_theta(th);
        at.set_var(Space::X, U(g.rng()))
            .set_var(Space::Y, U(g.rng()))
            .set_var(Space::T, U(g.rng()));
        at.set_phi(U(g.rng()));
        at.set(Atom::jet(JetBase::Phi, JetIndex(1, 0, 0)), U(g.rng()));
        at.set_param("a", U(g.rng())).set_param("b", U(g.rng()));
        double x = *at.lookup(Atom::var(Space::X));
        double h = 1e-5;
        PointAssignment hi = at, lo = at;
        hi.set_var(Space::X, x + h);
        lo.set_var(Space::X, x - h);
        try {
          double fd = (eval_numeric(e, hi) - eval_numeric(e, lo)) / (2 * h);
          double an = eval_numeric(d, at);
          double scale = 1 + std::abs(an) + eval_term_scale(e, at);
          ok = ok && std::abs(fd - an) <= 1e-6 * scale;
          ++done;
        } catch (const EvalError&) {
          break;
        }
      }
    }
    ok = ok && done == 10000;
  }
  if (ok) {  // Jacobi identity over all generator triples
    auto gens = liealg::standard_generators();
    for (int i = 0; i < 5 && ok; ++i)
      for (int j = i + 1; j < 5 && ok; ++j)
        for (int k = j + 1; k < 5 && ok; ++k) {
          auto s1 = liealg::commutator(gens[i], liealg::commutator(gens[j], gens[k]));
          auto s2 = liealg::commutator(gens[j], liealg::commutator(gens[k], gens[i]));
          auto s3 = liealg::commutator(gens[k], liealg::commutator(gens[i], gens[j]));
          ok = ok && (s1.xi1 + s2.xi1 + s3.xi1).is_zero() &&
               (s1.xi2 + s2.xi2 + s3.xi2).is_zero() &&
               (s1.xi3 + s2.xi3 + s3.xi3).is_zero() && (s1.xi4 + s2.xi4 + s3.xi4).is_zero();
        }
  }
  if (ok) {  // group law: 10^4 randomized composition checks
    ExprGen g(0x6C0);
    Expr s1 = solutions::family(solutions::FamilyId::S1).phi;
    std::uniform_real_distribution<double> U(0.6, 2.4);
    int translations = 0;
    for (int i = 0; i < 8000 && ok; ++i) {
      int which = static_cast<int>(g.rng()() % 4);
      int grp = (which == 0) ? 1 : (which == 1) ? 2 : (which == 2) ? 4 : 5;
      Expr e1(g.coef()), e2(g.coef());
      Expr twice = solutions::apply_group(grp, e1, solutions::apply_group(grp, e2, s1));
      Expr once = solutions::apply_group(grp, e1 + e2, s1);
      ok = ok && is_zero(twice - once) == ZeroVerdict::Zero;
      ++translations;
    }
    // rotations compose angles: numeric agreement at random points
    Expr s4 = solutions::family(solutions::FamilyId::S4).phi;
    for (int i = 0; i < 2000 && ok; ++i) {
      Rational a = g.coef(), b = g.coef();
      Expr twice =
          solutions::apply_group(3, Expr(a), solutions::apply_group(3, Expr(b), s4));
      Expr once = solutions::apply_group(3, Expr(a + b), s4);
      PointAssignment at;
      at.set_theta(Rational(1, 2))
          .set_var(Space::X, U(g.rng()))
          .set_var(Space::Y, U(g.rng()))
          .set_var(Space::T, U(g.rng()))
          .set_param("h", 2.0)
          .set_param("c3", 1.0)
          .set_param("c4", U(g.rng()))
          .set_param("c5", U(g.rng()));
      double va = eval_numeric(twice, at);
      double vb = eval_numeric(once, at);
      ok = ok && std::abs(va - vb) <= 1e-11 * (1 + std::abs(vb));
      if (i == 0 && translations == 0) ok = false;
    }
  }
  line(10, ok,
       "property suites at 10^4 cases: idempotence, round trip, derivative vs FD, "
       "Jacobi, group laws",
       t.seconds());
}

}  // namespace

int main() {
  std::printf("acceptance run (seeded, exact tolerances)\n");
  Timer total;
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("RESULT: %d/10 criteria passed [%.2f s total]\n", 10 - g_failures,
              total.seconds());
  return g_failures == 0 ? 0 : 1;
}
