#include "conslaw/conslaw.hpp"

#include "model/pde.hpp"

namespace popsym::conslaw {

using namespace symexpr;

namespace {
Expr P(const char* n) { return Expr::param(n); }
Expr phi_jet(int nx, int ny, int nt) { return Expr::jet(JetBase::Phi, nx, ny, nt); }
Atom phi_atom(int nx, int ny, int nt) { return Atom::jet(JetBase::Phi, JetIndex(nx, ny, nt)); }
}  // namespace

Expr paper_multiplier() {
  return (P("c1") * Expr::y() + P("c2")) * Expr::x() + P("c3") * Expr::y() + P("c4");
}

Expr formal_lagrangian(const Expr& psi) { return psi * model::delta(); }

Expr euler_lagrange(const Expr& L) {
  for (const Atom& j : collect_jets(L))
    if (j.jet_base() == JetBase::Phi && j.jet_index().order() > 2)
      throw JetOrderError("euler_lagrange expects a second-order Lagrangian");
  auto Dx = [](const Expr& e) { return total_derivative(e, Space::X); };
  auto Dy = [](const Expr& e) { return total_derivative(e, Space::Y); };
  auto Dt = [](const Expr& e) { return total_derivative(e, Space::T); };
  Expr r = differentiate(L, phi_atom(0, 0, 0));
  r -= Dt(differentiate(L, phi_atom(0, 0, 1)));
  r -= Dx(differentiate(L, phi_atom(1, 0, 0)));
  r -= Dy(differentiate(L, phi_atom(0, 1, 0)));
  r += Dx(Dx(differentiate(L, phi_atom(2, 0, 0))));
  r += Dx(Dy(differentiate(L, phi_atom(1, 1, 0))));
  r += Dy(Dy(differentiate(L, phi_atom(0, 2, 0))));
  return r;
}

Expr adjoint_expression() { return euler_lagrange(Expr::psi() * model::delta()); }

Expr adjoint_expression_transcribed() {
  return P("h") * Expr::theta() * make_pow(Expr::phi(), Expr::theta() - Expr(1)) * Expr::psi() -
         Expr(2) * Expr::phi() * Expr::jet(JetBase::Psi, 2, 0, 0) -
         Expr(2) * Expr::phi() * Expr::jet(JetBase::Psi, 0, 2, 0) -
         Expr::jet(JetBase::Psi, 0, 0, 1);
}

Expr self_adjointness_residual(const Expr& psi) {
  Expr S = adjoint_expression();
  // substitute total-derivative images of psi for every psi jet present
  std::vector<std::pair<Atom, Expr>> subs;
  for (const Atom& j : collect_jets(S)) {
    if (j.jet_base() != JetBase::Psi) continue;
    Expr img = psi;
    const JetIndex& ix = j.jet_index();
    for (int k = 0; k < ix.nx; ++k) img = total_derivative(img, Space::X);
    for (int k = 0; k < ix.ny; ++k) img = total_derivative(img, Space::Y);
    for (int k = 0; k < ix.nt; ++k) img = total_derivative(img, Space::T);
    subs.emplace_back(j, img);
  }
  Expr substituted = substitute_many(S, subs);
  Expr delta1 = -differentiate(psi, phi_atom(0, 0, 0));
  return substituted - delta1 * model::delta();
}

ConservedVector conserved_vector(const liealg::VectorField& v, const Expr& psi) {
  Expr L = formal_lagrangian(psi);
  Expr w = v.xi4 - v.xi1 * phi_jet(1, 0, 0) - v.xi2 * phi_jet(0, 1, 0) -
           v.xi3 * phi_jet(0, 0, 1);
  auto Dx = [](const Expr& e) { return total_derivative(e, Space::X); };
  auto Dy = [](const Expr& e) { return total_derivative(e, Space::Y); };
  Expr dL_dpx = differentiate(L, phi_atom(1, 0, 0));
  Expr dL_dpy = differentiate(L, phi_atom(0, 1, 0));
  Expr dL_dpt = differentiate(L, phi_atom(0, 0, 1));
  Expr dL_dpxx = differentiate(L, phi_atom(2, 0, 0));
  Expr dL_dpyy = differentiate(L, phi_atom(0, 2, 0));
  ConservedVector cv;
  cv.eta_x = v.xi1 * L + w * dL_dpx - w * Dx(dL_dpxx) + dL_dpxx * Dx(w);
  cv.eta_y = v.xi2 * L + w * dL_dpy - w * Dy(dL_dpyy) + dL_dpyy * Dy(w);
  cv.eta_t = v.xi3 * L + w * dL_dpt;
  cv.source = "constructed";
  return cv;
}

Expr divergence(const ConservedVector& cv) {
  return total_derivative(cv.eta_x, Space::X) + total_derivative(cv.eta_y, Space::Y) +
         total_derivative(cv.eta_t, Space::T);
}

Expr onshell_divergence(const ConservedVector& cv) {
  return model::reduce_onshell(divergence(cv));
}

std::string to_string(ComponentVerdict v) {
  switch (v) {
    case ComponentVerdict::Identical: return "identical";
    case ComponentVerdict::TriviallyEquivalent: return "trivially-equivalent";
    default: return "mismatch";
  }
}

namespace {
ComponentComparison compare_component(const Expr& a, const Expr& b) {
  ComponentComparison c;
  c.raw_difference = a - b;
  if (c.raw_difference.is_zero()) {
    c.onshell_difference = Expr();
    c.verdict = ComponentVerdict::Identical;
    return c;
  }
  c.onshell_difference = model::reduce_onshell(c.raw_difference);
  c.verdict = symexpr::is_zero(c.onshell_difference) == ZeroVerdict::Zero
                  ? ComponentVerdict::TriviallyEquivalent
                  : ComponentVerdict::Mismatch;
  return c;
}
}  // namespace

VectorComparison compare_vectors(const ConservedVector& a, const ConservedVector& b) {
  return {compare_component(a.eta_x, b.eta_x), compare_component(a.eta_y, b.eta_y),
          compare_component(a.eta_t, b.eta_t)};
}

PotentialSystem potential_system(int i) {
  ConservedVector e = printed_eta(i);
  PotentialSystem p;
  p.generator = i;
  p.lhs = {"J3_x - J2_y", "J1_y - J3_t", "J2_t - J1_x"};
  p.rhs = {e.eta_t, e.eta_x, e.eta_y};
  p.gauges = {
      {"divergence (Coulomb)", "J1_x + J2_y + J3_z = 0"},
      {"spatial", "J_i = 0, i = 1,2,3"},
      {"Poincare", "x J1 + y J2 + z J3 = 0"},
      {"Lorentz", "J1_t - J2_x - J3_y = 0"},
      {"Cronstrom", "t J1 - x J2 - y J3 = 0"},
  };
  return p;
}

}  // namespace popsym::conslaw
