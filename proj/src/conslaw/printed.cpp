#include "conslaw/conslaw.hpp"

namespace popsym::conslaw {

using namespace symexpr;

// Verbatim transcriptions of the printed conserved-vector components,
// including their apparent typos; compare_vectors adjudicates against the
// constructed vectors and the differences are reported exactly.

namespace {

Expr P(const char* n) { return Expr::param(n); }
Expr jet(int nx, int ny, int nt) { return Expr::jet(JetBase::Phi, nx, ny, nt); }

struct Syms {
  Expr x = Expr::x(), y = Expr::y(), t = Expr::t();
  Expr phi = Expr::phi();
  Expr px = jet(1, 0, 0), py = jet(0, 1, 0), pt = jet(0, 0, 1);
  Expr pxx = jet(2, 0, 0), pxy = jet(1, 1, 0), pyy = jet(0, 2, 0);
  Expr pxt = jet(1, 0, 1), pyt = jet(0, 1, 1);
  Expr c1 = P("c1"), c2 = P("c2"), c3 = P("c3"), c4 = P("c4");
  Expr g = P("gamma"), tau = P("tau");
  Expr psi = paper_multiplier();
};

}  // namespace

ConservedVector printed_eta(int i) {
  Syms s;
  const Expr& F = s.psi;
  ConservedVector v;
  v.source = "printed";
  switch (i) {
    case 1:
      v.eta_x = Expr(2) * s.g * s.x * F * (s.phi * s.pxx + s.px * s.px) +
                Expr(2) * F *
                    (s.t * s.phi * s.pxt + s.g * s.y * s.phi * s.pxy +
                     s.t * s.pt * s.px + s.g * s.y * s.py * s.px +
                     Expr(2) * s.tau * s.phi * s.px) +
                Expr(2) * s.g * (s.c3 * s.y + s.c4) * s.phi * s.px -
                Expr(2) * (s.c1 * s.y + s.c2) *
                    (Expr(2) * s.t * s.phi * s.pt + s.g * s.y * s.phi * s.py +
                     Expr(2) * s.phi * s.phi);
      v.eta_y = Expr(2) * F *
                    (s.g * (s.x * s.phi * s.pxx + s.y * s.py * s.py + s.x * s.py * s.px +
                            s.y * s.phi * s.pxy + s.phi * s.px) +
                     s.t * s.pt * s.py + s.tau * s.phi * s.py + s.t * s.phi * s.pxt +
                     s.tau * s.phi * s.px) -
                Expr(2) * s.phi * (s.c1 * s.x + s.c3) *
                    (s.g * s.y * s.py + s.t * s.pt + s.g * s.x * s.px + s.tau * s.phi);
      v.eta_t = -F * (s.tau * s.phi + s.g * s.x * s.px + s.g * s.y * s.py + s.t * s.pt);
      break;
    case 2:
      v.eta_x = F * (Expr(2) * s.px * s.pt + Expr(2) * s.phi * s.pxt) -
                Expr(2) * (s.c1 * s.y + s.c2) * s.phi;
      v.eta_y = F * (Expr(2) * s.py * s.pt + Expr(2) * s.phi * s.pyt) -
                Expr(2) * (s.c1 * s.x + s.c3) * s.phi;
      v.eta_t = -F * s.pt;
      break;
    case 3:
      v.eta_x = F * (Expr(-2) * s.x * s.phi * s.pxy + Expr(2) * s.y * s.phi * s.pxx +
                     Expr(2) * s.y * s.px * s.px - Expr(2) * s.x * s.px * s.py) -
                Expr(2) * s.phi * (s.c3 * s.y + s.c4) * s.py -
                Expr(2) * s.y * s.phi * (s.c1 * s.y + s.c2) * s.px;
      v.eta_y = F * (Expr(-2) * s.x * s.phi * s.pyy + Expr(2) * s.y * s.phi * s.pxy -
                     Expr(2) * s.x * s.py * s.py + Expr(2) * s.y * s.py * s.px) +
                Expr(2) * s.phi * (s.c2 * s.x + s.c4) * s.px +
                Expr(2) * s.x * s.phi * (s.c1 * s.x + s.c3) * s.py;
      v.eta_t = F * (-s.y * s.px + s.x * s.py);
      break;
    case 4:
      v.eta_x = F * (Expr(2) * s.px * s.px + Expr(2) * s.phi * s.pxx) -
                Expr(2) * s.phi * s.px * (s.c1 * s.y + s.c2);
      v.eta_y = Expr(2) * F * (s.px * s.py + s.phi * s.pxy) -
                Expr(2) * s.phi * s.px * (s.c1 * s.x + s.c3);
      v.eta_t = -F * s.px;
      break;
    case 5:
      v.eta_x = Expr(2) * F * (s.px * s.py + s.phi * s.pxy) -
                Expr(2) * s.phi * s.py * (s.c1 * s.y + s.c3);
      v.eta_y = F * (Expr(2) * s.py * s.py + Expr(2) * s.phi * s.pyy) -
                Expr(2) * s.phi * s.py * (s.c1 * s.x + s.c3);
      v.eta_t = -F * s.py;
      break;
    default:
      throw DomainError("printed_eta index out of range");
  }
  return v;
}

}  // namespace popsym::conslaw
