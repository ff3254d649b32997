#include "numgrid/numgrid.hpp"

#include <cmath>

#include "symexpr/eval.hpp"

namespace popsym::numgrid {

using namespace symexpr;

Grid2D::Grid2D(int nx_, int ny_, double dx_, double dy_, double x0_, double y0_)
    : nx(nx_), ny(ny_), dx(dx_), dy(dy_), x0(x0_), y0(y0_) {
  if (nx < 8 || ny < 8) throw DomainError("grid needs at least 8 cells per direction");
  if (dx <= 0 || dy <= 0) throw DomainError("grid spacings must be positive");
}

namespace {

// Closed-form families are jet-free expressions in (x, y, t) with all
// parameters bound, so they compile to a small double-only program; this
// keeps GMP out of the per-cell sampling loop.
class CompiledField {
 public:
  CompiledField(const Expr& e, const ParamMap& params, const Rational& theta) {
    Expr spec = substitute_theta(e, theta);
    params_ = params;
    root_ = compile(spec);
  }

  double eval(double x, double y, double t) const {
    x_ = x;
    y_ = y;
    t_ = t;
    return run(root_);
  }

 private:
  struct Node {
    enum Op { Sum, Mul, Con, Var, PowI, PowD, Fexp, Fln, Fsin, Fcos, Finv } op = Con;
    double c = 0;      // Con value, PowD exponent
    long n = 0;        // PowI exponent
    int var = 0;       // 0=x 1=y 2=t
    int a = -1;        // child
    std::vector<int> kids;  // Sum/Mul children
  };

  int add(Node n) {
    prog_.push_back(std::move(n));
    return static_cast<int>(prog_.size()) - 1;
  }

  int compile(const Expr& e) {
    Node sum;
    sum.op = Node::Sum;
    for (const auto& t : e.terms()) {
      Node mul;
      mul.op = Node::Mul;
      auto c = t.coeff.as_rational();
      if (!c) throw EvalError("non-constant coefficient after theta substitution");
      Node con;
      con.op = Node::Con;
      con.c = c->get_d();
      mul.kids.push_back(add(con));
      for (const auto& f : t.mono) {
        if (f.en != 0) throw EvalError("lattice exponent outside a compiled field");
        int base = compile_atom(f.atom);
        if (f.em != 1) {
          Node p;
          p.op = Node::PowI;
          p.n = f.em;
          p.a = base;
          base = add(p);
        }
        mul.kids.push_back(base);
      }
      sum.kids.push_back(add(mul));
    }
    return add(sum);
  }

  int compile_atom(const Atom& a) {
    switch (a.tag()) {
      case Atom::Tag::Var: {
        Node v;
        v.op = Node::Var;
        v.var = static_cast<int>(a.space());
        return add(v);
      }
      case Atom::Tag::Param: {
        auto it = params_.find(a.param_name());
        if (it == params_.end())
          throw EvalError("unbound parameter '" + a.param_name() + "' in compiled field");
        Node c;
        c.op = Node::Con;
        c.c = it->second;
        return add(c);
      }
      case Atom::Tag::Kernel: {
        Node k;
        k.a = compile(a.kernel().arg);
        switch (a.kernel().kind) {
          case KernelKind::Exp: k.op = Node::Fexp; break;
          case KernelKind::Ln: k.op = Node::Fln; break;
          case KernelKind::Sin: k.op = Node::Fsin; break;
          case KernelKind::Cos: k.op = Node::Fcos; break;
          case KernelKind::Inv: k.op = Node::Finv; break;
        }
        return add(k);
      }
      default:
        throw EvalError("jet atom in a compiled field");
    }
  }

  double run(int idx) const {
    const Node& n = prog_[idx];
    switch (n.op) {
      case Node::Sum: {
        double s = 0;
        for (int k : n.kids) s += run(k);
        return s;
      }
      case Node::Mul: {
        double p = 1;
        for (int k : n.kids) p *= run(k);
        return p;
      }
      case Node::Con: return n.c;
      case Node::Var: return n.var == 0 ? x_ : (n.var == 1 ? y_ : t_);
      case Node::PowI: {
        double b = run(n.a);
        long m = n.n < 0 ? -n.n : n.n;
        double acc = 1, base = b;
        while (m > 0) {
          if (m & 1) acc *= base;
          base *= base;
          m >>= 1;
        }
        if (n.n < 0) {
          if (acc == 0) throw EvalError("division by zero in compiled field");
          return 1.0 / acc;
        }
        return acc;
      }
      case Node::PowD: return std::pow(run(n.a), n.c);
      case Node::Fexp: return std::exp(run(n.a));
      case Node::Fln: {
        double v = run(n.a);
        if (v <= 0) throw EvalError("ln of a non-positive value in compiled field");
        return std::log(v);
      }
      case Node::Fsin: return std::sin(run(n.a));
      case Node::Fcos: return std::cos(run(n.a));
      case Node::Finv: {
        double v = run(n.a);
        if (v == 0) throw EvalError("division by zero in compiled field");
        return 1.0 / v;
      }
    }
    return 0;
  }

  std::vector<Node> prog_;
  int root_ = -1;
  ParamMap params_;
  mutable double x_ = 0, y_ = 0, t_ = 0;
};

}  // namespace

FieldFn make_sampler(solutions::FamilyId fam, const ParamMap& params, const Rational& theta) {
  const auto& f = solutions::family(fam);
  auto compiled = std::make_shared<CompiledField>(f.phi, params, theta);
  return [compiled](double x, double y, double t) { return compiled->eval(x, y, t); };
}

Field sample(const FieldFn& fn, const Grid2D& g, double t) {
  Field f(g.nx, g.ny, t);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) f.at(i, j) = fn(g.x(i), g.y(j), t);
  return f;
}

Field sample(solutions::FamilyId fam, const Grid2D& g, double t, const ParamMap& params,
             const Rational& theta) {
  return sample(make_sampler(fam, params, theta), g, t);
}

double residual_numeric(const FieldFn& fn, const Grid2D& g, double t, double h,
                        const Rational& theta) {
  double dt = 1e-6 * t;
  Field now = sample(fn, g, t);
  Field next = sample(fn, g, t + dt);
  double th = theta.get_d();
  double worst = 0;
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i) {
      double c = now.at(i, j);
      double px = (now.at(i + 1, j) - now.at(i - 1, j)) / (2 * g.dx);
      double py = (now.at(i, j + 1) - now.at(i, j - 1)) / (2 * g.dy);
      double pxx = (now.at(i + 1, j) - 2 * c + now.at(i - 1, j)) / (g.dx * g.dx);
      double pyy = (now.at(i, j + 1) - 2 * c + now.at(i, j - 1)) / (g.dy * g.dy);
      double pt = (next.at(i, j) - c) / dt;
      double source = 0;
      if (h != 0) {
        if (c <= 0) throw EvalError("source term needs positive density");
        source = h * std::pow(c, th);
      }
      double r = pt - 2 * px * px - 2 * c * pxx - 2 * py * py - 2 * c * pyy + source;
      worst = std::max(worst, std::abs(r));
    }
  return worst;
}

namespace {

bool held_cell(const SimConfig& cfg, const Grid2D& g, int i, int j) {
  if (i == 0 || j == 0 || i == g.nx - 1 || j == g.ny - 1) return true;
  if (cfg.annulus) {
    double r = std::hypot(g.x(i), g.y(j));
    if (r < cfg.annulus->first || r > cfg.annulus->second) return true;
  }
  return false;
}

}  // namespace

void step(Field& f, const SimConfig& cfg, const Grid2D& g) {
  // stability guard, re-evaluated against the current field
  double maxphi = 0;
  for (double v : f.v) {
    if (!std::isfinite(v)) throw DomainError("non-finite field value before step");
    maxphi = std::max(maxphi, std::abs(v));
  }
  double hmin = std::min(g.dx, g.dy);
  double bound = 0.2 * hmin * hmin / (4 * 2 * maxphi + 1e-300);
  if (cfg.dt > bound)
    throw DomainError("stability violation: dt = " + std::to_string(cfg.dt) +
                      " exceeds the guard " + std::to_string(bound));

  double th = cfg.theta.get_d();
  std::vector<double> q(f.v.size());
  for (std::size_t k = 0; k < q.size(); ++k) q[k] = f.v[k] * f.v[k];
  auto qat = [&](int i, int j) { return q[static_cast<std::size_t>(j) * g.nx + i]; };

  Field out = f;
  if (cfg.boundary == Boundary::ZeroFlux) {
    // flux form with vanishing boundary fluxes: exact discrete conservation
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        double fe = (i + 1 < g.nx) ? (qat(i + 1, j) - qat(i, j)) / g.dx : 0;
        double fw = (i > 0) ? (qat(i, j) - qat(i - 1, j)) / g.dx : 0;
        double fn = (j + 1 < g.ny) ? (qat(i, j + 1) - qat(i, j)) / g.dy : 0;
        double fs = (j > 0) ? (qat(i, j) - qat(i, j - 1)) / g.dy : 0;
        double lap = (fe - fw) / g.dx + (fn - fs) / g.dy;
        double c = f.at(i, j);
        double source = 0;
        if (cfg.h != 0) source = (c <= 0 && cfg.clamp_negative) ? 0 : cfg.h * std::pow(c, th);
        out.at(i, j) = c + cfg.dt * (lap - source);
      }
  } else {
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        if (held_cell(cfg, g, i, j)) continue;  // boundary cells are imposed by the caller
        double lap = (qat(i + 1, j) - 2 * qat(i, j) + qat(i - 1, j)) / (g.dx * g.dx) +
                     (qat(i, j + 1) - 2 * qat(i, j) + qat(i, j - 1)) / (g.dy * g.dy);
        double c = f.at(i, j);
        double source = 0;
        if (cfg.h != 0) {
          if (c <= 0) {
            if (!cfg.clamp_negative) throw EvalError("negative density with fractional source");
            source = 0;
          } else {
            source = cfg.h * std::pow(c, th);
          }
        }
        out.at(i, j) = c + cfg.dt * (lap - source);
      }
  }
  out.time = f.time + cfg.dt;
  for (double v : out.v)
    if (!std::isfinite(v)) throw DomainError("non-finite field value after step");
  f = std::move(out);
}

double total_mass(const Field& f, const Grid2D& g) {
  double m = 0;
  for (double v : f.v) m += v;
  return m * g.dx * g.dy;
}

EvolveReport evolve_and_compare(solutions::FamilyId fam, const Grid2D& g, SimConfig cfg,
                                double t0, double t1, const ParamMap& params) {
  EvolveReport rep;
  if (t1 == t0 || cfg.steps == 0) return rep;
  if (t1 < t0) throw DomainError("t1 must not precede t0");
  if (!integrable(fam)) throw DomainError(integrability_note(fam));
  cfg.dt = (t1 - t0) / cfg.steps;
  FieldFn fn = make_sampler(fam, params, cfg.theta);
  Field f = sample(fn, g, t0);
  for (int s = 0; s < cfg.steps; ++s) {
    // impose boundary values at the start-of-step time; the resulting
    // one-step lag at t1 is the leading O(dt) error for smooth solutions
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        if (held_cell(cfg, g, i, j)) f.at(i, j) = fn(g.x(i), g.y(j), f.time);
    step(f, cfg, g);
  }
  Field exact = sample(fn, g, t1);
  double l2 = 0;
  int n = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      double e = std::abs(f.at(i, j) - exact.at(i, j));
      rep.linf = std::max(rep.linf, e);
      l2 += e * e;
      ++n;
    }
  rep.l2 = std::sqrt(l2 / n);
  rep.steps = cfg.steps;
  return rep;
}

bool integrable(solutions::FamilyId fam) {
  using solutions::FamilyId;
  return fam == FamilyId::S2 || fam == FamilyId::S3 || fam == FamilyId::S4;
}

std::string integrability_note(solutions::FamilyId fam) {
  using solutions::FamilyId;
  switch (fam) {
    case FamilyId::S1:
    case FamilyId::S5:
      return solutions::family(fam).name +
             " has negative density, so the effective diffusivity 2*phi is negative "
             "(backward parabolic); it is verified by residual only";
    case FamilyId::S6:
      return "S6 cannot be evaluated on a real domain at generic theta "
             "(negative-base fractional power)";
    default:
      return solutions::family(fam).name + " is admissible for time integration";
  }
}

}  // namespace popsym::numgrid
