#include "symexpr/zero.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "symexpr/calculus.hpp"
#include "symexpr/eval.hpp"

namespace popsym::symexpr {

std::string to_string(ZeroVerdict v) {
  switch (v) {
    case ZeroVerdict::Zero: return "Zero";
    case ZeroVerdict::NonZero: return "NonZero";
    default: return "Unknown";
  }
}

namespace {

// ---- exponential-group resolution -----------------------------------------
//
// Terms carry at most one Exp factor each. When two groups' arguments differ
// by a sum of integer multiples of logarithms, Exp(a2) = Exp(a1) * prod w^n
// and the groups can be merged, enabling syntactic cancellation (this is how
// the radial power-law solutions reduce).

struct ExpSplit {
  bool has_exp = false;
  Expr arg;          // argument of the Exp factor (exponent em folded in)
  Term rest;         // term without the Exp factor
};

ExpSplit split_exp(const Term& t) {
  ExpSplit s;
  s.rest.coeff = t.coeff;
  for (const auto& f : t.mono) {
    if (f.atom.is_kernel(KernelKind::Exp) && !s.has_exp) {
      s.has_exp = true;
      s.arg = Expr(static_cast<long>(f.em)) * f.atom.kernel().arg;
    } else {
      s.rest.mono.push_back(f);
    }
  }
  return s;
}

// decomposes d into integer-coefficient single-ln terms and a remainder;
// returns false if d has no ln part at all
bool split_int_lns(const Expr& d, std::vector<std::pair<Expr, long>>& lns, Expr& rest) {
  bool any = false;
  TermSum rem;
  for (const auto& t : d.terms()) {
    if (t.mono.size() == 1 && t.mono[0].em == 1 && t.mono[0].en == 0 &&
        t.mono[0].atom.is_kernel(KernelKind::Ln)) {
      if (auto n = t.coeff.as_long()) {
        lns.emplace_back(t.mono[0].atom.kernel().arg, *n);
        any = true;
        continue;
      }
    }
    rem.add(Expr::from_terms({t}));
  }
  rest = rem.done();
  return any;
}

// one resolution round; returns true if anything changed
bool resolve_exp_groups(Expr& e) {
  std::vector<Expr> group_args;
  for (const auto& t : e.terms()) {
    ExpSplit s = split_exp(t);
    if (s.has_exp) {
      bool seen = false;
      for (const auto& g : group_args) seen = seen || g == s.arg;
      if (!seen) group_args.push_back(s.arg);
    }
  }
  if (group_args.size() < 2) return false;
  // deterministic base group: smallest argument in canonical order
  std::sort(group_args.begin(), group_args.end(),
            [](const Expr& a, const Expr& b) { return a.cmp(b) < 0; });
  const Expr& base = group_args[0];
  for (std::size_t gi = 1; gi < group_args.size(); ++gi) {
    Expr d = group_args[gi] - base;
    std::vector<std::pair<Expr, long>> lns;
    Expr rest;
    if (!split_int_lns(d, lns, rest)) continue;
    // Exp(arg_gi) -> Exp(base + rest) * prod w^n
    Expr mult(1L);
    for (const auto& [w, n] : lns) mult = mult * make_pow(w, Expr(n));
    Expr repl = mult * make_exp(base + rest);
    // rebuild e replacing that group
    TermSum out;
    bool changed = false;
    for (const auto& t : e.terms()) {
      ExpSplit s = split_exp(t);
      if (s.has_exp && s.arg == group_args[gi]) {
        out.add(Expr::from_terms({s.rest}) * repl);
        changed = true;
      } else {
        out.add(Expr::from_terms({t}));
      }
    }
    if (changed) {
      e = out.done();
      return true;
    }
  }
  return false;
}

// ---- denominator clearing ---------------------------------------------------

// multiplies by enough positive powers of every Inv base to remove all
// top-level Inv factors; the Inv cancellation is performed structurally
// (strip the factor, multiply by the complementary power), so the result is
// a plain polynomial in the remaining atoms. Zero-preserving where defined.
bool clear_denominators(Expr& e) {
  auto cmp = [](const Expr& a, const Expr& b) { return a.cmp(b) < 0; };
  std::map<Expr, std::int64_t, decltype(cmp)> maxpow(cmp);
  for (const auto& t : e.terms())
    for (const auto& f : t.mono)
      if (f.atom.is_kernel(KernelKind::Inv)) {
        auto& m = maxpow[f.atom.kernel().arg];
        m = std::max(m, f.em);
      }
  if (maxpow.empty()) return false;
  TermSum out;
  for (const auto& t : e.terms()) {
    Term stripped;
    stripped.coeff = t.coeff;
    std::map<Expr, std::int64_t, decltype(cmp)> sig(cmp);
    for (const auto& f : t.mono) {
      if (f.atom.is_kernel(KernelKind::Inv))
        sig[f.atom.kernel().arg] += f.em;
      else
        stripped.mono.push_back(f);
    }
    Expr rebuilt = Expr::from_terms({stripped});
    for (const auto& [base, kmax] : maxpow) {
      std::int64_t have = 0;
      auto it = sig.find(base);
      if (it != sig.end()) have = it->second;
      if (kmax > have) rebuilt = rebuilt * pow_int(base, kmax - have);
    }
    out.add(rebuilt);
  }
  e = out.done();
  return true;
}

Expr expand_everywhere(const Expr& e) {
  Expr x = map_kernel_args(e, [](const Expr& a) { return expand_defined_params(a); });
  return expand_defined_params(x);
}

}  // namespace

Expr rewrite_for_zero(const Expr& e) {
  Expr cur = expand_everywhere(e);
  for (int round = 0; round < 48 && !cur.is_zero(); ++round) {
    if (resolve_exp_groups(cur)) continue;
    if (clear_denominators(cur)) continue;
    break;
  }
  return cur;
}

namespace {

double draw(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

bool build_point(const Expr& e, const ConstraintSet& cs, std::mt19937_64& rng,
                 PointAssignment& at) {
  std::set<Atom> atoms;
  collect_atoms(e, atoms);
  // exact rational theta in [0.05, 0.95]
  long tnum = 50 + static_cast<long>(rng() % 901);  // 50..950
  Rational th(tnum, 1000);
  th.canonicalize();
  at.set_theta(th);
  double r2 = 0;
  double xv = 0, yv = 0;
  do {
    xv = draw(rng, -3, 3);
    yv = draw(rng, -3, 3);
    r2 = xv * xv + yv * yv;
  } while (r2 < 0.25);
  for (const auto& a : atoms) {
    switch (a.tag()) {
      case Atom::Tag::Var:
        if (a.space() == Space::X)
          at.set(a, xv);
        else if (a.space() == Space::Y)
          at.set(a, yv);
        else
          at.set(a, draw(rng, 0.5, 3.5));
        break;
      case Atom::Tag::Jet:
        if (a.is_phi())
          at.set(a, draw(rng, cs.phi_min, cs.phi_max));
        else
          at.set(a, draw(rng, -3, 3));
        break;
      case Atom::Tag::Param: {
        const std::string& n = a.param_name();
        if (n == "gamma" || n == "tau") return false;  // must be expanded first
        if (n == "h") {
          at.set(a, cs.h_value ? *cs.h_value : draw(rng, 0.5, 4));
          break;
        }
        auto rit = cs.param_ranges.find(n);
        if (rit != cs.param_ranges.end()) {
          at.set(a, draw(rng, rit->second.first, rit->second.second));
          break;
        }
        bool positive = std::count(cs.positive_params.begin(), cs.positive_params.end(), n);
        bool nonzero = positive ||
                       std::count(cs.nonzero_params.begin(), cs.nonzero_params.end(), n);
        double v;
        do {
          v = positive ? draw(rng, 0.2, 3.0) : draw(rng, -3, 3);
        } while (nonzero && std::abs(v) < 0.2);
        at.set(a, v);
        break;
      }
      case Atom::Tag::Kernel:
        break;  // computed from the argument
    }
  }
  return true;
}

}  // namespace

std::optional<double> max_relative_residual(const Expr& e, const ConstraintSet& cs) {
  Expr probe = expand_everywhere(e);
  std::mt19937_64 rng(cs.seed);
  int done = 0, attempts = 0;
  double worst = 0;
  while (done < cs.samples && attempts < cs.samples * 40) {
    ++attempts;
    PointAssignment at;
    if (!build_point(probe, cs, rng, at)) return std::nullopt;
    try {
      double v = eval_numeric(probe, at);
      double scale = eval_term_scale(probe, at);
      double rel = std::abs(v) / (1.0 + scale);
      worst = std::max(worst, rel);
      ++done;
    } catch (const EvalError&) {
      continue;  // inadmissible point (domain error), redraw
    }
  }
  if (done == 0) return std::nullopt;
  return worst;
}

ZeroVerdict is_zero(const Expr& e, const ConstraintSet& cs) {
  if (e.is_zero()) return ZeroVerdict::Zero;
  Expr rw = rewrite_for_zero(e);
  if (rw.is_zero()) return ZeroVerdict::Zero;
  auto worst = max_relative_residual(e, cs);
  if (!worst)
    throw DomainError("no admissible sample points under the constraint set");
  if (*worst >= 1e-9) return ZeroVerdict::NonZero;
  return ZeroVerdict::Unknown;
}

}  // namespace popsym::symexpr
