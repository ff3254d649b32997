#include "symexpr/calculus.hpp"

namespace popsym::symexpr {

namespace {

// derivative of a single kernel atom with respect to `wrt` (chain rule);
// the caller multiplies by the power-rule prefactor
Expr kernel_derivative(const Atom& a, const Atom& wrt) {
  const KernelNode& k = a.kernel();
  Expr da = differentiate(k.arg, wrt);
  if (da.is_zero()) return Expr();
  switch (k.kind) {
    case KernelKind::Exp:
      return da * Expr::from_atom(a);
    case KernelKind::Ln:
      return da / k.arg;
    case KernelKind::Sin:
      return da * make_cos(k.arg);
    case KernelKind::Cos:
      return -da * make_sin(k.arg);
    case KernelKind::Inv:
      // d(B^-1) = -B' * B^-2; the caller treats Inv(B)^em via the power rule,
      // so here we return d/dwrt of Inv(B)^1
      return -da * Expr::from_terms({Term{
                       RatFunc(Rational(1)),
                       {Factor{Atom::kernel(KernelKind::Inv, k.arg), 2, 0}}}});
  }
  return Expr();
}

Expr factor_power(const Factor& f, std::int64_t dm, std::int64_t dn) {
  // atom^(em+dm + (en+dn) theta)
  std::int64_t em = f.em + dm, en = f.en + dn;
  if (em == 0 && en == 0) return Expr(1L);
  return Expr::from_terms({Term{RatFunc(Rational(1)), {Factor{f.atom, em, en}}}});
}

}  // namespace

Expr differentiate(const Expr& e, const Atom& wrt) {
  TermSum out;
  for (const auto& t : e.terms()) {
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      const Factor& f = t.mono[i];
      Expr dfac;  // derivative of f.atom^exponent
      if (f.atom == wrt) {
        // power rule with (possibly) lattice exponent
        RatFunc expc = RatFunc::linear(Rational(static_cast<long>(f.en)),
                                       Rational(static_cast<long>(f.em)));
        dfac = Expr(expc) * factor_power(f, -1, 0);
      } else if (f.atom.tag() == Atom::Tag::Kernel) {
        Expr dk = kernel_derivative(f.atom, wrt);
        if (dk.is_zero()) continue;
        RatFunc expc = RatFunc::linear(Rational(static_cast<long>(f.en)),
                                       Rational(static_cast<long>(f.em)));
        dfac = Expr(expc) * factor_power(f, -1, 0) * dk;
      } else {
        continue;
      }
      // multiply by the remaining factors and the coefficient
      std::vector<Factor> rest;
      rest.reserve(t.mono.size() - 1);
      for (std::size_t j = 0; j < t.mono.size(); ++j)
        if (j != i) rest.push_back(t.mono[j]);
      out.add(Expr::from_terms({Term{t.coeff, rest}}) * dfac);
    }
  }
  return out.done();
}

Expr d_theta(const Expr& e) {
  TermSum out;
  for (const auto& t : e.terms()) {
    Expr term_expr = Expr::from_terms({t});
    // coefficient part
    RatFunc dc = t.coeff.derivative();
    if (!dc.is_zero()) out.add(Expr::from_terms({Term{dc, t.mono}}));
    // factor parts
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      const Factor& f = t.mono[i];
      Expr dfac;
      if (f.en != 0) {
        // d/dtheta phi^(m+n theta) = n ln(phi) phi^(m+n theta)
        dfac = Expr(static_cast<long>(f.en)) * make_ln(Expr::from_atom(f.atom)) *
               Expr::from_terms({Term{RatFunc(Rational(1)), {f}}});
      } else if (f.atom.tag() == Atom::Tag::Kernel) {
        Expr da = d_theta(f.atom.kernel().arg);
        if (da.is_zero()) continue;
        Expr inner;
        switch (f.atom.kernel().kind) {
          case KernelKind::Exp: inner = da * Expr::from_atom(f.atom); break;
          case KernelKind::Ln: inner = da / f.atom.kernel().arg; break;
          case KernelKind::Sin: inner = da * make_cos(f.atom.kernel().arg); break;
          case KernelKind::Cos: inner = -da * make_sin(f.atom.kernel().arg); break;
          case KernelKind::Inv:
            inner = -da * Expr::from_terms(
                              {Term{RatFunc(Rational(1)),
                                    {Factor{Atom::kernel(KernelKind::Inv, f.atom.kernel().arg),
                                            2, 0}}}});
            break;
        }
        RatFunc expc = RatFunc::linear(Rational(static_cast<long>(f.en)),
                                       Rational(static_cast<long>(f.em)));
        dfac = Expr(expc) * factor_power(f, -1, 0) * inner;
      } else {
        continue;
      }
      std::vector<Factor> rest;
      for (std::size_t j = 0; j < t.mono.size(); ++j)
        if (j != i) rest.push_back(t.mono[j]);
      out.add(Expr::from_terms({Term{t.coeff, rest}}) * dfac);
    }
  }
  return out.done();
}

Expr total_derivative(const Expr& e, Space s) {
  TermSum out;
  out.add(differentiate(e, Atom::var(s)));
  std::vector<Atom> jets = collect_jets(e);
  for (const Atom& j : jets) {
    Expr de = differentiate(e, j);
    if (de.is_zero()) continue;
    Atom next = Atom::jet(j.jet_base(), j.jet_index().incremented(s));
    out.add(de * Expr::from_atom(next));
  }
  return out.done();
}

Expr substitute(const Expr& e, const Atom& target, const Expr& replacement) {
  TermSum out;
  for (const auto& t : e.terms()) {
    Expr acc = Expr(t.coeff);
    for (const auto& f : t.mono) {
      Atom a = f.atom;
      if (a.tag() == Atom::Tag::Kernel && !(a == target)) {
        // rebuild kernels whose arguments contain the target
        Expr arg = substitute(a.kernel().arg, target, replacement);
        if (arg != a.kernel().arg) {
          Expr rebuilt;
          switch (a.kernel().kind) {
            case KernelKind::Exp: rebuilt = make_exp(arg); break;
            case KernelKind::Ln: rebuilt = make_ln(arg); break;
            case KernelKind::Sin: rebuilt = make_sin(arg); break;
            case KernelKind::Cos: rebuilt = make_cos(arg); break;
            case KernelKind::Inv: rebuilt = make_pow(arg, Expr(-1L)); break;
          }
          Expr powed = make_pow(rebuilt, Expr(RatFunc::linear(
                                             Rational(static_cast<long>(f.en)),
                                             Rational(static_cast<long>(f.em)))));
          acc = acc * powed;
          continue;
        }
      }
      if (a == target) {
        Expr powed = make_pow(replacement,
                              Expr(RatFunc::linear(Rational(static_cast<long>(f.en)),
                                                   Rational(static_cast<long>(f.em)))));
        acc = acc * powed;
      } else {
        acc = acc * Expr::from_terms({Term{RatFunc(Rational(1)), {f}}});
      }
    }
    out.add(acc);
  }
  return out.done();
}

Expr substitute_param(const Expr& e, const std::string& name, const Expr& replacement) {
  return substitute(e, Atom::param(name), replacement);
}

Expr substitute_many(const Expr& e, const std::vector<std::pair<Atom, Expr>>& subs) {
  auto find = [&subs](const Atom& a) -> const Expr* {
    for (const auto& [t, r] : subs)
      if (t == a) return &r;
    return nullptr;
  };
  TermSum out;
  for (const auto& t : e.terms()) {
    Expr acc = Expr(t.coeff);
    for (const auto& f : t.mono) {
      const Expr* rep = find(f.atom);
      Expr powexp(RatFunc::linear(Rational(static_cast<long>(f.en)),
                                  Rational(static_cast<long>(f.em))));
      if (rep) {
        acc = acc * make_pow(*rep, powexp);
      } else if (f.atom.tag() == Atom::Tag::Kernel) {
        Expr arg = substitute_many(f.atom.kernel().arg, subs);
        Expr rebuilt;
        switch (f.atom.kernel().kind) {
          case KernelKind::Exp: rebuilt = make_exp(arg); break;
          case KernelKind::Ln: rebuilt = make_ln(arg); break;
          case KernelKind::Sin: rebuilt = make_sin(arg); break;
          case KernelKind::Cos: rebuilt = make_cos(arg); break;
          case KernelKind::Inv: rebuilt = make_pow(arg, Expr(-1L)); break;
        }
        acc = acc * make_pow(rebuilt, powexp);
      } else {
        acc = acc * Expr::from_terms({Term{RatFunc(Rational(1)), {f}}});
      }
    }
    out.add(acc);
  }
  return out.done();
}

Expr substitute_theta(const Expr& e, const Rational& theta0) {
  TermSum out;
  for (const auto& t : e.terms()) {
    auto c = t.coeff.eval(theta0);
    if (!c) throw DomainError("coefficient denominator vanishes at theta = " +
                              rational_to_string(theta0));
    Expr acc = Expr(RatFunc(*c));
    for (const auto& f : t.mono) {
      Atom a = f.atom;
      if (a.tag() == Atom::Tag::Kernel) {
        Expr arg = substitute_theta(a.kernel().arg, theta0);
        Expr rebuilt;
        switch (a.kernel().kind) {
          case KernelKind::Exp: rebuilt = make_exp(arg); break;
          case KernelKind::Ln: rebuilt = make_ln(arg); break;
          case KernelKind::Sin: rebuilt = make_sin(arg); break;
          case KernelKind::Cos: rebuilt = make_cos(arg); break;
          case KernelKind::Inv: rebuilt = make_pow(arg, Expr(-1L)); break;
        }
        acc = acc * make_pow(rebuilt, Expr(Rational(f.em)));
        continue;
      }
      if (f.en != 0) {
        Rational total = Rational(static_cast<long>(f.em)) +
                         Rational(static_cast<long>(f.en)) * theta0;
        acc = acc * make_pow(Expr::from_atom(a), Expr(total));
      } else {
        acc = acc * Expr::from_terms({Term{RatFunc(Rational(1)), {f}}});
      }
    }
    out.add(acc);
  }
  return out.done();
}

Expr expand_defined_params(const Expr& e) {
  // gamma = (theta-2)/(2(theta-1)), tau = 1/(theta-1)
  static const RatFunc gamma_v = RatFunc(ThetaPoly(std::vector<Rational>{-2, 1}),
                                         ThetaPoly(std::vector<Rational>{-2, 2}));
  static const RatFunc tau_v = RatFunc(ThetaPoly(Rational(1)),
                                       ThetaPoly(std::vector<Rational>{-1, 1}));
  Expr g = substitute_param(e, "gamma", Expr(gamma_v));
  return substitute_param(g, "tau", Expr(tau_v));
}

void collect_atoms(const Expr& e, std::set<Atom>& out) {
  for (const auto& t : e.terms())
    for (const auto& f : t.mono) {
      out.insert(f.atom);
      if (f.atom.tag() == Atom::Tag::Kernel) collect_atoms(f.atom.kernel().arg, out);
    }
}

std::vector<Atom> collect_jets(const Expr& e) {
  std::set<Atom> all;
  collect_atoms(e, all);
  std::vector<Atom> jets;
  for (const auto& a : all)
    if (a.is_jet()) jets.push_back(a);
  return jets;
}

bool contains_atom(const Expr& e, const Atom& a) {
  std::set<Atom> all;
  collect_atoms(e, all);
  return all.count(a) > 0;
}

Expr map_kernel_args(const Expr& e, const std::function<Expr(const Expr&)>& fn) {
  TermSum out;
  for (const auto& t : e.terms()) {
    Expr acc = Expr(t.coeff);
    for (const auto& f : t.mono) {
      if (f.atom.tag() == Atom::Tag::Kernel) {
        Expr arg = fn(map_kernel_args(f.atom.kernel().arg, fn));
        Expr rebuilt;
        switch (f.atom.kernel().kind) {
          case KernelKind::Exp: rebuilt = make_exp(arg); break;
          case KernelKind::Ln: rebuilt = make_ln(arg); break;
          case KernelKind::Sin: rebuilt = make_sin(arg); break;
          case KernelKind::Cos: rebuilt = make_cos(arg); break;
          case KernelKind::Inv: rebuilt = make_pow(arg, Expr(-1L)); break;
        }
        acc = acc * make_pow(rebuilt, Expr(RatFunc::linear(
                                          Rational(static_cast<long>(f.en)),
                                          Rational(static_cast<long>(f.em)))));
      } else {
        acc = acc * Expr::from_terms({Term{RatFunc(Rational(1)), {f}}});
      }
    }
    out.add(acc);
  }
  return out.done();
}

}  // namespace popsym::symexpr
