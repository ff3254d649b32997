#include "popsym.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "report/report.hpp"
#include "solutions/solutions.hpp"
#include "suites/suites.hpp"
#include "symexpr/calculus.hpp"
#include "symexpr/eval.hpp"
#include "symexpr/expr.hpp"
#include "symexpr/zero.hpp"

using namespace popsym;
using symexpr::Atom;
using symexpr::Expr;
using symexpr::Rational;

struct popsym_expr {
  Expr e;
};

namespace {

thread_local std::string g_last_error = "ok";

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

popsym_status fail(popsym_status st, const std::string& msg) {
  g_last_error = msg;
  return st;
}

template <typename Fn>
popsym_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    return fail(POPSYM_ERR_PARSE, e.what());
  } catch (const JetOrderError& e) {
    return fail(POPSYM_ERR_JET_ORDER, e.what());
  } catch (const EvalError& e) {
    return fail(POPSYM_ERR_EVAL, e.what());
  } catch (const DomainError& e) {
    return fail(POPSYM_ERR_DOMAIN, e.what());
  } catch (const std::exception& e) {
    return fail(POPSYM_ERR_INTERNAL, e.what());
  }
}

popsym_status need(bool cond, const char* what) {
  if (cond) return POPSYM_OK;
  return fail(POPSYM_ERR_INVALID_ARGUMENT, std::string("missing or invalid argument: ") + what);
}

Rational parse_rational(const std::string& text) {
  Expr e = symexpr::parse(text);
  auto c = e.constant_value();
  if (!c) throw DomainError("'" + text + "' is not a rational constant");
  auto r = c->as_rational();
  if (!r) throw DomainError("'" + text + "' depends on theta");
  return *r;
}

Atom atom_from_name(const std::string& name) {
  Expr e = symexpr::parse(name);
  if (e.terms().size() != 1 || !e.terms()[0].coeff.is_one() || e.terms()[0].mono.size() != 1 ||
      e.terms()[0].mono[0].em != 1 || e.terms()[0].mono[0].en != 0)
    throw DomainError("'" + name + "' does not name an atom");
  return e.terms()[0].mono[0].atom;
}

const char* kGrammar =
    "expr    = [\"-\"] term { (\"+\"|\"-\") term } ;\n"
    "term    = factor { (\"*\"|\"/\") factor } ;\n"
    "factor  = primary [ \"^\" factor ] ;\n"
    "primary = number | ident | call | \"(\" expr \")\" | \"-\" primary ;\n"
    "call    = (\"exp\"|\"ln\"|\"sin\"|\"cos\") \"(\" expr \")\"\n"
    "        | \"pow\" \"(\" expr \",\" expr \")\" ;\n"
    "number  = digits [ \".\" digits ] ;  (* exact rationals *)\n"
    "ident   = letter { letter | digit | \"_\" | \"'\" } ;\n"
    "(* x, y, t are the independent variables; phi, phi_x, phi_xy, ... and\n"
    "   psi, psi_x, ... are jet variables up to order 4; theta is the porous\n"
    "   exponent; gamma and tau abbreviate (theta-2)/(2(theta-1)) and\n"
    "   1/(theta-1); every other identifier is a named parameter *)\n";

std::vector<std::string> load_expectations(const char* path) {
  if (!path) return report::default_expectations();
  std::vector<std::string> out;
  FILE* f = std::fopen(path, "r");
  if (!f) throw DomainError(std::string("cannot read expectation file ") + path);
  char buf[512];
  while (std::fgets(buf, sizeof buf, f)) {
    std::string line(buf);
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    line = line.substr(start);
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line);
  }
  std::fclose(f);
  return out;
}

}  // namespace

extern "C" {

const char* popsym_last_error(void) { return g_last_error.c_str(); }

void popsym_string_free(char* s) { std::free(s); }

void popsym_expr_free(popsym_expr* e) { delete e; }

popsym_status popsym_parse(const char* text, popsym_expr** out) {
  if (auto st = need(text && out, "text/out")) return st;
  return guarded([&] {
    *out = new popsym_expr{symexpr::parse(text)};
    return POPSYM_OK;
  });
}

popsym_status popsym_print(const popsym_expr* e, char** out) {
  if (auto st = need(e && out, "expr/out")) return st;
  return guarded([&] {
    *out = dup_string(e->e.str());
    return POPSYM_OK;
  });
}

popsym_status popsym_expr_clone(const popsym_expr* e, popsym_expr** out) {
  if (auto st = need(e && out, "expr/out")) return st;
  *out = new popsym_expr{e->e};
  return POPSYM_OK;
}

popsym_status popsym_grammar(char** out) {
  if (auto st = need(out != nullptr, "out")) return st;
  *out = dup_string(kGrammar);
  return POPSYM_OK;
}

popsym_status popsym_differentiate(const popsym_expr* e, const char* wrt, popsym_expr** out) {
  if (auto st = need(e && wrt && out, "expr/wrt/out")) return st;
  return guarded([&] {
    Expr result;
    if (std::strcmp(wrt, "theta") == 0)
      result = symexpr::d_theta(e->e);
    else
      result = symexpr::differentiate(e->e, atom_from_name(wrt));
    *out = new popsym_expr{result};
    return POPSYM_OK;
  });
}

popsym_status popsym_total_derivative(const popsym_expr* e, const char* base,
                                      popsym_expr** out) {
  if (auto st = need(e && base && out, "expr/base/out")) return st;
  return guarded([&] {
    symexpr::Space s;
    std::string b = base;
    if (b == "x")
      s = symexpr::Space::X;
    else if (b == "y")
      s = symexpr::Space::Y;
    else if (b == "t")
      s = symexpr::Space::T;
    else
      throw DomainError("total derivative base must be x, y or t");
    *out = new popsym_expr{symexpr::total_derivative(e->e, s)};
    return POPSYM_OK;
  });
}

popsym_status popsym_substitute(const popsym_expr* e, const char* target,
                                const popsym_expr* replacement, popsym_expr** out) {
  if (auto st = need(e && target && replacement && out, "expr/target/replacement/out"))
    return st;
  return guarded([&] {
    *out = new popsym_expr{symexpr::substitute(e->e, atom_from_name(target), replacement->e)};
    return POPSYM_OK;
  });
}

popsym_status popsym_is_zero(const popsym_expr* e, unsigned long long seed, int* verdict) {
  if (auto st = need(e && verdict, "expr/verdict")) return st;
  return guarded([&] {
    symexpr::ConstraintSet cs;
    if (seed) cs.seed = seed;
    *verdict = static_cast<int>(symexpr::is_zero(e->e, cs));
    return POPSYM_OK;
  });
}

popsym_status popsym_eval(const popsym_expr* e, const char* theta, const char* const* names,
                          const double* values, size_t n, double* out) {
  if (auto st = need(e && out && (n == 0 || (names && values)), "expr/bindings/out")) return st;
  return guarded([&] {
    symexpr::PointAssignment at;
    if (theta) at.set_theta(parse_rational(theta));
    for (size_t i = 0; i < n; ++i) at.set(atom_from_name(names[i]), values[i]);
    *out = symexpr::eval_numeric(e->e, at);
    return POPSYM_OK;
  });
}

popsym_status popsym_tables(const char* which, const char* format, int check, char** rendered,
                            int* ok) {
  if (auto st = need(which && rendered && ok, "which/rendered/ok")) return st;
  return guarded([&] {
    report::Format f = report::format_from_name(format ? format : "text");
    std::string body = suites::render_table(which, f);
    *ok = 1;
    if (check) {
      report::Report rep = suites::check_table(which);
      *ok = rep.has_failure({}) ? 0 : 1;
      body += render(rep, f);
    }
    *rendered = dup_string(body);
    return POPSYM_OK;
  });
}

popsym_status popsym_verify(const char* scope, const char* format, const char* h,
                            const char* theta, unsigned long long seed,
                            const char* expectations, char** rendered, int* ok) {
  if (auto st = need(scope && rendered && ok, "scope/rendered/ok")) return st;
  return guarded([&] {
    suites::Options opts;
    if (h) opts.h = parse_rational(h).get_d();
    if (theta) opts.theta = parse_rational(theta);
    if (seed) opts.seed = seed;
    auto reports = suites::verify_scope(scope, opts);
    auto expected = load_expectations(expectations);
    bool failed = false;
    for (const auto& r : reports) failed = failed || r.has_failure(expected);
    *ok = failed ? 0 : 1;
    *rendered = dup_string(render_many(reports, report::format_from_name(format ? format : "text")));
    return POPSYM_OK;
  });
}

popsym_status popsym_classify(const char* const alpha[5], const char* theta, int verify,
                              const char* format, char** rendered, int* ok) {
  if (auto st = need(alpha && rendered && ok, "alpha/rendered/ok")) return st;
  return guarded([&] {
    std::array<Rational, 5> a;
    for (int i = 0; i < 5; ++i) {
      if (!alpha[i]) throw DomainError("five coefficients are required");
      a[i] = parse_rational(alpha[i]);
    }
    Rational th = theta ? parse_rational(theta) : Rational(1, 2);
    auto run = suites::run_classify(a, th, verify != 0,
                                    report::format_from_name(format ? format : "text"));
    *ok = run.roundtrip_checked ? (run.roundtrip_ok ? 1 : 0) : 1;
    *rendered = dup_string(run.rendered);
    return POPSYM_OK;
  });
}

popsym_status popsym_simulate(const char* family, const char* theta, double h, int steps,
                              int dt_sweep, const char* outdir, const char* format,
                              char** rendered, int* ok) {
  if (auto st = need(family && rendered && ok, "family/rendered/ok")) return st;
  return guarded([&] {
    suites::SimulateOptions o;
    o.family = family;
    if (theta) o.theta = parse_rational(theta);
    o.h = h;
    if (steps > 0) o.steps = steps;
    o.dt_sweep = dt_sweep != 0;
    o.outdir = outdir ? outdir : ".";
    std::vector<std::string> files;
    report::Report rep = suites::run_simulate(o, files);
    *ok = rep.has_failure({}) ? 0 : 1;
    *rendered = dup_string(render(rep, report::format_from_name(format ? format : "text")));
    return POPSYM_OK;
  });
}

popsym_status popsym_export_figure(const char* figure, const char* outdir, const char* format,
                                   char** rendered, int* ok) {
  if (auto st = need(figure && rendered && ok, "figure/rendered/ok")) return st;
  return guarded([&] {
    std::vector<std::string> files;
    report::Report rep =
        suites::run_export(figure, outdir ? outdir : ".", files);
    *ok = rep.has_failure(report::default_expectations()) ? 0 : 1;
    *rendered = dup_string(render(rep, report::format_from_name(format ? format : "text")));
    return POPSYM_OK;
  });
}

}  // extern "C"
