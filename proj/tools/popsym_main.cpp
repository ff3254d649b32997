// Command-line front end; talks to the toolkit exclusively through the
// shared library's C interface.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "popsym.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct StringOut {
  char* s = nullptr;
  ~StringOut() { popsym_string_free(s); }
};

int finish(popsym_status st, const StringOut& out, int ok) {
  if (st != POPSYM_OK) {
    std::fprintf(stderr, "error: %s\n", popsym_last_error());
    // bad arguments and domain rejections are usage errors; everything else
    // is a failed run
    return (st == POPSYM_ERR_INVALID_ARGUMENT || st == POPSYM_ERR_DOMAIN ||
            st == POPSYM_ERR_PARSE)
               ? kExitUsage
               : kExitCheckFailure;
  }
  if (out.s) std::fputs(out.s, stdout);
  return ok ? kExitPass : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetry, classification, exact-solution and conservation-law "
               "verifier for the porous-media population equation"};
  app.require_subcommand(1);
  app.fallthrough();  // parent flags (--format) may follow subcommand arguments

  std::string format = "text";
  app.add_option("--format", format, "output format: text, csv or json")
      ->capture_default_str();

  // tables -------------------------------------------------------------
  auto* tables = app.add_subcommand("tables", "emit the commutation, adjoint or invariant table");
  std::string which;
  bool check = false;
  tables->add_option("which", which, "commutation | adjoint | invariants")->required();
  tables->add_flag("--check", check, "compare against the embedded transcription");

  // classify -----------------------------------------------------------
  auto* classify = app.add_subcommand("classify", "optimal-system representative of an element");
  std::vector<std::string> alpha;
  std::string theta = "1/2";
  bool verify_flag = false;
  classify->add_option("alpha", alpha, "five rational coefficients")->expected(5)->required();
  classify->add_option("--theta", theta, "porous exponent in (0,1)")->capture_default_str();
  classify->add_flag("--verify", verify_flag, "replay the adjoint matrix and check the result");

  // verify ---------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->set_help_flag("--help", "print help");  // frees -h for the growth-rate flag
  std::string scope;
  std::string h_value;
  std::string expectations;
  unsigned long long seed = 0;
  verify->add_option("scope", scope, "symmetries | solutions | adjoint | conservation | all")
      ->required();
  verify->add_option("--h", h_value, "pin the growth rate (e.g. 0); default symbolic");
  verify->add_option("--theta", theta, "porous exponent in (0,1)")->capture_default_str();
  verify->add_option("--seed", seed, "seed for randomized zero-testing");
  verify->add_option("--expectations", expectations,
                     "file listing check names expected to be documented discrepancies");

  // simulate -------------------------------------------------------------
  auto* simulate = app.add_subcommand("simulate", "explicit finite-difference cross-check");
  simulate->set_help_flag("--help", "print help");
  std::string family;
  double h = 0;
  int steps = 100;
  bool dt_sweep = false;
  std::string outdir = ".";
  simulate->add_option("family", family, "S2, S3 or S4")->required();
  simulate->add_option("--theta", theta, "porous exponent in (0,1)")->capture_default_str();
  simulate->add_option("--h", h, "growth rate")->capture_default_str();
  simulate->add_option("--steps", steps, "number of explicit steps")->capture_default_str();
  simulate->add_flag("--dt-sweep", dt_sweep, "also run with halved dt and report the order");
  simulate->add_option("--outdir", outdir, "directory for CSV output")->capture_default_str();

  // export ---------------------------------------------------------------
  auto* export_cmd = app.add_subcommand("export", "write figure-panel data as CSV");
  std::string figure;
  export_cmd->add_option("figure", figure, "F1 .. F6")->required();
  export_cmd->add_option("--outdir", outdir, "directory for CSV output")->capture_default_str();

  // grammar ---------------------------------------------------------------
  auto* grammar = app.add_subcommand("grammar", "print the expression grammar");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  }

  StringOut out;
  int ok = 1;
  popsym_status st = POPSYM_OK;

  if (*tables) {
    st = popsym_tables(which.c_str(), format.c_str(), check ? 1 : 0, &out.s, &ok);
  } else if (*classify) {
    const char* a[5] = {alpha[0].c_str(), alpha[1].c_str(), alpha[2].c_str(), alpha[3].c_str(),
                        alpha[4].c_str()};
    st = popsym_classify(a, theta.c_str(), verify_flag ? 1 : 0, format.c_str(), &out.s, &ok);
  } else if (*verify) {
    st = popsym_verify(scope.c_str(), format.c_str(),
                       h_value.empty() ? nullptr : h_value.c_str(), theta.c_str(), seed,
                       expectations.empty() ? nullptr : expectations.c_str(), &out.s, &ok);
  } else if (*simulate) {
    st = popsym_simulate(family.c_str(), theta.c_str(), h, steps, dt_sweep ? 1 : 0,
                         outdir.c_str(), format.c_str(), &out.s, &ok);
  } else if (*export_cmd) {
    st = popsym_export_figure(figure.c_str(), outdir.c_str(), format.c_str(), &out.s, &ok);
  } else if (*grammar) {
    st = popsym_grammar(&out.s);
  }

  return finish(st, out, ok);
}
