#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "report/report.hpp"
#include "symexpr/ratfunc.hpp"

namespace popsym::suites {

using symexpr::Rational;

struct Options {
  std::optional<double> h;       // pin the growth rate; unset = symbolic
  Rational theta = Rational(1, 2);
  std::uint64_t seed = 0x5eed5eedULL;
};

report::Report verify_symmetries(const Options& opts);
report::Report verify_solutions(const Options& opts);
report::Report verify_adjoint(const Options& opts);
report::Report verify_conservation(const Options& opts);
std::vector<report::Report> verify_scope(const std::string& scope, const Options& opts);

// table emission and transcription checks
std::string render_table(const std::string& which, report::Format f);
report::Report check_table(const std::string& which);

// optimal-system classification entry point
struct ClassifyRun {
  std::string rendered;
  bool roundtrip_checked = false;
  bool roundtrip_ok = false;
};
ClassifyRun run_classify(const std::array<Rational, 5>& alpha, const Rational& theta,
                         bool verify, report::Format f);

// simulation and figure-data export
struct SimulateOptions {
  std::string family = "S2";
  Rational theta = Rational(1, 2);
  double h = 0;
  int steps = 100;
  bool dt_sweep = false;
  std::string outdir = ".";
};
report::Report run_simulate(const SimulateOptions& o, std::vector<std::string>& files);

report::Report run_export(const std::string& figure, const std::string& outdir,
                          std::vector<std::string>& files);

}  // namespace popsym::suites
