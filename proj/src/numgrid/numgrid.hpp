#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solutions/solutions.hpp"

namespace popsym::numgrid {

using symexpr::Rational;

struct Grid2D {
  int nx = 0, ny = 0;
  double dx = 0, dy = 0;
  double x0 = 0, y0 = 0;

  Grid2D() = default;
  Grid2D(int nx_, int ny_, double dx_, double dy_, double x0_, double y0_);

  double x(int i) const { return x0 + i * dx; }
  double y(int j) const { return y0 + j * dy; }
};

struct Field {
  int nx = 0, ny = 0;
  std::vector<double> v;
  double time = 0;

  Field() = default;
  Field(int nx_, int ny_, double t) : nx(nx_), ny(ny_), v(nx_ * ny_, 0.0), time(t) {}
  double& at(int i, int j) { return v[static_cast<std::size_t>(j) * nx + i]; }
  double at(int i, int j) const { return v[static_cast<std::size_t>(j) * nx + i]; }
};

enum class Boundary { ExactDirichlet, ZeroFlux };

using ParamMap = std::map<std::string, double>;

struct SimConfig {
  double dt = 0;
  int steps = 0;
  double h = 0;
  Rational theta = Rational(1, 2);
  Boundary boundary = Boundary::ExactDirichlet;
  bool clamp_negative = true;
  // cells outside the annulus (radii about the origin) are held at the exact
  // solution; empty = the whole rectangle evolves
  std::optional<std::pair<double, double>> annulus;
};

// compiled point evaluator phi(x, y, t) for a closed-form family
using FieldFn = std::function<double(double, double, double)>;
FieldFn make_sampler(solutions::FamilyId fam, const ParamMap& params, const Rational& theta);

Field sample(const FieldFn& fn, const Grid2D& g, double t);
Field sample(solutions::FamilyId fam, const Grid2D& g, double t, const ParamMap& params,
             const Rational& theta);

// max-abs equation residual over interior stencil points of the sampled
// closed form; forward time difference with dt = 1e-6 * t
double residual_numeric(const FieldFn& fn, const Grid2D& g, double t, double h,
                        const Rational& theta);

// one explicit conservative Euler step: phi += dt (Lap_h(phi^2) - h phi^theta);
// the caller fills boundary values beforehand. Throws DomainError when the
// stability guard dt <= 0.2 min(dx,dy)^2 / (4 max|2 phi|) is violated or a
// non-finite value appears.
void step(Field& f, const SimConfig& cfg, const Grid2D& g);

double total_mass(const Field& f, const Grid2D& g);

struct EvolveReport {
  double linf = 0, l2 = 0;
  int steps = 0;
};

// integrates from sample(t0) to t1 = t0 + steps*dt with exact-Dirichlet
// boundary values imposed at the start of each step, then compares against
// the exact field at t1 over the whole grid
EvolveReport evolve_and_compare(solutions::FamilyId fam, const Grid2D& g, SimConfig cfg,
                                double t0, double t1, const ParamMap& params);

// families admissible for time integration: negative-density families make
// the effective diffusivity 2 phi negative (backward parabolic), and the
// final dilation family has no real-valued sampling domain
bool integrable(solutions::FamilyId fam);
std::string integrability_note(solutions::FamilyId fam);

}  // namespace popsym::numgrid
