#pragma once

// Laplace spectra with known closed forms: intervals, boxes, products and
// disjoint unions of these, plus lattice-point counting for the Neumann
// cube and the Weyl leading term.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polya/geometry.hpp"

namespace polya::spectra {

enum class Bc { dirichlet, neumann };
enum class Method { exact, fem };

std::string bc_name(Bc bc);
Bc parse_bc(const std::string& s);

struct Spectrum {
  Bc bc = Bc::neumann;
  Method method = Method::exact;
  std::vector<double> values;  // nondecreasing, with multiplicity
  // True eigenvalue k lies in [values[k] - errors[k], values[k]] (0 for exact).
  std::vector<double> errors;
  double domain_measure = 0.0;
  int dim = 0;
  // Every eigenvalue strictly below this is listed.
  double complete_below = std::numeric_limits<double>::infinity();
  // FEM provenance: refinement level used, -1 for exact spectra.
  int fem_level = -1;
  // FEM error bounds include a Richardson discretization estimate.
  bool discretization_estimated = false;

  std::size_t size() const { return values.size(); }
  bool is_exact() const { return method == Method::exact; }
};

// Throws InputError if ordering, sign or size invariants fail.
void check_spectrum(const Spectrum& s);

// omega_d = pi^{d/2} / Gamma(d/2 + 1) via omega_d = omega_{d-2} * 2 pi / d.
double unit_ball_volume(int d);

// omega_d |Omega| lambda^{d/2} / (2 pi)^d
double weyl_term(double lambda, double measure, int d);

// omega_d pi^{-d} L^d lambda^{d/2}
double cube_lower_bound(double lambda, double L, int d);

// First `count` eigenvalues of an interval of the given length.
Spectrum interval_spectrum(double length, Bc bc, int count);

// All eigenvalues below lambda_max of the box with these half-widths.
Spectrum box_spectrum(std::span<const double> half_widths, Bc bc, double lambda_max);

// #{n in N_0^d : |n| < 2 L sqrt(lambda) / pi}, enumerated exactly.
std::uint64_t count_box_neumann(double lambda, double L, int d);

// Spectrum {0} of a point, the neutral factor for products.
Spectrum point_spectrum(Bc bc);

// Pairwise sums below lambda_max (separation of variables).
Spectrum product_spectrum(const Spectrum& a, const Spectrum& b, double lambda_max);

double bessel_j0(double x);
// First positive zero of J_0 by bisection on [2, 3].
double bessel_j0_first_zero();
// First Dirichlet eigenvalue of the planar disk.
double ball_dirichlet_lambda1(double radius);

// Closed-form spectrum below lambda_max when every piece of the domain is
// an interval, a box or a product of such; nullopt for polygons.
std::optional<Spectrum> exact_spectrum(const geometry::Domain& dom, Bc bc, double lambda_max);

}  // namespace polya::spectra
