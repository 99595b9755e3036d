#pragma once

// Nodal fields on the grid h Z^d restricted to [-L, L]^d minus a closed
// union of grid-aligned boxes Q, the coordinate-reflection extension to
// [-L-R, L+R]^d, and a discrete W_2^1 norm. d is 1 or 2.

#include <cstdint>
#include <functional>
#include <vector>

#include "polya/geometry.hpp"
#include "polya/inequality.hpp"

namespace polya::extension {

using geometry::Box;
using geometry::Domain;
using geometry::Point;

struct GridField {
  int dim = 1;
  double h = 0.0;
  int half_cells = 0;  // the grid covers [-half_cells*h, half_cells*h]^dim
  std::vector<double> values;
  std::vector<std::uint8_t> mask;  // 1 = node belongs to the domain

  double half_width() const { return half_cells * h; }
  int nodes_per_axis() const { return 2 * half_cells + 1; }
  std::size_t size() const;
  Point node(std::size_t flat) const;
  // Throws InputError if sizes or spacing are inconsistent.
  void validate() const;
};

// Samples f at the nodes of [-L, L]^dim. Nodes in a closed hole box are
// masked out; hole corners must lie on the grid.
GridField make_field(int dim, double h, double L, const std::function<double(const Point&)>& f,
                     const std::vector<Box>& holes = {});

// Coordinatewise fold of the pad (-L-R, L+R)^d onto [-L, L]^d.
Point reflect_point(const Point& x, double L, double R);

// Values on [-L-R, L+R]^d copied from the reflected nodes. R must be a
// multiple of h, R <= L, and every masked node must lie in (-L+R, L-R)^d.
GridField extend_field(const GridField& f, double R);

// Trapezoidal L2 term plus forward-difference gradient energy; a
// difference contributes only when both of its nodes are active.
double sobolev_norm_sq(const GridField& f);

// Restriction of an extended field back to the original grid.
GridField restrict_field(const GridField& extended, int half_cells);

struct ExtensionCheck {
  int dim = 1;
  double h = 0.0;
  double L = 0.0;
  double R = 0.0;
  double original = 0.0;   // ||f||^2
  double extended = 0.0;   // ||Pi f||^2
  double bound = 0.0;      // 2^d ||f||^2
  double slack = 0.0;      // C h with C = 10 max|f|
  double ratio = 0.0;      // extended / original
  bool within_bound = false;  // extended <= bound
  bool within_slack = false;  // extended <= bound + slack
  bool restriction_exact = false;
  // pass = within_slack and restriction_exact; within_slack but not
  // within_bound is reported as a warning.
  bool pass = false;
  bool warning = false;
};

ExtensionCheck check_extension_bound(const GridField& f, double R);

// Random smooth field: a sum of `terms` products of cosines with random
// frequencies and phases, from the given seed. If `with_hole` and d = 2, a
// random grid-aligned box inside (-L+R, L-R)^2 is masked out.
GridField random_trig_field(int dim, double h, double L, double R, std::uint64_t seed, bool with_hole,
                            int terms = 4);

struct TransferOptions {
  int refinement = 4;  // FEM level when a domain has no closed-form spectrum
  double tol = 1e-8;
};

// N_N(lambda, inner) <= N_N(norm_sq_bound (lambda + 1), outer) at each lambda.
inequality::InequalityReport check_count_transfer(const std::vector<double>& lambdas, const Domain& inner,
                                                  const Domain& outer, double norm_sq_bound,
                                                  const TransferOptions& opt = {});

}  // namespace polya::extension
