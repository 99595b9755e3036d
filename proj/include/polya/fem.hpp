#pragma once

// Conforming P1 finite elements for the Laplace eigenproblem on simple
// polygons (and on intervals). Discrete eigenvalues bound the true ones
// from above.

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "polya/geometry.hpp"
#include "polya/spectrum.hpp"

namespace polya::fem {

using geometry::Vec2;
using spectra::Bc;
using spectra::Spectrum;

struct Mesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;  // counter-clockwise
  std::vector<int> boundary_nodes;            // sorted
  int refinement_level = 0;

  std::size_t edge_count() const;
  double max_edge_length() const;
};

// Ear clipping of the polygon followed by `refinement` rounds of
// midpoint subdivision (each triangle splits into four).
Mesh triangulate(const std::vector<Vec2>& polygon, int refinement);

// Same, for a planar domain that flattens to a single polygon.
Mesh triangulate(const geometry::Domain& dom, int refinement);

using Element = std::array<std::array<double, 3>, 3>;
Element element_stiffness(Vec2 a, Vec2 b, Vec2 c);
Element element_mass(Vec2 a, Vec2 b, Vec2 c);

// Compressed sparse row storage; the kernels in polya/simd.hpp operate on it.
struct CsrMatrix {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> cols;
  std::vector<double> vals;

  void multiply(const double* x, double* y) const;
  double entry(int i, int j) const;
};

struct AssembledPencil {
  CsrMatrix stiffness;  // same sparsity pattern as mass
  CsrMatrix mass;
  std::vector<int> dof_of_node;  // -1 for eliminated nodes
  std::vector<int> boundary_nodes;
  int dim = 2;
  // Lower bound on the smallest eigenvalue of the mass matrix.
  double mass_lower_bound = 0.0;

  int dofs() const { return stiffness.n; }
};

AssembledPencil assemble(const Mesh& mesh);

// Uniform P1 discretisation of (0, length) with `elements` cells.
AssembledPencil assemble_interval(double length, int elements);

// Removes boundary rows and columns (homogeneous Dirichlet condition).
AssembledPencil restrict_dirichlet(const AssembledPencil& p);

struct EigenSolution {
  std::vector<double> values;
  std::vector<double> residuals;     // ||K u - mu M u||_2 with ||u||_M = 1
  std::vector<double> error_bounds;  // residual / sqrt(lambda_min(M))
  std::vector<Eigen::VectorXd> vectors;
  int operator_applications = 0;
};

inline constexpr double kDefaultTol = 1e-8;

// Smallest m eigenpairs of K u = mu M u for an already restricted pencil.
EigenSolution solve_pencil(const AssembledPencil& p, int m, double tol = kDefaultTol);

// Applies the boundary condition, solves, and packages a FEM spectrum.
Spectrum solve_smallest(const AssembledPencil& p, Bc bc, int m, double tol = kDefaultTol,
                        int level = -1);

// Number of discrete eigenvalues strictly below lambda, from the inertia
// of K - lambda M (Sylvester's law).
std::size_t count_below_inertia(const AssembledPencil& p, double lambda);

// All discrete eigenvalues below lambda_max for a planar polygonal domain
// (pieces of a disjoint union are solved separately and merged).
Spectrum fem_spectrum_below(const geometry::Domain& dom, Bc bc, int refinement,
                            double lambda_max, double tol = kDefaultTol);

// As above, with each error bound widened by the Richardson estimate
// lambda_h - lambda_extrapolated computed from levels refinement-1 and
// refinement (second order assumed). Modes that move by more than 10%
// between the two levels get the whole jump as their error.
Spectrum fem_spectrum_estimated(const geometry::Domain& dom, Bc bc, int refinement,
                                double lambda_max, double tol = kDefaultTol);

// Estimated spectrum whose cutoff grows from 1.25 lambda + 1 (by 1.5x, at
// most six times) until the widened bound of the last value clears lambda,
// so that counts at lambda are not left open. Stops early when the mesh
// runs out of modes.
Spectrum fem_spectrum_covering(const geometry::Domain& dom, Bc bc, int refinement, double lambda,
                               double tol = kDefaultTol);

struct ConvergenceTable {
  std::vector<int> levels;
  std::vector<double> h;
  std::vector<std::vector<double>> values;  // [level][mode]
  std::vector<double> observed_order;       // per mode (NaN with 2 levels)
  std::vector<double> extrapolated;         // per mode
};

ConvergenceTable convergence_study(const geometry::Domain& dom, Bc bc, int k,
                                   const std::vector<int>& levels, double tol = kDefaultTol);

}  // namespace polya::fem
