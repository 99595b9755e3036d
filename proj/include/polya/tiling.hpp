#pragma once

// Periodic plane tilings by isometric copies of one prototile, their
// sampled validation, and the inner/boundary copy bookkeeping used when a
// large cube (-L, L)^d is filled with copies.

#include <optional>
#include <string>
#include <vector>

#include "polya/geometry.hpp"

namespace polya::tiling {

using geometry::Box;
using geometry::Domain;
using geometry::Isometry;

class Lattice {
 public:
  explicit Lattice(std::vector<Eigen::VectorXd> basis);
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Eigen::VectorXd>& basis() const { return basis_; }
  Eigen::MatrixXd matrix() const;  // basis vectors as columns
  double covolume() const;
  // Coefficients of x in the basis.
  Eigen::VectorXd coordinates(const Eigen::VectorXd& x) const;

 private:
  std::vector<Eigen::VectorXd> basis_;
};

enum class Kind { general, translational, regular };
enum class Shape { square, rectangle, right_triangle, equilateral_triangle, hexagon, l_tromino };

std::string kind_name(Kind k);
Kind parse_kind(const std::string& s);
std::string shape_name(Shape s);
Shape parse_shape(const std::string& s);

struct Tiling {
  std::optional<Shape> shape;
  double scale = 1.0;
  Domain prototile;
  std::vector<Isometry> placements;
  std::optional<Lattice> lattice;
  Kind kind = Kind::general;
  // For regular tilings: the l isometries whose copies fill one supertile.
  std::vector<Isometry> motif;
  Box window;

  std::vector<Domain> copies() const;
};

// All catalog copies whose closure meets the closed window.
Tiling generate_tiling(Shape shape, double scale, const Box& window);

// Whether the closure of a planar domain meets the closed box.
bool closure_meets_box(const Domain& dom, const Box& box);

struct TilingVerdict {
  geometry::CoverageReport coverage;
  double perimeter_estimate = 0.0;
  double overlap_threshold = 0.0;
  double uncovered_threshold = 0.0;
  bool structure_ok = true;  // placements respect the declared kind
  std::string structure_note;
  bool pass = false;
};

TilingVerdict validate_tiling(const Tiling& t, const Box& window, int resolution);

struct IndexSets {
  double L = 0.0;
  double R = 0.0;
  std::vector<std::size_t> I;  // copies inside (-L+R, L-R)^d
  std::vector<std::size_t> J;  // copies meeting (-L, L)^d
  std::vector<std::size_t> K;  // J \ I
};

IndexSets index_sets(const Tiling& t, double L);

struct IndexSetBounds {
  std::size_t count_I = 0;
  std::size_t count_K = 0;
  double bound_I = 0.0;  // 2^d (L-R)^d / |Omega|
  double bound_K = 0.0;  // 2^d ((L+R)^d - (L-2R)^d) / |Omega|
};

// Throws BoundViolation when either count exceeds its volume bound.
IndexSetBounds index_set_bounds(const IndexSets& is, double prototile_measure, int d);

// Window (-L-R-pad, L+R+pad)^2 big enough for index_sets at this L.
Box index_window(double L, double R);

// Area of the intersection of a simple polygon with an axis-aligned box.
double clipped_area(const std::vector<geometry::Vec2>& poly, const Box& box);

}  // namespace polya::tiling
