#pragma once

// Bounded open regions in R^d: interval unions, boxes, simple polygons,
// isometric copies, disjoint unions and Cartesian products. Domains are
// immutable values with shared structure, so copying one is cheap.

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace polya::geometry {

using Point = Eigen::VectorXd;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// Orthogonal linear part plus translation: x -> Q x + t.
class Isometry {
 public:
  Isometry(Eigen::MatrixXd linear, Eigen::VectorXd translation);

  static Isometry identity(int dim);
  static Isometry translation(const Eigen::VectorXd& t);
  static Isometry rotation(double angle, Vec2 center = {});
  // Mirror across the line through `point` with direction angle `angle`.
  static Isometry reflection(double angle, Vec2 point = {});
  static Isometry point_reflection(Vec2 center);

  int dim() const { return static_cast<int>(translation_.size()); }
  const Eigen::MatrixXd& linear() const { return linear_; }
  const Eigen::VectorXd& translation() const { return translation_; }
  double det() const { return linear_.determinant(); }

  Point apply(const Point& x) const { return linear_ * x + translation_; }
  Vec2 apply(Vec2 p) const;
  Isometry inverse() const;
  // (*this)(inner(x))
  Isometry compose(const Isometry& inner) const;

 private:
  Eigen::MatrixXd linear_;
  Eigen::VectorXd translation_;
};

class Domain;

struct IntervalUnion {
  std::vector<Interval> intervals;  // sorted, pairwise disjoint
};

struct Box {
  std::vector<Interval> sides;
  int dim() const { return static_cast<int>(sides.size()); }
  double measure() const;
  bool contains_closed(const Point& x, double tol = 0.0) const;
};

struct Polygon {
  std::vector<Vec2> vertices;  // counter-clockwise, simple
};

struct CopyOf {
  Isometry iso;
  std::shared_ptr<const Domain> base;
  // Transformed outline, computed once when the base flattens to polygons.
  std::vector<std::vector<Vec2>> outline;
};

struct DisjointUnion {
  std::vector<Domain> members;
};

struct Product {
  std::shared_ptr<const Domain> first;
  std::shared_ptr<const Domain> second;
};

enum class Kind { interval_union, box, polygon, copy, disjoint_union, product };

class Domain {
 public:
  using Rep = std::variant<IntervalUnion, Box, Polygon, CopyOf, DisjointUnion, Product>;

  static Domain interval(double lo, double hi);
  static Domain interval_union(std::vector<Interval> intervals);
  static Domain box(std::vector<Interval> sides);
  // (-half, half)^dim
  static Domain cube(double half, int dim);
  // Accepts either orientation; stores counter-clockwise.
  static Domain polygon(std::vector<Vec2> vertices);
  static Domain copy(const Isometry& iso, const Domain& base);
  static Domain disjoint_union(std::vector<Domain> members);
  static Domain product(const Domain& first, const Domain& second);

  Kind kind() const;
  int dim() const { return dim_; }
  const Rep& rep() const { return *rep_; }

  template <class T>
  const T* as() const {
    return std::get_if<T>(rep_.get());
  }

 private:
  Domain(std::shared_ptr<const Rep> rep, int dim) : rep_(std::move(rep)), dim_(dim) {}
  std::shared_ptr<const Rep> rep_;
  int dim_ = 0;
};

double measure(const Domain& dom);
double diameter(const Domain& dom);
Box bounding_box(const Domain& dom);

// Boundary length of a 2D domain (sum over flattened pieces).
double perimeter(const Domain& dom);

Domain apply_isometry(const Isometry& iso, const Domain& dom);

// Open-set membership; points within `tol` of the boundary are outside.
inline constexpr double kBoundaryTol = 1e-9;
bool contains(const Domain& dom, const Point& x, double tol = kBoundaryTol);

// Corner points whose convex hull equals the hull of the domain.
std::vector<Point> extreme_points(const Domain& dom);

// Counter-clockwise outlines of the pieces of a 2D domain, or nullopt when
// some piece is not polygonal.
std::optional<std::vector<std::vector<Vec2>>> flatten_polygons(const Domain& dom);

double polygon_signed_area(const std::vector<Vec2>& v);
bool polygon_is_simple(const std::vector<Vec2>& v);

struct CoverageReport {
  Box window;
  int resolution = 0;
  std::uint64_t samples = 0;
  double covered_fraction = 0.0;
  double overlap_fraction = 0.0;
  int max_multiplicity = 0;
};

// Cell-centred regular sampling of `window` at `resolution` points per
// axis, counting how many members contain each sample.
CoverageReport coverage_report(const std::vector<Domain>& doms, const Box& window,
                               int resolution);

}  // namespace polya::geometry
