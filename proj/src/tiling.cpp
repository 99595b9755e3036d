#include "polya/tiling.hpp"

#include <algorithm>
#include <cmath>

#include "polya/error.hpp"

namespace polya::tiling {

using geometry::Interval;
using geometry::Vec2;

// ---------------------------------------------------------------- Lattice

Lattice::Lattice(std::vector<Eigen::VectorXd> basis) : basis_(std::move(basis)) {
  const int d = dim();
  if (d == 0) throw InputError("lattice: empty basis");
  for (const auto& v : basis_)
    if (v.size() != d) throw InputError("lattice: basis vectors must have length d");
  if (!(std::abs(matrix().determinant()) > 0))
    throw InputError("lattice: basis vectors are linearly dependent");
}

Eigen::MatrixXd Lattice::matrix() const {
  Eigen::MatrixXd m(dim(), dim());
  for (int j = 0; j < dim(); ++j) m.col(j) = basis_[j];
  return m;
}

double Lattice::covolume() const { return std::abs(matrix().determinant()); }

Eigen::VectorXd Lattice::coordinates(const Eigen::VectorXd& x) const {
  return matrix().partialPivLu().solve(x);
}

// ---------------------------------------------------------------- names

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::general: return "general";
    case Kind::translational: return "translational";
    case Kind::regular: return "regular";
  }
  return "general";
}

Kind parse_kind(const std::string& s) {
  if (s == "general") return Kind::general;
  if (s == "translational") return Kind::translational;
  if (s == "regular") return Kind::regular;
  throw InputError("unknown tiling kind '" + s + "'");
}

std::string shape_name(Shape s) {
  switch (s) {
    case Shape::square: return "square";
    case Shape::rectangle: return "rectangle";
    case Shape::right_triangle: return "right_triangle";
    case Shape::equilateral_triangle: return "equilateral_triangle";
    case Shape::hexagon: return "hexagon";
    case Shape::l_tromino: return "l_tromino";
  }
  return "square";
}

Shape parse_shape(const std::string& s) {
  for (Shape sh : {Shape::square, Shape::rectangle, Shape::right_triangle,
                   Shape::equilateral_triangle, Shape::hexagon, Shape::l_tromino})
    if (shape_name(sh) == s) return sh;
  throw InputError("unknown tiling shape '" + s + "'");
}

std::vector<Domain> Tiling::copies() const {
  std::vector<Domain> out;
  out.reserve(placements.size());
  for (const auto& p : placements) out.push_back(geometry::apply_isometry(p, prototile));
  return out;
}

// ---------------------------------------------------------------- geometry helpers

namespace {

bool point_in_closed_polygon(Vec2 p, const std::vector<Vec2>& v) {
  const std::size_t n = v.size();
  int wn = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % n];
    const double cross = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
    const bool on_seg = cross == 0.0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
                        std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
    if (on_seg) return true;
    if (a.y <= p.y) {
      if (b.y > p.y && cross > 0) ++wn;
    } else if (b.y <= p.y && cross < 0) {
      --wn;
    }
  }
  return wn != 0;
}

bool closed_segments_meet(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  auto orient = [](Vec2 a, Vec2 b, Vec2 c) {
    const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return (v > 0) - (v < 0);
  };
  auto within = [](Vec2 a, Vec2 b, Vec2 c) {
    return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= c.y &&
           c.y <= std::max(a.y, b.y);
  };
  const int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  return (o1 == 0 && within(p1, p2, q1)) || (o2 == 0 && within(p1, p2, q2)) ||
         (o3 == 0 && within(q1, q2, p1)) || (o4 == 0 && within(q1, q2, p2));
}

bool polygon_meets_box(const std::vector<Vec2>& v, const Box& box) {
  const Interval bx = box.sides[0], by = box.sides[1];
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& p : v) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  if (x1 < bx.lo || x0 > bx.hi || y1 < by.lo || y0 > by.hi) return false;
  for (const auto& p : v)
    if (p.x >= bx.lo && p.x <= bx.hi && p.y >= by.lo && p.y <= by.hi) return true;
  const std::vector<Vec2> corners{{bx.lo, by.lo}, {bx.hi, by.lo}, {bx.hi, by.hi}, {bx.lo, by.hi}};
  for (const auto& c : corners)
    if (point_in_closed_polygon(c, v)) return true;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t k = 0; k < 4; ++k)
      if (closed_segments_meet(v[i], v[(i + 1) % v.size()], corners[k], corners[(k + 1) % 4]))
        return true;
  return false;
}

struct Catalog {
  Domain prototile;
  std::vector<Eigen::VectorXd> basis;
  std::vector<Isometry> motif;
  Kind kind;
};

Eigen::VectorXd vec(double x, double y) { return Eigen::Vector2d(x, y); }

Catalog catalog(Shape shape, double s) {
  const double r3 = std::sqrt(3.0);
  const Isometry id = Isometry::identity(2);
  switch (shape) {
    case Shape::square:
      return {Domain::box({{0, s}, {0, s}}), {vec(s, 0), vec(0, s)}, {id}, Kind::translational};
    case Shape::rectangle:
      return {Domain::box({{0, 2 * s}, {0, s}}), {vec(2 * s, 0), vec(0, s)}, {id},
              Kind::translational};
    case Shape::hexagon: {
      std::vector<Vec2> v;
      for (int k = 0; k < 6; ++k) {
        const double a = k * M_PI / 3.0;
        v.push_back({s * std::cos(a), s * std::sin(a)});
      }
      // exact values where the trig functions round
      v[0] = {s, 0};
      v[1] = {s / 2, s * r3 / 2};
      v[2] = {-s / 2, s * r3 / 2};
      v[3] = {-s, 0};
      v[4] = {-s / 2, -s * r3 / 2};
      v[5] = {s / 2, -s * r3 / 2};
      return {Domain::polygon(v), {vec(1.5 * s, s * r3 / 2), vec(0, s * r3)}, {id},
              Kind::translational};
    }
    case Shape::right_triangle:
      return {Domain::polygon({{0, 0}, {s, 0}, {0, s}}),
              {vec(s, 0), vec(0, s)},
              {id, Isometry::point_reflection({s / 2, s / 2})},
              Kind::regular};
    case Shape::equilateral_triangle:
      return {Domain::polygon({{0, 0}, {s, 0}, {s / 2, s * r3 / 2}}),
              {vec(s, 0), vec(s / 2, s * r3 / 2)},
              {id, Isometry::point_reflection({0.75 * s, s * r3 / 4})},
              Kind::regular};
    case Shape::l_tromino: {
      // Two trominoes fill a 2x3 block; the block and its mirror image
      // across x = 2s form the 4s x 3s supertile.
      const Isometry half_turn = Isometry::point_reflection({s, 1.5 * s});
      const Isometry mirror = Isometry::reflection(M_PI / 2, {2 * s, 0});
      return {Domain::polygon({{0, 0}, {2 * s, 0}, {2 * s, s}, {s, s}, {s, 2 * s}, {0, 2 * s}}),
              {vec(4 * s, 0), vec(0, 3 * s)},
              {id, half_turn, mirror, mirror.compose(half_turn)},
              Kind::regular};
    }
  }
  throw InputError("unknown tiling shape");
}

}  // namespace

bool closure_meets_box(const Domain& dom, const Box& box) {
  auto pieces = geometry::flatten_polygons(dom);
  if (!pieces) throw InputError("tiling: only planar polygonal prototiles are supported");
  for (const auto& v : *pieces)
    if (polygon_meets_box(v, box)) return true;
  return false;
}

// ---------------------------------------------------------------- generation

Tiling generate_tiling(Shape shape, double scale, const Box& window) {
  if (!(scale > 0) || !std::isfinite(scale)) throw InputError("tiling: scale must be positive");
  if (window.dim() != 2) throw InputError("tiling: window must be two-dimensional");
  for (const auto& s : window.sides)
    if (!(s.lo < s.hi)) throw InputError("tiling: empty window");

  Catalog c = catalog(shape, scale);
  Lattice lattice(c.basis);

  // Lattice coefficient range: window corners padded by the supertile size.
  double pad = 0.0;
  for (const auto& m : c.motif) {
    const auto bb = geometry::bounding_box(geometry::apply_isometry(m, c.prototile));
    for (const auto& side : bb.sides) pad = std::max({pad, std::abs(side.lo), std::abs(side.hi)});
  }
  for (const auto& v : c.basis) pad += v.norm();
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(2, INFINITY);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(2, -INFINITY);
  for (double x : {window.sides[0].lo - pad, window.sides[0].hi + pad})
    for (double y : {window.sides[1].lo - pad, window.sides[1].hi + pad}) {
      const Eigen::VectorXd k = lattice.coordinates(vec(x, y));
      lo = lo.cwiseMin(k);
      hi = hi.cwiseMax(k);
    }

  Tiling t{shape, scale, c.prototile, {}, lattice, c.kind, c.motif, window};
  for (long n1 = static_cast<long>(std::floor(lo(0))) - 1; n1 <= static_cast<long>(std::ceil(hi(0))) + 1; ++n1)
    for (long n2 = static_cast<long>(std::floor(lo(1))) - 1; n2 <= static_cast<long>(std::ceil(hi(1))) + 1; ++n2) {
      const Eigen::VectorXd shift = n1 * c.basis[0] + n2 * c.basis[1];
      for (const auto& m : c.motif) {
        Isometry place = Isometry::translation(shift).compose(m);
        if (closure_meets_box(geometry::apply_isometry(place, c.prototile), window))
          t.placements.push_back(std::move(place));
      }
    }
  return t;
}

// ---------------------------------------------------------------- validation

namespace {

bool is_lattice_vector(const Lattice& lat, const Eigen::VectorXd& v) {
  const Eigen::VectorXd k = lat.coordinates(v);
  for (int j = 0; j < k.size(); ++j)
    if (std::abs(k(j) - std::round(k(j))) > 1e-9) return false;
  return true;
}

bool same_isometry(const Isometry& a, const Isometry& b) {
  return (a.linear() - b.linear()).cwiseAbs().maxCoeff() < 1e-9 &&
         (a.translation() - b.translation()).cwiseAbs().maxCoeff() < 1e-9;
}

void check_structure(const Tiling& t, TilingVerdict& v) {
  if (t.kind == Kind::general) return;
  if (!t.lattice) {
    v.structure_ok = false;
    v.structure_note = "declared kind needs a lattice";
    return;
  }
  const int d = t.prototile.dim();
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);
  for (std::size_t i = 0; i < t.placements.size(); ++i) {
    const Isometry& p = t.placements[i];
    if (t.kind == Kind::translational) {
      if ((p.linear() - eye).cwiseAbs().maxCoeff() > 1e-9 ||
          !is_lattice_vector(*t.lattice, p.translation())) {
        v.structure_ok = false;
        v.structure_note = "placement " + std::to_string(i) + " is not a lattice translation";
        return;
      }
    } else {
      bool found = false;
      for (const auto& m : t.motif) {
        if ((p.linear() - m.linear()).cwiseAbs().maxCoeff() > 1e-9) continue;
        const Eigen::VectorXd shift = p.translation() - m.translation();
        if (is_lattice_vector(*t.lattice, shift) &&
            same_isometry(Isometry::translation(shift).compose(m), p)) {
          found = true;
          break;
        }
      }
      if (!found) {
        v.structure_ok = false;
        v.structure_note =
            "placement " + std::to_string(i) + " is not a lattice translate of a motif copy";
        return;
      }
    }
  }
}

}  // namespace

TilingVerdict validate_tiling(const Tiling& t, const Box& window, int resolution) {
  TilingVerdict v;
  const auto copies = t.copies();
  v.coverage = geometry::coverage_report(copies, window, resolution);
  const int d = window.dim();
  double boundary = 0.0;
  for (const auto& c : copies)
    if (closure_meets_box(c, window)) boundary += geometry::perimeter(c);
  const double mean_side = std::sqrt(window.sides[0].length() * window.sides[1].length());
  // Boundary length in units of the window side: the fraction of samples
  // that can land on copy boundaries is about this divided by resolution.
  v.perimeter_estimate = boundary / mean_side;
  v.overlap_threshold = 2.0 * d / resolution;
  v.uncovered_threshold = 2.0 * d * v.perimeter_estimate / resolution;
  check_structure(t, v);
  const double uncovered = 1.0 - v.coverage.covered_fraction;
  v.pass = v.coverage.overlap_fraction <= v.overlap_threshold &&
           uncovered <= v.uncovered_threshold && v.structure_ok;
  return v;
}

// ---------------------------------------------------------------- index sets

double clipped_area(const std::vector<Vec2>& poly, const Box& box) {
  std::vector<Vec2> cur = poly;
  // Sutherland-Hodgman against the four half-planes of the box.
  for (int axis = 0; axis < 2; ++axis)
    for (int side = 0; side < 2; ++side) {
      const double bound = side == 0 ? box.sides[axis].lo : box.sides[axis].hi;
      auto coord = [axis](Vec2 p) { return axis == 0 ? p.x : p.y; };
      auto keep = [&](Vec2 p) { return side == 0 ? coord(p) >= bound : coord(p) <= bound; };
      std::vector<Vec2> next;
      for (std::size_t i = 0; i < cur.size(); ++i) {
        const Vec2 a = cur[i], b = cur[(i + 1) % cur.size()];
        const bool ka = keep(a), kb = keep(b);
        if (ka) next.push_back(a);
        if (ka != kb) {
          const double t = (bound - coord(a)) / (coord(b) - coord(a));
          next.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
      }
      cur = std::move(next);
      if (cur.empty()) return 0.0;
    }
  return std::abs(geometry::polygon_signed_area(cur));
}

Box index_window(double L, double R) {
  const double w = L + R + 1e-9 * (1.0 + L);
  return Box{{{-w, w}, {-w, w}}};
}

IndexSets index_sets(const Tiling& t, double L) {
  const double R = geometry::diameter(t.prototile);
  if (!(L > 2 * R)) throw InputError("index sets: need L > 2R (R = prototile diameter)");
  if (t.prototile.dim() != 2) throw InputError("index sets: planar tilings only");
  for (const auto& s : t.window.sides)
    if (s.lo > -L || s.hi < L)
      throw InputError("index sets: tiling window does not cover the cube (-L, L)^d");

  const double area = geometry::measure(t.prototile);
  const Box inner{{{-L + R, L - R}, {-L + R, L - R}}};
  const Box outer{{{-L, L}, {-L, L}}};
  IndexSets is{L, R, {}, {}, {}};
  const auto copies = t.copies();
  for (std::size_t j = 0; j < copies.size(); ++j) {
    const auto pieces = geometry::flatten_polygons(copies[j]);
    bool inside = true;
    double met = 0.0;
    for (const auto& v : *pieces) {
      for (const auto& p : v)
        if (p.x < inner.sides[0].lo || p.x > inner.sides[0].hi || p.y < inner.sides[1].lo ||
            p.y > inner.sides[1].hi)
          inside = false;
      met += clipped_area(v, outer);
    }
    const bool meets = met > 1e-12 * area;
    if (inside) is.I.push_back(j);
    if (meets) is.J.push_back(j);
    if (meets && !inside) is.K.push_back(j);
    if (inside && !meets) throw Error("index sets: copy inside the inner box misses the cube");
  }
  return is;
}

IndexSetBounds index_set_bounds(const IndexSets& is, double prototile_measure, int d) {
  if (!(prototile_measure > 0)) throw InputError("index set bounds: measure must be positive");
  const double L = is.L, R = is.R, scale = std::pow(2.0, d) / prototile_measure;
  IndexSetBounds b;
  b.count_I = is.I.size();
  b.count_K = is.K.size();
  b.bound_I = scale * std::pow(L - R, d);
  b.bound_K = scale * (std::pow(L + R, d) - std::pow(L - 2 * R, d));
  if (static_cast<double>(b.count_I) > b.bound_I)
    throw BoundViolation("#I = " + std::to_string(b.count_I) + " exceeds 2^d (L-R)^d/|Omega| = " +
                         std::to_string(b.bound_I));
  if (static_cast<double>(b.count_K) > b.bound_K)
    throw BoundViolation("#K = " + std::to_string(b.count_K) +
                         " exceeds 2^d ((L+R)^d - (L-2R)^d)/|Omega| = " + std::to_string(b.bound_K));
  return b;
}

}  // namespace polya::tiling
