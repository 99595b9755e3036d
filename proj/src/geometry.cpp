#include "polya/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "polya/error.hpp"
#include "polya/parallel.hpp"
#include "polya/simd.hpp"

namespace polya::geometry {
namespace {

constexpr double kOrthoTol = 1e-12;

// Snap cos/sin values that should be exact so that lattice copies of
// axis-aligned shapes keep exact coordinates.
double snap(double v) {
  for (double target : {0.0, 1.0, -1.0, 0.5, -0.5})
    if (std::abs(v - target) < 4e-16) return target;
  return v;
}

Eigen::Matrix2d rot2(double angle) {
  const double c = snap(std::cos(angle)), s = snap(std::sin(angle));
  Eigen::Matrix2d q;
  q << c, -s, s, c;
  return q;
}

Eigen::Vector2d to_eigen(Vec2 p) { return {p.x, p.y}; }

std::vector<Vec2> rectangle(const Interval& a, const Interval& b) {
  return {{a.lo, b.lo}, {a.hi, b.lo}, {a.hi, b.hi}, {a.lo, b.hi}};
}

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  auto orient = [](Vec2 a, Vec2 b, Vec2 c) {
    const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return (v > 0) - (v < 0);
  };
  auto on_segment = [](Vec2 a, Vec2 b, Vec2 c) {
    return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
  };
  const int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

std::vector<double> edge_array(const std::vector<Vec2>& v) {
  std::vector<double> e;
  e.reserve(4 * v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % v.size()];
    e.insert(e.end(), {a.x, a.y, b.x, b.y});
  }
  return e;
}

std::optional<std::vector<Interval>> flatten_intervals(const Domain& dom) {
  if (dom.dim() != 1) return std::nullopt;
  if (auto* u = dom.as<IntervalUnion>()) return u->intervals;
  if (auto* b = dom.as<Box>()) return std::vector<Interval>{b->sides[0]};
  if (auto* c = dom.as<CopyOf>()) {
    auto base = flatten_intervals(*c->base);
    if (!base) return std::nullopt;
    const double q = c->iso.linear()(0, 0), t = c->iso.translation()(0);
    for (auto& iv : *base) {
      const double a = q * iv.lo + t, b = q * iv.hi + t;
      iv = {std::min(a, b), std::max(a, b)};
    }
    return base;
  }
  if (auto* u = dom.as<DisjointUnion>()) {
    std::vector<Interval> out;
    for (const auto& m : u->members) {
      auto part = flatten_intervals(m);
      if (!part) return std::nullopt;
      out.insert(out.end(), part->begin(), part->end());
    }
    return out;
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------- Isometry

Isometry::Isometry(Eigen::MatrixXd linear, Eigen::VectorXd translation)
    : linear_(std::move(linear)), translation_(std::move(translation)) {
  const auto d = translation_.size();
  if (d == 0 || linear_.rows() != d || linear_.cols() != d)
    throw InputError("isometry: linear part must be a square matrix matching the translation");
  const Eigen::MatrixXd gram = linear_.transpose() * linear_;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);
  if ((gram - eye).cwiseAbs().maxCoeff() > kOrthoTol)
    throw InputError("isometry: linear part is not orthogonal");
  if (std::abs(std::abs(linear_.determinant()) - 1.0) > kOrthoTol)
    throw InputError("isometry: |det| differs from 1");
}

Isometry Isometry::identity(int dim) {
  return {Eigen::MatrixXd::Identity(dim, dim), Eigen::VectorXd::Zero(dim)};
}

Isometry Isometry::translation(const Eigen::VectorXd& t) {
  return {Eigen::MatrixXd::Identity(t.size(), t.size()), t};
}

Isometry Isometry::rotation(double angle, Vec2 center) {
  const Eigen::Matrix2d q = rot2(angle);
  const Eigen::Vector2d c = to_eigen(center);
  return {q, c - q * c};
}

Isometry Isometry::reflection(double angle, Vec2 point) {
  const double c = snap(std::cos(2 * angle)), s = snap(std::sin(2 * angle));
  Eigen::Matrix2d q;
  q << c, s, s, -c;
  const Eigen::Vector2d p = to_eigen(point);
  return {q, p - q * p};
}

Isometry Isometry::point_reflection(Vec2 center) {
  return {-Eigen::Matrix2d::Identity(), 2.0 * to_eigen(center)};
}

Vec2 Isometry::apply(Vec2 p) const {
  if (dim() != 2) throw InputError("isometry: 2D point applied to a non-planar isometry");
  return {linear_(0, 0) * p.x + linear_(0, 1) * p.y + translation_(0),
          linear_(1, 0) * p.x + linear_(1, 1) * p.y + translation_(1)};
}

Isometry Isometry::inverse() const {
  const Eigen::MatrixXd qt = linear_.transpose();
  return {qt, -(qt * translation_)};
}

Isometry Isometry::compose(const Isometry& inner) const {
  if (inner.dim() != dim()) throw InputError("isometry: dimension mismatch in composition");
  return {linear_ * inner.linear_, linear_ * inner.translation_ + translation_};
}

// ---------------------------------------------------------------- Box

double Box::measure() const {
  double m = 1.0;
  for (const auto& s : sides) m *= s.length();
  return m;
}

bool Box::contains_closed(const Point& x, double tol) const {
  for (int j = 0; j < dim(); ++j)
    if (x(j) < sides[j].lo - tol || x(j) > sides[j].hi + tol) return false;
  return true;
}

// ---------------------------------------------------------------- Domain

Domain Domain::interval(double lo, double hi) { return interval_union({{lo, hi}}); }

Domain Domain::interval_union(std::vector<Interval> intervals) {
  if (intervals.empty()) throw InputError("interval union: no intervals");
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi))
      throw InputError("interval union: each interval needs finite a < b");
    if (i > 0 && intervals[i - 1].hi > iv.lo)
      throw InputError("interval union: intervals overlap");
  }
  return {std::make_shared<const Rep>(IntervalUnion{std::move(intervals)}), 1};
}

Domain Domain::box(std::vector<Interval> sides) {
  if (sides.empty()) throw InputError("box: dimension must be at least 1");
  for (const auto& s : sides)
    if (!std::isfinite(s.lo) || !std::isfinite(s.hi) || !(s.lo < s.hi))
      throw InputError("box: each side needs finite a < b");
  const int d = static_cast<int>(sides.size());
  return {std::make_shared<const Rep>(Box{std::move(sides)}), d};
}

Domain Domain::cube(double half, int dim) {
  if (!(half > 0)) throw InputError("cube: half-width must be positive");
  return box(std::vector<Interval>(dim, Interval{-half, half}));
}

Domain Domain::polygon(std::vector<Vec2> vertices) {
  if (vertices.size() < 3) throw InputError("polygon: need at least 3 vertices");
  for (const auto& v : vertices)
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw InputError("polygon: non-finite vertex");
  if (!polygon_is_simple(vertices)) throw InputError("polygon: not simple (self-intersecting)");
  const double area = polygon_signed_area(vertices);
  if (area == 0.0) throw InputError("polygon: degenerate (zero area)");
  if (area < 0) std::reverse(vertices.begin(), vertices.end());
  return {std::make_shared<const Rep>(Polygon{std::move(vertices)}), 2};
}

Domain Domain::copy(const Isometry& iso, const Domain& base) {
  if (iso.dim() != base.dim()) throw InputError("copy: isometry dimension differs from domain");
  CopyOf c{iso, std::make_shared<const Domain>(base), {}};
  if (base.dim() == 2) {
    if (auto pieces = flatten_polygons(base)) {
      const bool flip = iso.det() < 0;
      for (auto& piece : *pieces) {
        for (auto& v : piece) v = iso.apply(v);
        if (flip) std::reverse(piece.begin(), piece.end());
      }
      c.outline = std::move(*pieces);
    }
  }
  const int d = base.dim();
  return {std::make_shared<const Rep>(std::move(c)), d};
}

Domain Domain::disjoint_union(std::vector<Domain> members) {
  if (members.empty()) throw InputError("union: no members");
  const int d = members.front().dim();
  for (const auto& m : members)
    if (m.dim() != d) throw InputError("union: members differ in dimension");
  return {std::make_shared<const Rep>(DisjointUnion{std::move(members)}), d};
}

Domain Domain::product(const Domain& first, const Domain& second) {
  Product p{std::make_shared<const Domain>(first), std::make_shared<const Domain>(second)};
  return {std::make_shared<const Rep>(std::move(p)), first.dim() + second.dim()};
}

Kind Domain::kind() const { return static_cast<Kind>(rep_->index()); }

// ---------------------------------------------------------------- queries

double polygon_signed_area(const std::vector<Vec2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % v.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

bool polygon_is_simple(const std::vector<Vec2>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % n];
    if (a.x == b.x && a.y == b.y) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) return false;
    }
  }
  // Adjacent edges folding back onto each other.
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = v[(i + n - 1) % n], b = v[i], c = v[(i + 1) % n];
    const double cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
    const double dot = (b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y);
    if (cross == 0.0 && dot < 0.0) return false;
  }
  return true;
}

double measure(const Domain& dom) {
  return std::visit(
      [](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, IntervalUnion>) {
          double s = 0.0;
          for (const auto& iv : r.intervals) s += iv.length();
          return s;
        } else if constexpr (std::is_same_v<T, Box>) {
          return r.measure();
        } else if constexpr (std::is_same_v<T, Polygon>) {
          return std::abs(polygon_signed_area(r.vertices));
        } else if constexpr (std::is_same_v<T, CopyOf>) {
          return measure(*r.base);
        } else if constexpr (std::is_same_v<T, DisjointUnion>) {
          double s = 0.0;
          for (const auto& m : r.members) s += measure(m);
          return s;
        } else {
          return measure(*r.first) * measure(*r.second);
        }
      },
      dom.rep());
}

std::vector<Point> extreme_points(const Domain& dom) {
  return std::visit(
      [&](const auto& r) -> std::vector<Point> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, IntervalUnion>) {
          Point a(1), b(1);
          a << r.intervals.front().lo;
          b << r.intervals.back().hi;
          return {a, b};
        } else if constexpr (std::is_same_v<T, Box>) {
          const int d = r.dim();
          if (d > 20) throw InputError("box: too many dimensions to enumerate corners");
          std::vector<Point> out;
          for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
            Point p(d);
            for (int j = 0; j < d; ++j) p(j) = (mask >> j & 1u) ? r.sides[j].hi : r.sides[j].lo;
            out.push_back(p);
          }
          return out;
        } else if constexpr (std::is_same_v<T, Polygon>) {
          std::vector<Point> out;
          for (const auto& v : r.vertices) out.push_back(Eigen::Vector2d(v.x, v.y));
          return out;
        } else if constexpr (std::is_same_v<T, CopyOf>) {
          auto pts = extreme_points(*r.base);
          for (auto& p : pts) p = r.iso.apply(p);
          return pts;
        } else if constexpr (std::is_same_v<T, DisjointUnion>) {
          std::vector<Point> out;
          for (const auto& m : r.members) {
            auto pts = extreme_points(m);
            out.insert(out.end(), pts.begin(), pts.end());
          }
          return out;
        } else {
          const auto a = extreme_points(*r.first), b = extreme_points(*r.second);
          std::vector<Point> out;
          for (const auto& p : a)
            for (const auto& q : b) {
              Point z(p.size() + q.size());
              z << p, q;
              out.push_back(z);
            }
          return out;
        }
      },
      dom.rep());
}

double diameter(const Domain& dom) {
  if (auto* b = dom.as<Box>()) {
    double s = 0.0;
    for (const auto& side : b->sides) s += side.length() * side.length();
    return std::sqrt(s);
  }
  if (auto* u = dom.as<IntervalUnion>()) return u->intervals.back().hi - u->intervals.front().lo;
  if (auto* c = dom.as<CopyOf>()) return diameter(*c->base);
  if (auto* p = dom.as<Product>()) {
    const double a = diameter(*p->first), b = diameter(*p->second);
    return std::sqrt(a * a + b * b);
  }
  const auto pts = extreme_points(dom);
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, (pts[i] - pts[j]).squaredNorm());
  return std::sqrt(best);
}

Box bounding_box(const Domain& dom) {
  if (auto* b = dom.as<Box>()) return *b;
  const auto pts = extreme_points(dom);
  const int d = dom.dim();
  Box box{std::vector<Interval>(d, Interval{INFINITY, -INFINITY})};
  for (const auto& p : pts)
    for (int j = 0; j < d; ++j) {
      box.sides[j].lo = std::min(box.sides[j].lo, p(j));
      box.sides[j].hi = std::max(box.sides[j].hi, p(j));
    }
  return box;
}

Domain apply_isometry(const Isometry& iso, const Domain& dom) {
  if (auto* c = dom.as<CopyOf>()) return Domain::copy(iso.compose(c->iso), *c->base);
  return Domain::copy(iso, dom);
}

std::optional<std::vector<std::vector<Vec2>>> flatten_polygons(const Domain& dom) {
  if (dom.dim() != 2) return std::nullopt;
  using Out = std::vector<std::vector<Vec2>>;
  if (auto* b = dom.as<Box>()) return Out{rectangle(b->sides[0], b->sides[1])};
  if (auto* p = dom.as<Polygon>()) return Out{p->vertices};
  if (auto* c = dom.as<CopyOf>()) {
    if (c->outline.empty()) return std::nullopt;
    return c->outline;
  }
  if (auto* u = dom.as<DisjointUnion>()) {
    Out out;
    for (const auto& m : u->members) {
      auto part = flatten_polygons(m);
      if (!part) return std::nullopt;
      out.insert(out.end(), part->begin(), part->end());
    }
    return out;
  }
  if (auto* p = dom.as<Product>()) {
    auto a = flatten_intervals(*p->first), b = flatten_intervals(*p->second);
    if (!a || !b) return std::nullopt;
    Out out;
    for (const auto& ia : *a)
      for (const auto& ib : *b) out.push_back(rectangle(ia, ib));
    return out;
  }
  return std::nullopt;
}

double perimeter(const Domain& dom) {
  auto pieces = flatten_polygons(dom);
  if (!pieces) throw InputError("perimeter: domain is not a planar polygonal region");
  double s = 0.0;
  for (const auto& v : *pieces)
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vec2 a = v[i], b = v[(i + 1) % v.size()];
      s += std::hypot(b.x - a.x, b.y - a.y);
    }
  return s;
}

bool contains(const Domain& dom, const Point& x, double tol) {
  if (x.size() != dom.dim()) throw InputError("contains: point dimension mismatch");
  return std::visit(
      [&](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, IntervalUnion>) {
          for (const auto& iv : r.intervals)
            if (x(0) > iv.lo + tol && x(0) < iv.hi - tol) return true;
          return false;
        } else if constexpr (std::is_same_v<T, Box>) {
          for (int j = 0; j < r.dim(); ++j)
            if (!(x(j) > r.sides[j].lo + tol && x(j) < r.sides[j].hi - tol)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Polygon>) {
          const auto edges = edge_array(r.vertices);
          std::uint8_t in = 0;
          simd::scalar_kernels().polygon_row(edges.data(), r.vertices.size(), x(1), x(0), 0.0, 1,
                                             tol, &in);
          return in != 0;
        } else if constexpr (std::is_same_v<T, CopyOf>) {
          const Point local = r.iso.linear().transpose() * (x - r.iso.translation());
          return contains(*r.base, local, tol);
        } else if constexpr (std::is_same_v<T, DisjointUnion>) {
          for (const auto& m : r.members)
            if (contains(m, x, tol)) return true;
          return false;
        } else {
          const int d1 = r.first->dim();
          return contains(*r.first, x.head(d1), tol) &&
                 contains(*r.second, x.tail(x.size() - d1), tol);
        }
      },
      dom.rep());
}

// ---------------------------------------------------------------- coverage

namespace {

struct Tally {
  std::uint64_t covered = 0;
  std::uint64_t overlap = 0;
  int max_mult = 0;
};

Tally coverage_planar(const std::vector<std::vector<Vec2>>& pieces, const Box& window, int res) {
  const double x_lo = window.sides[0].lo, y_lo = window.sides[1].lo;
  const double hx = window.sides[0].length() / res, hy = window.sides[1].length() / res;
  const double x0 = x_lo + 0.5 * hx;

  struct Piece {
    std::vector<double> edges;
    std::size_t n_edges;
    int col0, col1;
  };
  std::vector<Piece> prepared;
  std::vector<std::vector<int>> rows(res);
  for (const auto& v : pieces) {
    double bx0 = INFINITY, bx1 = -INFINITY, by0 = INFINITY, by1 = -INFINITY;
    for (const auto& p : v) {
      bx0 = std::min(bx0, p.x);
      bx1 = std::max(bx1, p.x);
      by0 = std::min(by0, p.y);
      by1 = std::max(by1, p.y);
    }
    const int c0 = std::max(0, static_cast<int>(std::floor((bx0 - x_lo) / hx - 0.5)));
    const int c1 = std::min(res - 1, static_cast<int>(std::ceil((bx1 - x_lo) / hx - 0.5)));
    const int r0 = std::max(0, static_cast<int>(std::floor((by0 - y_lo) / hy - 0.5)));
    const int r1 = std::min(res - 1, static_cast<int>(std::ceil((by1 - y_lo) / hy - 0.5)));
    if (c0 > c1 || r0 > r1) continue;
    const int id = static_cast<int>(prepared.size());
    prepared.push_back({edge_array(v), v.size(), c0, c1});
    for (int r = r0; r <= r1; ++r) rows[r].push_back(id);
  }

  std::vector<Tally> per_row(res);
  const auto& k = simd::kernels();
  parallel_for(static_cast<std::size_t>(res), [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint16_t> mult(res);
    std::vector<std::uint8_t> inside(res);
    for (std::size_t r = begin; r < end; ++r) {
      std::fill(mult.begin(), mult.end(), 0);
      const double y = y_lo + (static_cast<double>(r) + 0.5) * hy;
      for (int id : rows[r]) {
        const Piece& p = prepared[id];
        const std::size_t count = static_cast<std::size_t>(p.col1 - p.col0 + 1);
        k.polygon_row(p.edges.data(), p.n_edges, y, x0 + p.col0 * hx, hx, count, kBoundaryTol,
                      inside.data());
        for (std::size_t j = 0; j < count; ++j) mult[p.col0 + j] += inside[j];
      }
      Tally t;
      for (int j = 0; j < res; ++j) {
        if (mult[j] >= 1) ++t.covered;
        if (mult[j] >= 2) ++t.overlap;
        t.max_mult = std::max<int>(t.max_mult, mult[j]);
      }
      per_row[r] = t;
    }
  });
  Tally total;
  for (const auto& t : per_row) {
    total.covered += t.covered;
    total.overlap += t.overlap;
    total.max_mult = std::max(total.max_mult, t.max_mult);
  }
  return total;
}

Tally coverage_generic(const std::vector<Domain>& doms, const Box& window, int res,
                       std::uint64_t samples) {
  const int d = window.dim();
  std::vector<Box> boxes;
  for (const auto& dom : doms) boxes.push_back(bounding_box(dom));
  std::vector<Tally> per_chunk(static_cast<std::size_t>(res));
  const std::uint64_t per_slab = samples / res;
  parallel_for(static_cast<std::size_t>(res), [&](std::size_t begin, std::size_t end) {
    Point x(d);
    for (std::size_t slab = begin; slab < end; ++slab) {
      Tally t;
      for (std::uint64_t i = 0; i < per_slab; ++i) {
        std::uint64_t flat = slab * per_slab + i;
        for (int j = 0; j < d; ++j) {
          const std::uint64_t idx = flat % res;
          flat /= res;
          x(j) = window.sides[j].lo + (idx + 0.5) * window.sides[j].length() / res;
        }
        int m = 0;
        for (std::size_t q = 0; q < doms.size(); ++q)
          if (boxes[q].contains_closed(x) && contains(doms[q], x)) ++m;
        if (m >= 1) ++t.covered;
        if (m >= 2) ++t.overlap;
        t.max_mult = std::max(t.max_mult, m);
      }
      per_chunk[slab] = t;
    }
  });
  Tally total;
  for (const auto& t : per_chunk) {
    total.covered += t.covered;
    total.overlap += t.overlap;
    total.max_mult = std::max(total.max_mult, t.max_mult);
  }
  return total;
}

}  // namespace

CoverageReport coverage_report(const std::vector<Domain>& doms, const Box& window,
                               int resolution) {
  if (window.sides.empty()) throw InputError("coverage: empty window");
  for (const auto& s : window.sides)
    if (!(s.lo < s.hi)) throw InputError("coverage: empty window");
  if (resolution < 16) throw InputError("coverage: resolution must be at least 16");
  const int d = window.dim();
  for (const auto& dom : doms)
    if (dom.dim() != d) throw InputError("coverage: domain dimension differs from window");
  const double total = std::pow(static_cast<double>(resolution), d);
  if (total > 2e9) throw InputError("coverage: too many samples for this dimension");

  CoverageReport rep;
  rep.window = window;
  rep.resolution = resolution;
  rep.samples = static_cast<std::uint64_t>(total);

  Tally t;
  std::optional<std::vector<std::vector<Vec2>>> pieces;
  if (d == 2) {
    pieces.emplace();
    for (const auto& dom : doms) {
      auto p = flatten_polygons(dom);
      if (!p) {
        pieces.reset();
        break;
      }
      pieces->insert(pieces->end(), p->begin(), p->end());
    }
  }
  if (pieces)
    t = coverage_planar(*pieces, window, resolution);
  else
    t = coverage_generic(doms, window, resolution, rep.samples);

  rep.covered_fraction = static_cast<double>(t.covered) / total;
  rep.overlap_fraction = static_cast<double>(t.overlap) / total;
  rep.max_multiplicity = t.max_mult;
  return rep;
}

}  // namespace polya::geometry
