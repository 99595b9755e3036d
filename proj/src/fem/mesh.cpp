#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "polya/error.hpp"
#include "polya/fem.hpp"

namespace polya::fem {
namespace {

std::uint64_t edge_key(int a, int b) {
  const auto lo = static_cast<std::uint32_t>(std::min(a, b));
  const auto hi = static_cast<std::uint32_t>(std::max(a, b));
  return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

double cross(Vec2 o, Vec2 a, Vec2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

// Closed triangle test (boundary counts as inside).
bool in_triangle(Vec2 p, Vec2 a, Vec2 b, Vec2 c) {
  return cross(a, b, p) >= 0 && cross(b, c, p) >= 0 && cross(c, a, p) >= 0;
}

std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& v) {
  std::vector<int> ring(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) ring[i] = static_cast<int>(i);
  std::vector<std::array<int, 3>> tris;
  while (ring.size() > 3) {
    const std::size_t n = ring.size();
    bool clipped = false;
    for (std::size_t i = 0; i < n && !clipped; ++i) {
      const int a = ring[(i + n - 1) % n], b = ring[i], c = ring[(i + 1) % n];
      if (cross(v[a], v[b], v[c]) <= 0) continue;  // reflex or flat corner
      bool blocked = false;
      for (int q : ring) {
        if (q == a || q == b || q == c) continue;
        if (in_triangle(v[q], v[a], v[b], v[c])) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      tris.push_back({a, b, c});
      ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
    }
    if (!clipped) throw InputError("triangulate: no ear found (polygon not simple?)");
  }
  if (cross(v[ring[0]], v[ring[1]], v[ring[2]]) <= 0)
    throw InputError("triangulate: degenerate final triangle");
  tris.push_back({ring[0], ring[1], ring[2]});
  return tris;
}

void mark_boundary(Mesh& m) {
  std::unordered_map<std::uint64_t, int> count;
  for (const auto& t : m.triangles)
    for (int k = 0; k < 3; ++k) ++count[edge_key(t[k], t[(k + 1) % 3])];
  std::vector<char> on(m.nodes.size(), 0);
  for (const auto& [key, c] : count)
    if (c == 1) {
      on[key >> 32] = 1;
      on[key & 0xffffffffu] = 1;
    }
  m.boundary_nodes.clear();
  for (std::size_t i = 0; i < on.size(); ++i)
    if (on[i]) m.boundary_nodes.push_back(static_cast<int>(i));
}

void refine_once(Mesh& m) {
  std::unordered_map<std::uint64_t, int> mid;
  mid.reserve(m.triangles.size() * 2);
  auto midpoint = [&](int a, int b) {
    const auto key = edge_key(a, b);
    auto it = mid.find(key);
    if (it != mid.end()) return it->second;
    const int id = static_cast<int>(m.nodes.size());
    m.nodes.push_back({0.5 * (m.nodes[a].x + m.nodes[b].x), 0.5 * (m.nodes[a].y + m.nodes[b].y)});
    mid.emplace(key, id);
    return id;
  };
  std::vector<std::array<int, 3>> next;
  next.reserve(4 * m.triangles.size());
  for (const auto& t : m.triangles) {
    const int ab = midpoint(t[0], t[1]), bc = midpoint(t[1], t[2]), ca = midpoint(t[2], t[0]);
    next.push_back({t[0], ab, ca});
    next.push_back({ab, t[1], bc});
    next.push_back({ca, bc, t[2]});
    next.push_back({ab, bc, ca});
  }
  m.triangles = std::move(next);
  ++m.refinement_level;
}

}  // namespace

std::size_t Mesh::edge_count() const {
  std::unordered_map<std::uint64_t, int> seen;
  for (const auto& t : triangles)
    for (int k = 0; k < 3; ++k) seen.emplace(edge_key(t[k], t[(k + 1) % 3]), 0);
  return seen.size();
}

double Mesh::max_edge_length() const {
  double h = 0.0;
  for (const auto& t : triangles)
    for (int k = 0; k < 3; ++k) {
      const Vec2 a = nodes[t[k]], b = nodes[t[(k + 1) % 3]];
      h = std::max(h, std::hypot(b.x - a.x, b.y - a.y));
    }
  return h;
}

Mesh triangulate(const std::vector<Vec2>& polygon, int refinement) {
  if (refinement < 0) throw InputError("triangulate: refinement must be nonnegative");
  if (refinement > 10) throw InputError("triangulate: refinement above 10 is not supported");
  if (polygon.size() < 3 || !geometry::polygon_is_simple(polygon))
    throw InputError("triangulate: polygon is not simple");
  Mesh m;
  m.nodes = polygon;
  if (geometry::polygon_signed_area(m.nodes) < 0) std::reverse(m.nodes.begin(), m.nodes.end());
  m.triangles = ear_clip(m.nodes);
  for (int r = 0; r < refinement; ++r) refine_once(m);
  mark_boundary(m);
  return m;
}

Mesh triangulate(const geometry::Domain& dom, int refinement) {
  auto pieces = geometry::flatten_polygons(dom);
  if (!pieces || pieces->size() != 1)
    throw InputError("triangulate: domain must be a single planar polygon");
  return triangulate(pieces->front(), refinement);
}

}  // namespace polya::fem
