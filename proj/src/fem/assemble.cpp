#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>

#include "polya/error.hpp"
#include "polya/fem.hpp"
#include "polya/simd.hpp"

namespace polya::fem {
namespace {

double twice_area(Vec2 a, Vec2 b, Vec2 c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); }

using RowSparse = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

CsrMatrix to_csr(const RowSparse& m) {
  CsrMatrix out;
  out.n = static_cast<int>(m.rows());
  out.row_ptr.assign(m.outerIndexPtr(), m.outerIndexPtr() + m.rows() + 1);
  out.cols.assign(m.innerIndexPtr(), m.innerIndexPtr() + m.nonZeros());
  out.vals.assign(m.valuePtr(), m.valuePtr() + m.nonZeros());
  return out;
}

// K and M share one pattern: build both from the same positions, with
// explicit zeros kept so the index arrays agree.
struct TripletPair {
  std::vector<Eigen::Triplet<double>> k, m;
};

AssembledPencil finish(int n, const TripletPair& t, std::vector<int> boundary, int dim,
                       double mass_lower) {
  RowSparse K(n, n), M(n, n);
  K.setFromTriplets(t.k.begin(), t.k.end());
  M.setFromTriplets(t.m.begin(), t.m.end());
  K.makeCompressed();
  M.makeCompressed();
  AssembledPencil p;
  p.stiffness = to_csr(K);
  p.mass = to_csr(M);
  if (p.stiffness.cols != p.mass.cols) throw SolverError("assemble: stiffness and mass patterns differ");
  p.dof_of_node.resize(n);
  for (int i = 0; i < n; ++i) p.dof_of_node[i] = i;
  p.boundary_nodes = std::move(boundary);
  p.dim = dim;
  p.mass_lower_bound = mass_lower;
  return p;
}

}  // namespace

void CsrMatrix::multiply(const double* x, double* y) const {
  simd::kernels().spmv(row_ptr.data(), cols.data(), vals.data(), n, x, y);
}

double CsrMatrix::entry(int i, int j) const {
  auto first = cols.begin() + row_ptr[i], last = cols.begin() + row_ptr[i + 1];
  auto it = std::lower_bound(first, last, j);
  return it != last && *it == j ? vals[static_cast<std::size_t>(it - cols.begin())] : 0.0;
}

Element element_stiffness(Vec2 a, Vec2 b, Vec2 c) {
  const double a2 = twice_area(a, b, c);
  if (!(a2 > 0)) throw InputError("element stiffness: triangle must be counter-clockwise and nondegenerate");
  const std::array<Vec2, 3> g = {Vec2{b.y - c.y, c.x - b.x}, Vec2{c.y - a.y, a.x - c.x},
                                 Vec2{a.y - b.y, b.x - a.x}};
  Element e{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e[i][j] = (g[i].x * g[j].x + g[i].y * g[j].y) / (2.0 * a2);
  return e;
}

Element element_mass(Vec2 a, Vec2 b, Vec2 c) {
  const double area = 0.5 * twice_area(a, b, c);
  if (!(area > 0)) throw InputError("element mass: triangle must be counter-clockwise and nondegenerate");
  Element e{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e[i][j] = area / 12.0 * (i == j ? 2.0 : 1.0);
  return e;
}

AssembledPencil assemble(const Mesh& mesh) {
  const int n = static_cast<int>(mesh.nodes.size());
  if (n == 0 || mesh.triangles.empty()) throw InputError("assemble: empty mesh");
  TripletPair t;
  t.k.reserve(9 * mesh.triangles.size());
  t.m.reserve(9 * mesh.triangles.size());
  // Diagonal dominance of P1 mass: lambda_min(M) >= min_i sum_{e ni i} area_e / 12.
  std::vector<double> patch(n, 0.0);
  for (const auto& tri : mesh.triangles) {
    const Vec2 a = mesh.nodes[tri[0]], b = mesh.nodes[tri[1]], c = mesh.nodes[tri[2]];
    const Element ke = element_stiffness(a, b, c), me = element_mass(a, b, c);
    const double area = 0.5 * twice_area(a, b, c);
    for (int i = 0; i < 3; ++i) {
      patch[tri[i]] += area / 12.0;
      for (int j = 0; j < 3; ++j) {
        t.k.emplace_back(tri[i], tri[j], ke[i][j]);
        t.m.emplace_back(tri[i], tri[j], me[i][j]);
      }
    }
  }
  const double lower = *std::min_element(patch.begin(), patch.end());
  return finish(n, t, mesh.boundary_nodes, 2, lower);
}

AssembledPencil assemble_interval(double length, int elements) {
  if (!(length > 0)) throw InputError("assemble interval: length must be positive");
  if (elements < 1) throw InputError("assemble interval: need at least one element");
  const int n = elements + 1;
  const double h = length / elements;
  TripletPair t;
  for (int e = 0; e < elements; ++e) {
    const int i = e, j = e + 1;
    for (auto [r, c] : {std::pair{i, i}, {i, j}, {j, i}, {j, j}}) {
      t.k.emplace_back(r, c, (r == c ? 1.0 : -1.0) / h);
      t.m.emplace_back(r, c, h / 6.0 * (r == c ? 2.0 : 1.0));
    }
  }
  // Endpoints belong to one element only: lambda_min(M) >= h / 6.
  return finish(n, t, {0, elements}, 1, h / 6.0);
}

AssembledPencil restrict_dirichlet(const AssembledPencil& p) {
  const int n = p.dofs();
  std::vector<char> drop(n, 0);
  for (int b : p.boundary_nodes) drop[p.dof_of_node.at(b)] = 1;
  std::vector<int> newid(n, -1);
  int m = 0;
  for (int i = 0; i < n; ++i)
    if (!drop[i]) newid[i] = m++;
  if (m == 0) throw InputError("dirichlet restriction: no interior nodes (refine the mesh)");

  auto restrict = [&](const CsrMatrix& a) {
    CsrMatrix r;
    r.n = m;
    r.row_ptr.push_back(0);
    for (int i = 0; i < n; ++i) {
      if (drop[i]) continue;
      for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
        if (!drop[a.cols[k]]) {
          r.cols.push_back(newid[a.cols[k]]);
          r.vals.push_back(a.vals[k]);
        }
      r.row_ptr.push_back(static_cast<int>(r.cols.size()));
    }
    return r;
  };

  AssembledPencil out;
  out.stiffness = restrict(p.stiffness);
  out.mass = restrict(p.mass);
  out.dim = p.dim;
  // A principal submatrix keeps lambda_min >= that of the full matrix.
  out.mass_lower_bound = p.mass_lower_bound;
  out.dof_of_node.resize(p.dof_of_node.size());
  for (std::size_t v = 0; v < p.dof_of_node.size(); ++v)
    out.dof_of_node[v] = p.dof_of_node[v] < 0 ? -1 : newid[p.dof_of_node[v]];
  return out;
}

}  // namespace polya::fem
