#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>

#include "polya/error.hpp"
#include "polya/fem.hpp"
#include "polya/simd.hpp"

namespace polya::fem {
namespace {

using ColSparse = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

// K + t M on the shared pattern. The matrix is symmetric, so the CSR arrays
// read as CSC describe the same operator.
ColSparse combine(const AssembledPencil& p, double t) {
  const CsrMatrix& k = p.stiffness;
  std::vector<double> vals(k.vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = k.vals[i] + t * p.mass.vals[i];
  Eigen::Map<const ColSparse> view(k.n, k.n, static_cast<Eigen::Index>(vals.size()), k.row_ptr.data(),
                                   k.cols.data(), vals.data());
  return ColSparse(view);
}

constexpr double kShift = -1.0;
constexpr int kBlock = 8;
// V, MV and AV for p columns of length n; beyond this the solve is refused.
constexpr double kMaxBasisBytes = 1.5e9;
constexpr Eigen::Index kDenseInertiaLimit = 3000;

struct Krylov {
  const AssembledPencil& p;
  Eigen::SimplicialLLT<ColSparse> llt;
  const simd::KernelTable& kt = simd::kernels();
  int applications = 0;

  explicit Krylov(const AssembledPencil& pencil) : p(pencil) {
    llt.compute(combine(p, -kShift));
    if (llt.info() != Eigen::Success) throw SolverError("eigensolver: shifted pencil is not positive definite");
  }

  // w = (K - sigma M)^{-1} M v
  Eigen::VectorXd apply(const Eigen::VectorXd& v) {
    Eigen::VectorXd mv(v.size());
    p.mass.multiply(v.data(), mv.data());
    ++applications;
    return llt.solve(mv);
  }
};

}  // namespace

EigenSolution solve_pencil(const AssembledPencil& p, int m, double tol) {
  const int n = p.dofs();
  if (m < 1) throw InputError("eigensolver: need at least one eigenpair");
  if (m > n) throw InputError("eigensolver: requested more eigenpairs than degrees of freedom");
  if (!(tol > 0)) throw InputError("eigensolver: tolerance must be positive");

  Krylov kr(p);
  const auto& kt = kr.kt;
  const int b = std::min(n, kBlock);
  int basis = std::min(n, std::max(2 * m + 2 * b, m + 40));
  const int cap = std::max(10 * n, 200);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> normal;

  double worst = 0.0;
  for (;;) {
    if (static_cast<double>(basis) * n * 3 * 8 > kMaxBasisBytes)
      throw SolverError("eigensolver: Krylov basis would exceed the memory limit");

    std::vector<Eigen::VectorXd> V, MV, W;
    V.reserve(basis);
    MV.reserve(basis);
    W.reserve(basis);
    std::vector<double> coef;
    for (int j = 0; j < basis; ++j) {
      Eigen::VectorXd w;
      if (j < b) {
        w.resize(n);
        for (int i = 0; i < n; ++i) w[i] = normal(rng);
      } else {
        w = W[j - b];
      }
      Eigen::VectorXd mw(n);
      double norm0 = 0.0;
      for (int attempt = 0;; ++attempt) {
        p.mass.multiply(w.data(), mw.data());
        norm0 = std::sqrt(std::max(0.0, kt.dot(w.data(), mw.data(), n)));
        // Classical Gram-Schmidt in the M inner product, applied twice.
        for (int pass = 0; pass < 2; ++pass) {
          coef.assign(V.size(), 0.0);
          for (std::size_t i = 0; i < V.size(); ++i) coef[i] = kt.dot(MV[i].data(), w.data(), n);
          for (std::size_t i = 0; i < V.size(); ++i) kt.axpy(-coef[i], V[i].data(), w.data(), n);
        }
        p.mass.multiply(w.data(), mw.data());
        const double norm = std::sqrt(std::max(0.0, kt.dot(w.data(), mw.data(), n)));
        if (norm > 1e-10 * norm0 && norm > 0) {
          w /= norm;
          mw /= norm;
          break;
        }
        // Invariant subspace reached: continue from a fresh random direction.
        if (attempt > 8) throw SolverError("eigensolver: could not extend the Krylov basis");
        for (int i = 0; i < n; ++i) w[i] = normal(rng);
      }
      V.push_back(std::move(w));
      MV.push_back(std::move(mw));
      W.push_back(kr.apply(V.back()));
    }

    // Rayleigh-Ritz for the operator A = (K - sigma M)^{-1} M, self-adjoint in <.,.>_M.
    Eigen::MatrixXd T(basis, basis);
    for (int i = 0; i < basis; ++i)
      for (int j = 0; j < basis; ++j) T(i, j) = kt.dot(MV[i].data(), W[j].data(), n);
    T = 0.5 * (T + T.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    if (es.info() != Eigen::Success) throw SolverError("eigensolver: Ritz problem failed");

    EigenSolution sol;
    Eigen::VectorXd ku(n), mu_vec(n);
    worst = 0.0;
    bool ok = true;
    for (int r = 0; r < m; ++r) {
      const int col = basis - 1 - r;
      const double theta = es.eigenvalues()[col];
      if (!(theta > 0)) {
        ok = false;
        break;
      }
      Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
      for (int i = 0; i < basis; ++i) kt.axpy(es.eigenvectors()(i, col), V[i].data(), u.data(), n);
      p.mass.multiply(u.data(), mu_vec.data());
      const double unorm = std::sqrt(kt.dot(u.data(), mu_vec.data(), n));
      u /= unorm;
      mu_vec /= unorm;
      const double mu = kShift + 1.0 / theta;
      p.stiffness.multiply(u.data(), ku.data());
      kt.axpy(-mu, mu_vec.data(), ku.data(), n);
      const double res = std::sqrt(kt.dot(ku.data(), ku.data(), n));
      worst = std::max(worst, res);
      if (!(res <= tol)) ok = false;
      sol.values.push_back(mu);
      sol.residuals.push_back(res);
      sol.error_bounds.push_back(res / std::sqrt(p.mass_lower_bound));
      sol.vectors.push_back(std::move(u));
    }
    sol.operator_applications = kr.applications;
    if (ok) {
      // Ritz values arrive in ascending order of mu already; keep the pairing explicit.
      std::vector<int> order(sol.values.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int c) { return sol.values[a] < sol.values[c]; });
      EigenSolution sorted;
      sorted.operator_applications = sol.operator_applications;
      for (int i : order) {
        sorted.values.push_back(sol.values[i]);
        sorted.residuals.push_back(sol.residuals[i]);
        sorted.error_bounds.push_back(sol.error_bounds[i]);
        sorted.vectors.push_back(std::move(sol.vectors[i]));
      }
      return sorted;
    }
    if (basis == n || kr.applications + 2 * basis > cap) break;
    basis = std::min(n, 2 * basis);
  }
  std::ostringstream msg;
  msg << "eigensolver did not converge: worst residual " << worst << " > tol " << tol << " after "
      << kr.applications << " operator applications";
  throw SolverError(msg.str());
}

std::size_t count_below_inertia(const AssembledPencil& p, double lambda) {
  if (!std::isfinite(lambda)) throw InputError("inertia count: lambda must be finite");
  const ColSparse A = combine(p, -lambda);
  auto negatives = [](const Eigen::VectorXd& d) -> std::optional<std::size_t> {
    std::size_t neg = 0;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (d[i] == 0.0) return std::nullopt;
      if (d[i] < 0) ++neg;
    }
    return neg;
  };
  // Without pivoting a leading block can be singular even when A is not
  // (exact cancellation happens on dyadic meshes), so try two orderings.
  {
    Eigen::SimplicialLDLT<ColSparse, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt(A);
    if (ldlt.info() == Eigen::Success)
      if (auto n = negatives(ldlt.vectorD())) return *n;
  }
  {
    Eigen::SimplicialLDLT<ColSparse, Eigen::Lower, Eigen::NaturalOrdering<int>> ldlt(A);
    if (ldlt.info() == Eigen::Success)
      if (auto n = negatives(ldlt.vectorD())) return *n;
  }
  if (A.rows() <= kDenseInertiaLimit) {
    // Dense LDL^T with symmetric pivoting is a congruence as well.
    const Eigen::MatrixXd dense(A);
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(dense);
    if (ldlt.info() == Eigen::Success)
      if (auto n = negatives(ldlt.vectorD())) return *n;
  }
  throw SolverError("inertia count: K - lambda M is singular (lambda is a discrete eigenvalue?)");
}

}  // namespace polya::fem
