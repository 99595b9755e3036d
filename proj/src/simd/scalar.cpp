#include "simd_impl.hpp"

#include <algorithm>

namespace polya::simd::detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void spmv_scalar(const int* row_ptr, const int* cols, const double* vals,
                 std::size_t rows, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += vals[k] * x[cols[k]];
    y[r] = s;
  }
}

double weighted_sq_sum_scalar(const double* f, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * f[i] * f[i];
  return s;
}

double masked_diff_sq_sum_scalar(const double* a, const double* b,
                                 const std::uint8_t* active, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (active[i] == 0) continue;
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void polygon_row_block_scalar(const double* edges, std::size_t n_edges, double y,
                              double x0, double dx, std::size_t first,
                              std::size_t count, double tol, std::uint8_t* inside) {
  double wn[kRowBlock];
  std::uint8_t near[kRowBlock];
  double px[kRowBlock];
  for (std::size_t j = 0; j < count; ++j) {
    wn[j] = 0.0;
    near[j] = 0;
    px[j] = x0 + static_cast<double>(first + j) * dx;
  }
  const double tol2 = tol * tol;
  for (std::size_t e = 0; e < n_edges; ++e) {
    const EdgeRowSetup s = edge_row_setup(edges + 4 * e, y, tol);
    if (s.up || s.down) {
      for (std::size_t j = 0; j < count; ++j) {
        const double is_left = s.c - (px[j] - s.ax) * s.ey;
        if (s.up && is_left > 0.0) wn[j] += 1.0;
        if (s.down && is_left < 0.0) wn[j] -= 1.0;
      }
    }
    if (s.near_row) {
      for (std::size_t j = 0; j < count; ++j) {
        const double rx = px[j] - s.ax;
        double t = (rx * s.ex + s.ry * s.ey) / s.len2;
        t = std::min(std::max(t, 0.0), 1.0);
        const double qx = rx - t * s.ex;
        const double qy = s.ry - t * s.ey;
        if (qx * qx + qy * qy <= tol2) near[j] = 1;
      }
    }
  }
  for (std::size_t j = 0; j < count; ++j)
    inside[j] = (wn[j] != 0.0 && near[j] == 0) ? 1 : 0;
}

void polygon_row_scalar(const double* edges, std::size_t n_edges, double y,
                        double x0, double dx, std::size_t count, double tol,
                        std::uint8_t* inside) {
  for (std::size_t first = 0; first < count; first += kRowBlock) {
    const std::size_t m = std::min(kRowBlock, count - first);
    polygon_row_block_scalar(edges, n_edges, y, x0, dx, first, m, tol, inside + first);
  }
}

}  // namespace polya::simd::detail
