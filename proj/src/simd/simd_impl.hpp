#pragma once

#include <cstddef>
#include <cstdint>

#include "polya/simd.hpp"

namespace polya::simd::detail {

inline constexpr std::size_t kRowBlock = 256;

// Per-(edge, row) constants shared by the scalar and vector kernels.
struct EdgeRowSetup {
  double ax, ex, ey, ry, c, len2;
  bool up, down, near_row;
};

// Internal linkage: this header is also compiled with AVX2 flags.
static inline EdgeRowSetup edge_row_setup(const double* e, double y, double tol) {
  EdgeRowSetup s{};
  const double ay = e[1], by = e[3];
  s.ax = e[0];
  s.ex = e[2] - e[0];
  s.ey = by - ay;
  s.ry = y - ay;
  s.c = s.ex * s.ry;
  s.len2 = s.ex * s.ex + s.ey * s.ey;
  s.up = ay <= y && by > y;
  s.down = ay > y && by <= y;
  const double lo = ay < by ? ay : by;
  const double hi = ay < by ? by : ay;
  s.near_row = s.len2 > 0.0 && y >= lo - tol && y <= hi + tol;
  return s;
}

double dot_scalar(const double* a, const double* b, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);
void spmv_scalar(const int* row_ptr, const int* cols, const double* vals,
                 std::size_t rows, const double* x, double* y);
double weighted_sq_sum_scalar(const double* f, const double* w, std::size_t n);
double masked_diff_sq_sum_scalar(const double* a, const double* b,
                                 const std::uint8_t* active, std::size_t n);
void polygon_row_block_scalar(const double* edges, std::size_t n_edges, double y,
                              double x0, double dx, std::size_t first,
                              std::size_t count, double tol, std::uint8_t* inside);
void polygon_row_scalar(const double* edges, std::size_t n_edges, double y,
                        double x0, double dx, std::size_t count, double tol,
                        std::uint8_t* inside);

#if defined(POLYA_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace polya::simd::detail
