// Compiled with -mavx2 -mfma -ffp-contract=off. Only reached after the
// dispatcher has confirmed CPU support.

#include <immintrin.h>

#include "simd_impl.hpp"

namespace polya::simd::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void spmv_avx2(const int* row_ptr, const int* cols, const double* vals,
               std::size_t rows, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    int k = row_ptr[r];
    const int end = row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; k + 4 <= end; k += 4) {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + k));
      const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(vals + k), xv, acc);
    }
    double s = hsum(acc);
    for (; k < end; ++k) s += vals[k] * x[cols[k]];
    y[r] = s;
  }
}

double weighted_sq_sum_avx2(const double* f, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d fv = _mm256_loadu_pd(f + i);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), fv), fv, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * f[i] * f[i];
  return s;
}

inline __m256d byte_mask(const std::uint8_t* p) {
  int packed = 0;
  __builtin_memcpy(&packed, p, 4);
  const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
  const __m256i zero = _mm256_cmpeq_epi64(wide, _mm256_setzero_si256());
  return _mm256_castsi256_pd(_mm256_xor_si256(zero, _mm256_set1_epi64x(-1)));
}

double masked_diff_sq_sum_avx2(const double* a, const double* b,
                               const std::uint8_t* active, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d dm = _mm256_and_pd(d, byte_mask(active + i));
    acc = _mm256_fmadd_pd(dm, dm, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    if (active[i] == 0) continue;
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void polygon_row_avx2(const double* edges, std::size_t n_edges, double y, double x0,
                      double dx, std::size_t count, double tol, std::uint8_t* inside) {
  alignas(32) double wn[kRowBlock];
  alignas(32) double near[kRowBlock];
  alignas(32) double px[kRowBlock];
  const double tol2 = tol * tol;
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d vtol2 = _mm256_set1_pd(tol2);
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const __m256d vdx = _mm256_set1_pd(dx);
  const __m256d vx0 = _mm256_set1_pd(x0);

  for (std::size_t first = 0; first < count; first += kRowBlock) {
    const std::size_t m = count - first < kRowBlock ? count - first : kRowBlock;
    const std::size_t mv = m & ~std::size_t{3};
    if (mv == 0) {
      polygon_row_block_scalar(edges, n_edges, y, x0, dx, first, m, tol, inside + first);
      continue;
    }
    for (std::size_t j = 0; j < mv; j += 4) {
      const __m256d idx = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(first + j)), lane);
      _mm256_store_pd(px + j, _mm256_add_pd(vx0, _mm256_mul_pd(idx, vdx)));
      _mm256_store_pd(wn + j, zero);
      _mm256_store_pd(near + j, zero);
    }
    for (std::size_t e = 0; e < n_edges; ++e) {
      const EdgeRowSetup s = edge_row_setup(edges + 4 * e, y, tol);
      const __m256d ax = _mm256_set1_pd(s.ax);
      const __m256d ex = _mm256_set1_pd(s.ex);
      const __m256d ey = _mm256_set1_pd(s.ey);
      if (s.up || s.down) {
        const __m256d c = _mm256_set1_pd(s.c);
        for (std::size_t j = 0; j < mv; j += 4) {
          const __m256d rx = _mm256_sub_pd(_mm256_load_pd(px + j), ax);
          const __m256d left = _mm256_sub_pd(c, _mm256_mul_pd(rx, ey));
          __m256d w = _mm256_load_pd(wn + j);
          if (s.up)
            w = _mm256_add_pd(w, _mm256_and_pd(_mm256_cmp_pd(left, zero, _CMP_GT_OQ), one));
          else
            w = _mm256_sub_pd(w, _mm256_and_pd(_mm256_cmp_pd(left, zero, _CMP_LT_OQ), one));
          _mm256_store_pd(wn + j, w);
        }
      }
      if (s.near_row) {
        const __m256d ry = _mm256_set1_pd(s.ry);
        const __m256d len2 = _mm256_set1_pd(s.len2);
        const __m256d rey = _mm256_mul_pd(ry, ey);
        for (std::size_t j = 0; j < mv; j += 4) {
          const __m256d rx = _mm256_sub_pd(_mm256_load_pd(px + j), ax);
          __m256d t = _mm256_div_pd(_mm256_add_pd(_mm256_mul_pd(rx, ex), rey), len2);
          t = _mm256_min_pd(_mm256_max_pd(t, zero), one);
          const __m256d qx = _mm256_sub_pd(rx, _mm256_mul_pd(t, ex));
          const __m256d qy = _mm256_sub_pd(ry, _mm256_mul_pd(t, ey));
          const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(qx, qx), _mm256_mul_pd(qy, qy));
          const __m256d hit = _mm256_and_pd(_mm256_cmp_pd(d2, vtol2, _CMP_LE_OQ), one);
          _mm256_store_pd(near + j, _mm256_or_pd(_mm256_load_pd(near + j), hit));
        }
      }
    }
    for (std::size_t j = 0; j < mv; ++j)
      inside[first + j] = (wn[j] != 0.0 && near[j] == 0.0) ? 1 : 0;
    if (mv < m)
      polygon_row_block_scalar(edges, n_edges, y, x0, dx, first + mv, m - mv, tol,
                               inside + first + mv);
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{Isa::avx2,        dot_avx2,
                                 axpy_avx2,        spmv_avx2,
                                 weighted_sq_sum_avx2, masked_diff_sq_sum_avx2,
                                 polygon_row_avx2};
  return table;
}

}  // namespace polya::simd::detail
