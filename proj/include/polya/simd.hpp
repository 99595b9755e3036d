#pragma once

// Data-parallel inner loops used by the eigensolver, the coverage sampler
// and the discrete Sobolev norm. Every kernel has a scalar reference
// implementation and (on x86-64) an AVX2 variant selected at runtime.
//
// The scalar and AVX2 geometry kernels are compiled with
// -ffp-contract=off and evaluate the same operation sequence, so their
// integer outputs agree bit for bit. Floating-point reductions (dot and
// sums) differ only by summation order.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace polya::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;

  double (*dot)(const double* a, const double* b, std::size_t n);

  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

  // y = A x for a CSR matrix with `rows` rows.
  void (*spmv)(const int* row_ptr, const int* cols, const double* vals,
               std::size_t rows, const double* x, double* y);

  // sum_i w[i] * f[i]^2
  double (*weighted_sq_sum)(const double* f, const double* w, std::size_t n);

  // sum_i [active[i] != 0] * (a[i] - b[i])^2
  double (*masked_diff_sq_sum)(const double* a, const double* b,
                               const std::uint8_t* active, std::size_t n);

  // Open-polygon membership for the row of samples (x0 + j*dx, y),
  // j = 0..count-1. `edges` holds n_edges quadruples (ax, ay, bx, by).
  // inside[j] = 1 iff the winding number is nonzero and the sample is
  // farther than `tol` from every edge.
  void (*polygon_row)(const double* edges, std::size_t n_edges, double y,
                      double x0, double dx, std::size_t count, double tol,
                      std::uint8_t* inside);
};

const KernelTable& scalar_kernels();

// nullptr when the CPU (or the build target) lacks AVX2+FMA.
const KernelTable* avx2_kernels();

// Active table. Chosen once from the CPU features; POLYA_LAB_SIMD=scalar
// or POLYA_LAB_SIMD=avx2 overrides the choice.
const KernelTable& kernels();

// Test hook: switch the active table. Throws if the ISA is unavailable.
void force_isa(Isa isa);

}  // namespace polya::simd
