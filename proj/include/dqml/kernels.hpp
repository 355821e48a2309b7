#pragma once

#include <complex>
#include <cstddef>

// Dense complex kernels used by every module. Each kernel exists as a
// scalar reference implementation and, on x86-64, an AVX2 variant. The
// active table is chosen once at startup from CPUID; DQML_KERNELS=scalar
// (or =avx2) forces a table, which the equivalence tests rely on.
//
// All matrices are square, row-major, std::complex<double>. Flat state
// vectors index basis states with qubit 0 as the most significant bit.

namespace dqml::kern {

using cplx = std::complex<double>;

struct Kernels {
    const char* name;

    // C = A * B (n x n)
    void (*gemm)(std::size_t n, cplx* c, const cplx* a, const cplx* b);
    // C += A * B
    void (*gemm_acc)(std::size_t n, cplx* c, const cplx* a, const cplx* b);
    // C += A * B^dagger
    void (*gemm_adjb_acc)(std::size_t n, cplx* c, const cplx* a, const cplx* b);
    // y = A * x
    void (*matvec)(std::size_t n, cplx* y, const cplx* a, const cplx* x);
    // y += alpha * x
    void (*axpy)(std::size_t len, cplx* y, cplx alpha, const cplx* x);
    // x *= alpha
    void (*scal)(std::size_t len, cplx* x, cplx alpha);
    // sum_i conj(a_i) * b_i
    cplx (*dotc)(std::size_t len, const cplx* a, const cplx* b);
    // Tr[A * B]
    cplx (*trace_mul)(std::size_t n, const cplx* a, const cplx* b);
    // 2x2 gate u on qubit `bit` of a 2^n_bits flat vector
    void (*apply_1q)(cplx* v, unsigned n_bits, unsigned bit, const cplx* u);
    // 4x4 gate m on qubit pair (bit_hi, bit_lo); bit_hi indexes the more
    // significant bit of m's 2-bit row/column index
    void (*apply_2q)(cplx* v, unsigned n_bits, unsigned bit_hi, unsigned bit_lo,
                     const cplx* m);
};

/// Table selected at startup (CPU probe + DQML_KERNELS override).
const Kernels& active();

/// Scalar reference table; always available.
const Kernels& scalar();

/// AVX2 table, or nullptr when unsupported by the build or the CPU.
const Kernels* avx2();

}  // namespace dqml::kern
