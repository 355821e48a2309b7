#include "dqml/kernels.hpp"

#include <algorithm>

// Reference kernels. Complex arithmetic is written out on re/im parts so
// the scalar and SIMD paths compute the same expressions (and to avoid
// libgcc's slow Annex-G multiply on the hot loops).

namespace dqml::kern {
namespace {

inline cplx cmul(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(),
            a.real() * b.imag() + a.imag() * b.real()};
}

inline cplx cmul_conj_a(cplx a, cplx b) {  // conj(a) * b
    return {a.real() * b.real() + a.imag() * b.imag(),
            a.real() * b.imag() - a.imag() * b.real()};
}

void gemm_s(std::size_t n, cplx* c, const cplx* a, const cplx* b) {
    std::fill(c, c + n * n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        cplx* crow = c + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a[i * n + k];
            const cplx* brow = b + k * n;
            for (std::size_t j = 0; j < n; ++j)
                crow[j] += cmul(aik, brow[j]);
        }
    }
}

void gemm_acc_s(std::size_t n, cplx* c, const cplx* a, const cplx* b) {
    for (std::size_t i = 0; i < n; ++i) {
        cplx* crow = c + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a[i * n + k];
            const cplx* brow = b + k * n;
            for (std::size_t j = 0; j < n; ++j)
                crow[j] += cmul(aik, brow[j]);
        }
    }
}

// C += A * B^dagger: C[i,j] += sum_k A[i,k] conj(B[j,k])
void gemm_adjb_acc_s(std::size_t n, cplx* c, const cplx* a, const cplx* b) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx* arow = a + i * n;
        cplx* crow = c + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            const cplx* brow = b + j * n;
            cplx s{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k)
                s += cmul_conj_a(brow[k], arow[k]);
            crow[j] += s;
        }
    }
}

void matvec_s(std::size_t n, cplx* y, const cplx* a, const cplx* x) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx* arow = a + i * n;
        cplx s{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j)
            s += cmul(arow[j], x[j]);
        y[i] = s;
    }
}

void axpy_s(std::size_t len, cplx* y, cplx alpha, const cplx* x) {
    for (std::size_t i = 0; i < len; ++i)
        y[i] += cmul(alpha, x[i]);
}

void scal_s(std::size_t len, cplx* x, cplx alpha) {
    for (std::size_t i = 0; i < len; ++i)
        x[i] = cmul(alpha, x[i]);
}

cplx dotc_s(std::size_t len, const cplx* a, const cplx* b) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < len; ++i)
        s += cmul_conj_a(a[i], b[i]);
    return s;
}

cplx trace_mul_s(std::size_t n, const cplx* a, const cplx* b) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            s += cmul(a[i * n + k], b[k * n + i]);
    return s;
}

void apply_1q_s(cplx* v, unsigned n_bits, unsigned bit, const cplx* u) {
    const std::size_t len = std::size_t{1} << n_bits;
    const std::size_t stride = std::size_t{1} << (n_bits - 1 - bit);
    for (std::size_t base = 0; base < len; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            cplx x0 = v[base + off];
            cplx x1 = v[base + off + stride];
            v[base + off] = cmul(u[0], x0) + cmul(u[1], x1);
            v[base + off + stride] = cmul(u[2], x0) + cmul(u[3], x1);
        }
    }
}

// Insert a zero bit at the position corresponding to `stride`.
inline std::size_t expand_bit(std::size_t i, std::size_t stride) {
    return ((i & ~(stride - 1)) << 1) | (i & (stride - 1));
}

void apply_2q_s(cplx* v, unsigned n_bits, unsigned bit_hi, unsigned bit_lo,
                const cplx* m) {
    const std::size_t len = std::size_t{1} << n_bits;
    const std::size_t s_hi = std::size_t{1} << (n_bits - 1 - bit_hi);
    const std::size_t s_lo = std::size_t{1} << (n_bits - 1 - bit_lo);
    for (std::size_t i = 0; i < len / 4; ++i) {
        std::size_t idx = expand_bit(expand_bit(i, s_lo), s_hi);
        cplx x0 = v[idx];
        cplx x1 = v[idx + s_lo];
        cplx x2 = v[idx + s_hi];
        cplx x3 = v[idx + s_hi + s_lo];
        for (int r = 0; r < 4; ++r) {
            const cplx* mr = m + 4 * r;
            cplx y = cmul(mr[0], x0) + cmul(mr[1], x1) + cmul(mr[2], x2) +
                     cmul(mr[3], x3);
            v[idx + (r >> 1 ? s_hi : 0) + (r & 1 ? s_lo : 0)] = y;
        }
    }
}

}  // namespace

const Kernels& scalar() {
    static const Kernels table{
        "scalar",    gemm_s,      gemm_acc_s, gemm_adjb_acc_s,
        matvec_s,    axpy_s,      scal_s,     dotc_s,
        trace_mul_s, apply_1q_s,  apply_2q_s,
    };
    return table;
}

}  // namespace dqml::kern
