#include "dqml/kernels.hpp"

#if defined(DQML_BUILD_AVX2)

#include <immintrin.h>

#include <algorithm>

// AVX2/FMA kernels: one __m256d holds two complex<double>. Complex products
// use the fmaddsub idiom; conjugated products use fmsubadd.

namespace dqml::kern {
namespace {

inline __m256d cmul2(__m256d a, __m256d b) {
    __m256d ar = _mm256_movedup_pd(a);
    __m256d ai = _mm256_permute_pd(a, 0xF);
    __m256d bs = _mm256_permute_pd(b, 0x5);
    return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

// acc + a*b
inline __m256d cfma2(__m256d acc, __m256d a, __m256d b) {
    __m256d ar = _mm256_movedup_pd(a);
    __m256d ai = _mm256_permute_pd(a, 0xF);
    __m256d bs = _mm256_permute_pd(b, 0x5);
    return _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs)));
}

// acc + conj(a)*b
inline __m256d cfmac2(__m256d acc, __m256d a, __m256d b) {
    __m256d ar = _mm256_movedup_pd(a);
    __m256d ai = _mm256_permute_pd(a, 0xF);
    __m256d bs = _mm256_permute_pd(b, 0x5);
    return _mm256_add_pd(acc, _mm256_fmsubadd_pd(ar, b, _mm256_mul_pd(ai, bs)));
}

inline __m256d bcast(const cplx* p) {
    return _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(p));
}

inline cplx hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    return {out[0], out[1]};
}

inline cplx cmul1(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(),
            a.real() * b.imag() + a.imag() * b.real()};
}

inline cplx cmul1_conj_a(cplx a, cplx b) {
    return {a.real() * b.real() + a.imag() * b.imag(),
            a.real() * b.imag() - a.imag() * b.real()};
}

void row_update(cplx* crow, const cplx* brow, cplx aik, std::size_t n) {
    const __m256d va = bcast(&aik);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d c0 = _mm256_loadu_pd(reinterpret_cast<const double*>(crow + j));
        __m256d c1 = _mm256_loadu_pd(reinterpret_cast<const double*>(crow + j + 2));
        __m256d b0 = _mm256_loadu_pd(reinterpret_cast<const double*>(brow + j));
        __m256d b1 = _mm256_loadu_pd(reinterpret_cast<const double*>(brow + j + 2));
        _mm256_storeu_pd(reinterpret_cast<double*>(crow + j), cfma2(c0, va, b0));
        _mm256_storeu_pd(reinterpret_cast<double*>(crow + j + 2), cfma2(c1, va, b1));
    }
    for (; j + 2 <= n; j += 2) {
        __m256d c0 = _mm256_loadu_pd(reinterpret_cast<const double*>(crow + j));
        __m256d b0 = _mm256_loadu_pd(reinterpret_cast<const double*>(brow + j));
        _mm256_storeu_pd(reinterpret_cast<double*>(crow + j), cfma2(c0, va, b0));
    }
    for (; j < n; ++j)
        crow[j] += cmul1(aik, brow[j]);
}

void gemm_acc_v(std::size_t n, cplx* c, const cplx* a, const cplx* b) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            row_update(c + i * n, b + k * n, a[i * n + k], n);
}

void gemm_v(std::size_t n, cplx* c, const cplx* a, const cplx* b) {
    std::fill(c, c + n * n, cplx{0.0, 0.0});
    gemm_acc_v(n, c, a, b);
}

void gemm_adjb_acc_v(std::size_t n, cplx* c, const cplx* a, const cplx* b) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx* arow = a + i * n;
        cplx* crow = c + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            const cplx* brow = b + j * n;
            __m256d acc = _mm256_setzero_pd();
            std::size_t k = 0;
            for (; k + 2 <= n; k += 2) {
                __m256d vb = _mm256_loadu_pd(reinterpret_cast<const double*>(brow + k));
                __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(arow + k));
                acc = cfmac2(acc, vb, va);
            }
            cplx s = hsum(acc);
            for (; k < n; ++k)
                s += cmul1_conj_a(brow[k], arow[k]);
            crow[j] += s;
        }
    }
}

void matvec_v(std::size_t n, cplx* y, const cplx* a, const cplx* x) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx* arow = a + i * n;
        __m256d acc = _mm256_setzero_pd();
        std::size_t j = 0;
        for (; j + 2 <= n; j += 2) {
            __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(arow + j));
            __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + j));
            acc = cfma2(acc, va, vx);
        }
        cplx s = hsum(acc);
        for (; j < n; ++j)
            s += cmul1(arow[j], x[j]);
        y[i] = s;
    }
}

void axpy_v(std::size_t len, cplx* y, cplx alpha, const cplx* x) {
    const __m256d va = bcast(&alpha);
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d vy = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
        __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
        _mm256_storeu_pd(reinterpret_cast<double*>(y + i), cfma2(vy, va, vx));
    }
    for (; i < len; ++i)
        y[i] += cmul1(alpha, x[i]);
}

void scal_v(std::size_t len, cplx* x, cplx alpha) {
    const __m256d va = bcast(&alpha);
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
        _mm256_storeu_pd(reinterpret_cast<double*>(x + i), cmul2(va, vx));
    }
    for (; i < len; ++i)
        x[i] = cmul1(alpha, x[i]);
}

cplx dotc_v(std::size_t len, const cplx* a, const cplx* b) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= len; i += 2) {
        __m256d va = _mm256_loadu_pd(reinterpret_cast<const double*>(a + i));
        __m256d vb = _mm256_loadu_pd(reinterpret_cast<const double*>(b + i));
        acc = cfmac2(acc, va, vb);
    }
    cplx s = hsum(acc);
    for (; i < len; ++i)
        s += cmul1_conj_a(a[i], b[i]);
    return s;
}

void apply_1q_v(cplx* v, unsigned n_bits, unsigned bit, const cplx* u) {
    const std::size_t len = std::size_t{1} << n_bits;
    const std::size_t stride = std::size_t{1} << (n_bits - 1 - bit);
    const __m256d u00 = bcast(u + 0), u01 = bcast(u + 1);
    const __m256d u10 = bcast(u + 2), u11 = bcast(u + 3);
    if (stride >= 2) {
        for (std::size_t base = 0; base < len; base += 2 * stride) {
            cplx* p0 = v + base;
            cplx* p1 = v + base + stride;
            for (std::size_t off = 0; off < stride; off += 2) {
                __m256d x0 = _mm256_loadu_pd(reinterpret_cast<const double*>(p0 + off));
                __m256d x1 = _mm256_loadu_pd(reinterpret_cast<const double*>(p1 + off));
                __m256d y0 = cfma2(cmul2(u00, x0), u01, x1);
                __m256d y1 = cfma2(cmul2(u10, x0), u11, x1);
                _mm256_storeu_pd(reinterpret_cast<double*>(p0 + off), y0);
                _mm256_storeu_pd(reinterpret_cast<double*>(p1 + off), y1);
            }
        }
    } else {
        // Adjacent pairs: process one (x0,x1) pair per register.
        const __m256d col0 = _mm256_set_pd(u[2].imag(), u[2].real(), u[0].imag(), u[0].real());
        const __m256d col1 = _mm256_set_pd(u[3].imag(), u[3].real(), u[1].imag(), u[1].real());
        for (std::size_t base = 0; base < len; base += 2) {
            __m256d x = _mm256_loadu_pd(reinterpret_cast<const double*>(v + base));
            __m256d x0 = _mm256_permute2f128_pd(x, x, 0x00);
            __m256d x1 = _mm256_permute2f128_pd(x, x, 0x11);
            __m256d y = cfma2(cmul2(col0, x0), col1, x1);
            _mm256_storeu_pd(reinterpret_cast<double*>(v + base), y);
        }
    }
}

inline std::size_t expand_bit(std::size_t i, std::size_t stride) {
    return ((i & ~(stride - 1)) << 1) | (i & (stride - 1));
}

void apply_2q_v(cplx* v, unsigned n_bits, unsigned bit_hi, unsigned bit_lo,
                const cplx* m) {
    const std::size_t len = std::size_t{1} << n_bits;
    const std::size_t s_hi = std::size_t{1} << (n_bits - 1 - bit_hi);
    const std::size_t s_lo = std::size_t{1} << (n_bits - 1 - bit_lo);
    if (s_lo >= 2) {
        __m256d mv[16];
        for (int e = 0; e < 16; ++e)
            mv[e] = bcast(m + e);
        const std::size_t n_base = len / (4 * s_lo);
        for (std::size_t ib = 0; ib < n_base; ++ib) {
            std::size_t idx = expand_bit(expand_bit(ib * s_lo, s_lo), s_hi);
            cplx* p0 = v + idx;
            cplx* p1 = v + idx + s_lo;
            cplx* p2 = v + idx + s_hi;
            cplx* p3 = v + idx + s_hi + s_lo;
            for (std::size_t off = 0; off < s_lo; off += 2) {
                __m256d x0 = _mm256_loadu_pd(reinterpret_cast<const double*>(p0 + off));
                __m256d x1 = _mm256_loadu_pd(reinterpret_cast<const double*>(p1 + off));
                __m256d x2 = _mm256_loadu_pd(reinterpret_cast<const double*>(p2 + off));
                __m256d x3 = _mm256_loadu_pd(reinterpret_cast<const double*>(p3 + off));
                __m256d y0 = cfma2(cfma2(cfma2(cmul2(mv[0], x0), mv[1], x1), mv[2], x2), mv[3], x3);
                __m256d y1 = cfma2(cfma2(cfma2(cmul2(mv[4], x0), mv[5], x1), mv[6], x2), mv[7], x3);
                __m256d y2 = cfma2(cfma2(cfma2(cmul2(mv[8], x0), mv[9], x1), mv[10], x2), mv[11], x3);
                __m256d y3 = cfma2(cfma2(cfma2(cmul2(mv[12], x0), mv[13], x1), mv[14], x2), mv[15], x3);
                _mm256_storeu_pd(reinterpret_cast<double*>(p0 + off), y0);
                _mm256_storeu_pd(reinterpret_cast<double*>(p1 + off), y1);
                _mm256_storeu_pd(reinterpret_cast<double*>(p2 + off), y2);
                _mm256_storeu_pd(reinterpret_cast<double*>(p3 + off), y3);
            }
        }
    } else {
        for (std::size_t i = 0; i < len / 4; ++i) {
            std::size_t idx = expand_bit(expand_bit(i, s_lo), s_hi);
            cplx x0 = v[idx];
            cplx x1 = v[idx + s_lo];
            cplx x2 = v[idx + s_hi];
            cplx x3 = v[idx + s_hi + s_lo];
            for (int r = 0; r < 4; ++r) {
                const cplx* mr = m + 4 * r;
                cplx y = cmul1(mr[0], x0) + cmul1(mr[1], x1) + cmul1(mr[2], x2) +
                         cmul1(mr[3], x3);
                v[idx + (r >> 1 ? s_hi : 0) + (r & 1 ? s_lo : 0)] = y;
            }
        }
    }
}

cplx trace_mul_v(std::size_t n, const cplx* a, const cplx* b) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            s += cmul1(a[i * n + k], b[k * n + i]);
    return s;
}

}  // namespace

const Kernels* avx2_table() {
    static const Kernels table{
        "avx2",      gemm_v,      gemm_acc_v, gemm_adjb_acc_v,
        matvec_v,    axpy_v,      scal_v,     dotc_v,
        trace_mul_v, apply_1q_v,  apply_2q_v,
    };
    return &table;
}

}  // namespace dqml::kern

#endif  // DQML_BUILD_AVX2
