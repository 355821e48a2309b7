#include <doctest.h>

#include <vector>

#include "dqml/kernels.hpp"
#include "dqml/rng.hpp"

using namespace dqml;
using kern::cplx;

namespace {

std::vector<cplx> random_buf(Rng& rng, std::size_t len) {
    std::vector<cplx> v(len);
    for (cplx& z : v)
        z = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Plain std::complex reference used as the oracle against both tables.
std::vector<cplx> naive_gemm(const std::vector<cplx>& a,
                             const std::vector<cplx>& b, std::size_t n) {
    std::vector<cplx> c(n * n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                c[i * n + j] += a[i * n + k] * b[k * n + j];
    return c;
}

// Dense oracle for the flat-vector gate kernels.
std::vector<cplx> naive_apply_gate(const std::vector<cplx>& v, unsigned n_bits,
                                   const std::vector<unsigned>& bits,
                                   const std::vector<cplx>& gate) {
    const std::size_t len = std::size_t{1} << n_bits;
    const std::size_t g = std::size_t{1} << bits.size();
    std::vector<cplx> out(len, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < len; ++i) {
        std::size_t row = 0;
        for (std::size_t b = 0; b < bits.size(); ++b)
            row = (row << 1) | ((i >> (n_bits - 1 - bits[b])) & 1);
        for (std::size_t col = 0; col < g; ++col) {
            std::size_t src = i;
            for (std::size_t b = 0; b < bits.size(); ++b) {
                const std::size_t pos = n_bits - 1 - bits[b];
                const std::size_t bit = (col >> (bits.size() - 1 - b)) & 1;
                src = (src & ~(std::size_t{1} << pos)) | (bit << pos);
            }
            out[i] += gate[row * g + col] * v[src];
        }
    }
    return out;
}

void check_table(const kern::Kernels& k) {
    Rng rng(42);
    for (std::size_t n : {1, 2, 3, 4, 5, 8, 16, 33}) {
        auto a = random_buf(rng, n * n);
        auto b = random_buf(rng, n * n);

        std::vector<cplx> c(n * n);
        k.gemm(n, c.data(), a.data(), b.data());
        CHECK(max_diff(c, naive_gemm(a, b, n)) < 1e-12 * double(n));

        auto acc = random_buf(rng, n * n);
        auto expect = acc;
        k.gemm_acc(n, acc.data(), a.data(), b.data());
        auto prod = naive_gemm(a, b, n);
        for (std::size_t i = 0; i < n * n; ++i)
            expect[i] += prod[i];
        CHECK(max_diff(acc, expect) < 1e-12 * double(n));

        std::vector<cplx> bdag(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                bdag[i * n + j] = std::conj(b[j * n + i]);
        auto adj = std::vector<cplx>(n * n, cplx{0.0, 0.0});
        k.gemm_adjb_acc(n, adj.data(), a.data(), b.data());
        CHECK(max_diff(adj, naive_gemm(a, bdag, n)) < 1e-12 * double(n));

        auto x = random_buf(rng, n);
        std::vector<cplx> y(n);
        k.matvec(n, y.data(), a.data(), x.data());
        std::vector<cplx> yref(n, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                yref[i] += a[i * n + j] * x[j];
        CHECK(max_diff(y, yref) < 1e-12 * double(n));

        const cplx alpha{0.3, -0.7};
        auto y2 = random_buf(rng, n * n);
        auto y2ref = y2;
        k.axpy(n * n, y2.data(), alpha, a.data());
        for (std::size_t i = 0; i < n * n; ++i)
            y2ref[i] += alpha * a[i];
        CHECK(max_diff(y2, y2ref) < 1e-13);

        auto sc = a;
        auto scref = a;
        k.scal(n * n, sc.data(), alpha);
        for (cplx& z : scref)
            z *= alpha;
        CHECK(max_diff(sc, scref) < 1e-13);

        const cplx dot = k.dotc(n * n, a.data(), b.data());
        cplx dotref{0.0, 0.0};
        for (std::size_t i = 0; i < n * n; ++i)
            dotref += std::conj(a[i]) * b[i];
        CHECK(std::abs(dot - dotref) < 1e-12 * double(n));

        const cplx tr = k.trace_mul(n, a.data(), b.data());
        cplx trref{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t kk = 0; kk < n; ++kk)
                trref += a[i * n + kk] * b[kk * n + i];
        CHECK(std::abs(tr - trref) < 1e-12 * double(n));
    }

    // Gate kernels, every bit position.
    for (unsigned n_bits = 1; n_bits <= 6; ++n_bits) {
        auto v = random_buf(rng, std::size_t{1} << n_bits);
        auto u = random_buf(rng, 4);
        for (unsigned bit = 0; bit < n_bits; ++bit) {
            auto got = v;
            k.apply_1q(got.data(), n_bits, bit, u.data());
            CHECK(max_diff(got, naive_apply_gate(v, n_bits, {bit}, u)) < 1e-13);
        }
    }
    for (unsigned n_bits = 2; n_bits <= 6; ++n_bits) {
        auto v = random_buf(rng, std::size_t{1} << n_bits);
        auto m = random_buf(rng, 16);
        for (unsigned hi = 0; hi < n_bits; ++hi)
            for (unsigned lo = 0; lo < n_bits; ++lo) {
                if (hi == lo)
                    continue;
                auto got = v;
                k.apply_2q(got.data(), n_bits, hi, lo, m.data());
                CHECK(max_diff(got, naive_apply_gate(v, n_bits, {hi, lo}, m)) <
                      1e-13);
            }
    }
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar kernels match the std::complex oracle") {
    check_table(kern::scalar());
}

TEST_CASE("avx2 kernels match the std::complex oracle") {
    if (const kern::Kernels* k = kern::avx2())
        check_table(*k);
    else
        MESSAGE("avx2 unavailable on this host; skipped");
}

TEST_CASE("scalar and simd tables agree on random inputs") {
    const kern::Kernels* v = kern::avx2();
    if (!v) {
        MESSAGE("avx2 unavailable on this host; skipped");
        return;
    }
    const kern::Kernels& s = kern::scalar();
    Rng rng(7);
    for (std::size_t n : {2, 3, 7, 16, 64}) {
        auto a = random_buf(rng, n * n);
        auto b = random_buf(rng, n * n);
        std::vector<cplx> c1(n * n), c2(n * n);
        s.gemm(n, c1.data(), a.data(), b.data());
        v->gemm(n, c2.data(), a.data(), b.data());
        CHECK(max_diff(c1, c2) < 1e-12 * double(n));

        std::vector<cplx> d1(n * n, cplx{0, 0}), d2 = d1;
        s.gemm_adjb_acc(n, d1.data(), a.data(), b.data());
        v->gemm_adjb_acc(n, d2.data(), a.data(), b.data());
        CHECK(max_diff(d1, d2) < 1e-12 * double(n));
    }
    for (unsigned n_bits : {3u, 5u, 8u}) {
        auto x = random_buf(rng, std::size_t{1} << n_bits);
        auto u = random_buf(rng, 4);
        auto m = random_buf(rng, 16);
        for (unsigned bit = 0; bit < n_bits; ++bit) {
            auto x1 = x, x2 = x;
            s.apply_1q(x1.data(), n_bits, bit, u.data());
            v->apply_1q(x2.data(), n_bits, bit, u.data());
            CHECK(max_diff(x1, x2) < 1e-13);
        }
        auto y1 = x, y2 = x;
        s.apply_2q(y1.data(), n_bits, 0, n_bits - 1, m.data());
        v->apply_2q(y2.data(), n_bits, 0, n_bits - 1, m.data());
        CHECK(max_diff(y1, y2) < 1e-13);
    }
}

TEST_CASE("active table is one of the registered tables") {
    const kern::Kernels& a = kern::active();
    const bool known =
        (&a == &kern::scalar()) || (kern::avx2() && &a == kern::avx2());
    CHECK(known);
}

}  // TEST_SUITE
