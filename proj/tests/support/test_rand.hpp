#pragma once

#include <cmath>

#include "dqml/qcore.hpp"
#include "dqml/rng.hpp"

// Random test inputs: Ginibre matrices, density operators, Haar-ish
// unitaries via modified Gram-Schmidt. Test-only.

namespace dqml::testing {

inline ComplexMatrix random_ginibre(Rng& rng, std::size_t n) {
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g(i, j) = cplx{rng.normal(), rng.normal()};
    return g;
}

inline DensityOperator random_density(Rng& rng, std::size_t n) {
    const ComplexMatrix g = random_ginibre(rng, n);
    ComplexMatrix rho = g * g.adjoint();
    rho *= cplx{1.0 / rho.trace().real(), 0.0};
    rho = 0.5 * (rho + rho.adjoint());
    return DensityOperator::from_matrix(std::move(rho));
}

inline ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
    ComplexMatrix g = random_ginibre(rng, n);
    // Modified Gram-Schmidt on columns, two passes.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < j; ++k) {
                cplx ov{0.0, 0.0};
                for (std::size_t i = 0; i < n; ++i)
                    ov += std::conj(g(i, k)) * g(i, j);
                for (std::size_t i = 0; i < n; ++i)
                    g(i, j) -= ov * g(i, k);
            }
            double nrm = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                nrm += std::norm(g(i, j));
            nrm = std::sqrt(nrm);
            for (std::size_t i = 0; i < n; ++i)
                g(i, j) /= nrm;
        }
    }
    return g;
}

inline PureState random_pure(Rng& rng, std::size_t n) {
    std::vector<cplx> v(n);
    for (cplx& z : v)
        z = cplx{rng.normal(), rng.normal()};
    return PureState::normalized(std::move(v));
}

}  // namespace dqml::testing
