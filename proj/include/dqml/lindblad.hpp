#pragma once

#include <optional>
#include <vector>

#include "dqml/channels.hpp"
#include "dqml/qcore.hpp"

// Time-independent GKSL generators, their matrix form on column-stacked
// density operators, time evolution by matrix exponential, kernel analysis
// and the infinite-time (steady-state) map.

namespace dqml {

struct Dissipator {
    double rate;            // units of the reference frequency
    ComplexMatrix jump_op;  // dimensionless
};

struct LindbladModel {
    std::size_t dim = 0;
    ComplexMatrix hamiltonian;  // Hermitian within 1e-10; hbar = omega = 1
    std::vector<Dissipator> dissipators;

    static LindbladModel make(ComplexMatrix hamiltonian,
                              std::vector<Dissipator> dissipators);
};

struct Liouvillian {
    std::size_t dim = 0;
    ComplexMatrix matrix;  // dim^2 x dim^2, acts on column-stacked rho
};

/// Matrix M with vec(drho/dt) = M vec(rho). dim <= 16.
Liouvillian build_liouvillian(const LindbladModel& model);

/// rho(t) = unvec(expm(M t) vec(rho0)), drift-repaired.
DensityOperator evolve(const LindbladModel& model, const DensityOperator& rho0,
                       double t);

/// Frobenius-orthonormal basis of {sigma : M vec(sigma) = 0 within tol}.
std::vector<ComplexMatrix> steady_states(const LindbladModel& model, double tol);

/// Two qubits in a common thermal bath: H = 0, collective jump operators
/// sqrt(n_bar+1)(s1+s2) and sqrt(n_bar)(s1+s2)^dagger at rate Gamma.
LindbladModel two_qubit_thermal_model(double n_bar, double gamma);

/// Two qubits in a squeezed vacuum reservoir: H = 0, single jump operator
/// cosh(r)(s1+s2) - sinh(r) e^{i psi} (s1+s2)^dagger at rate Gamma.
LindbladModel squeezed_reservoir_model(double r, double psi, double gamma);

/// Single qubit relaxing toward the thermal state: H = diag(-1/2, +1/2)
/// (ground state first), decay at gamma_plus and excitation at gamma_minus
/// from thermal_rates(gamma0, T).
LindbladModel qubit_thermal_model(double gamma0_tilde, double T_tilde);

/// Linear map rho(0) -> rho(infinity): the spectral projector onto the
/// Liouvillian kernel along the decaying subspace.
class SteadyStateMap {
  public:
    static SteadyStateMap build(const LindbladModel& model);

    DensityOperator apply(const DensityOperator& rho0) const;

    std::size_t dim() const { return dim_; }
    const ComplexMatrix& matrix() const { return projector_; }
    std::size_t kernel_dim() const { return kernel_dim_; }
    double spectral_gap() const { return gap_; }

    /// Smallest Choi eigenvalue; >= -tol means completely positive.
    double choi_min_eigenvalue() const;
    bool is_completely_positive(double tol = 1e-8) const;

    /// Kraus form from the Choi eigendecomposition; empty when the map is
    /// not completely positive within cp_tol.
    std::optional<KrausChannel> kraus_form(double cp_tol = 1e-8) const;

  private:
    SteadyStateMap(std::size_t dim, ComplexMatrix projector,
                   std::size_t kernel_dim, double gap)
        : dim_(dim), projector_(std::move(projector)), kernel_dim_(kernel_dim),
          gap_(gap) {}
    ComplexMatrix choi() const;

    std::size_t dim_;
    ComplexMatrix projector_;  // dim^2 x dim^2
    std::size_t kernel_dim_;
    double gap_;
};

}  // namespace dqml
