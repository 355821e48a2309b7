#pragma once

#include <string>
#include <vector>

#include "dqml/qcore.hpp"

// Kraus-operator quantum operations: the built-in channel zoo, completeness
// validation and extraction of Kraus operators from a unitary dilation.

namespace dqml {

struct KrausChannel {
    std::size_t dim = 0;
    std::vector<ComplexMatrix> kraus_ops;
    std::string label;
};

/// Dimensionless parameters of the finite-temperature damping channel:
/// zero-temperature decay rate, temperature and evolution time.
struct GadParams {
    double gamma0_tilde = 0.0;
    double T_tilde = 0.0;
    double tau_tilde = 0.0;
};

/// Upward/downward thermal transition rates derived from (gamma0, T).
/// For 1/(2T) > 350 (or T = 0) the zero-temperature limits are used.
struct ThermalRates {
    double gamma_plus = 0.0;   // decay |+> -> |->
    double gamma_minus = 0.0;  // excitation |-> -> |+>
};
ThermalRates thermal_rates(double gamma0_tilde, double T_tilde);

/// sum_j K_j rho K_j^dagger.
DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& rho);

/// True iff ||sum_j K_j^dagger K_j - I||_F <= tol.
bool validate_completeness(const KrausChannel& ch, double tol);

KrausChannel amplitude_damping(double p);
KrausChannel phase_damping(double p);
KrausChannel depolarizing(double p);

/// Four-operator channel reproducing the dissipative part of the thermal
/// qubit master equation at time tau (the coherent factor is applied
/// separately by callers). Basis order: index 0 = ground.
KrausChannel generalized_amplitude_damping(const GadParams& params);

/// Kraus operators of the reduced map Tr_E[U_C (rho (x) rho_E0) U_C^dagger];
/// environment eigenvectors with weight <= 1e-12 are dropped and
/// completeness is re-validated after the drop.
KrausChannel kraus_from_dilation(const ComplexMatrix& u_c,
                                 const DensityOperator& rho_e0,
                                 std::size_t d_s, std::size_t d_e);

/// Zoo lookup for experiment configs ("amplitude_damping", "phase_damping",
/// "depolarizing"); "gad" goes through the GadParams overload.
KrausChannel make_channel(const std::string& name, double p);

}  // namespace dqml
