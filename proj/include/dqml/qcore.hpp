#pragma once

#include <cstddef>
#include <vector>

#include "dqml/complex_matrix.hpp"

// Quantum states, density operators and projective measurement.
//
// Composite-system index convention used everywhere: qubit 0 (or the first
// tensor factor) is the most significant bit/block of the basis index.
// The largest supported Hilbert dimension is 256 (8 qubits).

namespace dqml {

inline constexpr std::size_t kMaxDim = 256;

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Normalized state vector. Constructors reject vectors whose Euclidean
/// norm deviates from 1 by more than 1e-12; `normalized` rescales instead.
class PureState {
  public:
    explicit PureState(std::vector<cplx> amplitudes);
    static PureState normalized(std::vector<cplx> amplitudes);
    static PureState basis_state(std::size_t dim, std::size_t index);

    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    cplx operator[](std::size_t i) const { return amps_[i]; }

  private:
    struct Unchecked {};
    PureState(std::vector<cplx> amplitudes, Unchecked) : amps_(std::move(amplitudes)) {}
    std::vector<cplx> amps_;
};

PureState tensor(const PureState& a, const PureState& b);

/// Hermitian, unit-trace matrix. Construction checks Hermiticity (1e-10,
/// max elementwise) and trace (1e-10); the eigenvalue floor (-1e-10) is a
/// separate check because it costs a full eigendecomposition.
class DensityOperator {
  public:
    static DensityOperator from_matrix(ComplexMatrix m);
    static DensityOperator from_pure(const PureState& psi);
    static DensityOperator maximally_mixed(std::size_t dim);

    std::size_t dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }

    double min_eigenvalue() const;
    bool is_positive_semidefinite(double tol = 1e-10) const;

  private:
    explicit DensityOperator(ComplexMatrix m) : matrix_(std::move(m)) {}
    ComplexMatrix matrix_;
};

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// Symmetrize and renormalize after a composite numerical step. Fails if
/// the Hermiticity or trace drift exceeds 1e-8.
DensityOperator repair_drift(ComplexMatrix rho);

/// U rho U^dagger. U must be unitary within 1e-10.
DensityOperator evolve_unitary(const DensityOperator& rho, const ComplexMatrix& u);

enum class Keep { System, Environment };

/// Reduce a state on S (x) E, dim d_s * d_e, to the kept factor.
DensityOperator partial_trace(const DensityOperator& rho_c, std::size_t d_s,
                              std::size_t d_e, Keep keep);

/// Tr[A rho] for Hermitian A (within 1e-10).
double expectation(const DensityOperator& rho, const ComplexMatrix& a);

struct MeasureResult {
    int outcome;  // 1 iff u < Tr[P rho]
    PureState post_state;
};

/// Measure the rank-1 projector P = |chi><chi| on a qubit state with the
/// caller-supplied uniform deviate u in [0,1). Outcome 1 collapses onto
/// |chi>, outcome 0 onto the orthogonal qubit state.
MeasureResult projective_measure(const DensityOperator& rho,
                                 const ComplexMatrix& p, double u);

/// |<chi|phi>| in [0,1].
double fidelity(const PureState& chi, const PureState& phi);

/// (1/2) || rho - sigma ||_1.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// Orthogonal companion of a qubit state: (-conj(a1), conj(a0)).
PureState orthogonal_qubit(const PureState& phi);

}  // namespace dqml
