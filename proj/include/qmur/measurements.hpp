#pragma once

#include <string>

#include "qmur/linalg.hpp"
#include "qmur/rng.hpp"
#include "qmur/states.hpp"

namespace qmur {

/// Orthonormal basis of one subsystem; column j is |ψ_j>.
class MeasurementBasis {
public:
    MeasurementBasis(Matrix vectors, std::string label);

    static MeasurementBasis computational(std::size_t d);

    std::size_t dimension() const { return static_cast<std::size_t>(vectors_.cols()); }
    const Matrix& vectors() const { return vectors_; }
    const std::string& label() const { return label_; }
    Vector vector(Eigen::Index j) const { return vectors_.col(j); }
    Matrix projector(Eigen::Index j) const { return vectors_.col(j) * vectors_.col(j).adjoint(); }

private:
    Matrix vectors_;
    std::string label_;
};

/// v_k[j] = exp(2πi jk/d)/sqrt(d).
MeasurementBasis fourier_basis(std::size_t d);

/// Haar-random basis from a Gaussian matrix.
MeasurementBasis random_basis(CounterRng& rng, std::size_t d, std::string label = "random");

/// {|ψ_{j1}> ⊗ ... ⊗ |ψ_{jn}>} on the n-fold tensor power.
MeasurementBasis tensor_power(const MeasurementBasis& basis, std::size_t n);

struct Overlap {
    double c = 1.0;
    double log2_inv_c = 0.0;
};

/// c = max_{j,k} |<ψ_j|φ_k>|².
Overlap overlap_c(const MeasurementBasis& r, const MeasurementBasis& s);

/// Pinching ρ ↦ Σ_j (P_j ⊗ 1) ρ (P_j ⊗ 1) on one subsystem.
struct MeasurementChannel {
    MeasurementBasis basis;
    std::size_t subsystem = 0;
};

Matrix apply(const MeasurementChannel& ch, const Matrix& rho, const DimensionProfile& profile);
DensityOperator apply(const MeasurementChannel& ch, const DensityOperator& rho);

/// D = Σ_j exp(2πi j/d) |ψ_j><ψ_j|.
Matrix generalized_pauli(const MeasurementBasis& basis);

/// (1/d) Σ_a D^a ρ D^{-a} with D acting on `subsystem`.
Matrix twirl(const MeasurementBasis& basis, const Matrix& rho, const DimensionProfile& profile,
             std::size_t subsystem = 0);
DensityOperator twirl(const MeasurementBasis& basis, const DensityOperator& rho, std::size_t subsystem = 0);

/// Eigendecomposition of apply(ch, rho) whose eigenvectors are of the form
/// |ψ_j> ⊗ |v>, so any operator diagonal in it commutes with the channel.
Spectral pinched_spectral(const MeasurementChannel& ch, const Matrix& rho, const DimensionProfile& profile);

/// p_j = <ψ_j|ρ|ψ_j> for a single-system operator.
RealVector outcome_distribution(const MeasurementBasis& basis, const Matrix& rho);

} // namespace qmur
