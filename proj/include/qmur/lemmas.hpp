#pragma once
// Checkers for the auxiliary inequalities on distances and entropies.

#include <vector>

#include "qmur/certificate.hpp"
#include "qmur/measurements.hpp"
#include "qmur/states.hpp"

namespace qmur {

/// ‖ρ − σ‖₁ ≤ 2 P(ρ, σ).
RelationCertificate check_trace_bound(const DensityOperator& rho, const DensityOperator& sigma);

/// P(ΠρΠ, ΠσΠ) ≤ P(ρ, σ) for 0 ≤ Π ≤ 1.
RelationCertificate check_distance_nonincrease(const DensityOperator& rho, const DensityOperator& sigma,
                                               const Matrix& pi);

/// P(ρ, ΠρΠ) ≤ sqrt((tr ρ)² − (tr Π²ρ)²) / sqrt(tr ρ).
RelationCertificate check_distance_projection(const DensityOperator& rho, const Matrix& pi);

/// P(ρ, σ) ≥ P(ρ̃, σ) with ρ̃ the sorted spectrum of ρ placed on σ's sorted eigenbasis.
RelationCertificate check_rearrangement(const DensityOperator& rho, const DensityOperator& sigma);

/// P(ρ, τ) ≤ P(ρ, σ) + P(σ, τ).
RelationCertificate check_distance_triangle(const DensityOperator& rho, const DensityOperator& sigma,
                                            const DensityOperator& tau);

/// P(ρ_keep, σ_keep) ≤ P(ρ, σ).
RelationCertificate check_distance_partial_trace(const DensityOperator& rho, const DensityOperator& sigma,
                                                 const std::vector<std::size_t>& keep);

/// Chain rule I on [A, B, C]: H_min(A|BC)_{ρ|ρ} ≤ H_min(AB|C) − H_min(B|C);
/// chain rule II on the AB marginal: H_min(AB) − H_{-∞}(B) ≤ H_min(A|B)_{ρ|ρ}.
/// A bipartite ρ is read as [A, B] with trivial C.
std::vector<RelationCertificate> check_chain_rules(const DensityOperator& rho);

/// H_min(A|BC)_{ρ|ρ} ≤ H_min(A|B)_{ρ|ρ} on [A, B, C].
RelationCertificate check_strong_subadditivity(const DensityOperator& rho);

/// H_max^ε(σ) ≤ H_max^ε(M(σ)) for the measurement in `basis`. ε = 0 is exact;
/// ε > 0 compares grid oracles and is skipped above dimension 4.
RelationCertificate check_hmax_measurement_monotonicity(const DensityOperator& sigma, const MeasurementBasis& basis,
                                                        double epsilon);

/// σ′ ≤ σ, both diagonal in one basis: H_max^ε(σ′) ≤ H_max^ε(σ) by oracle.
RelationCertificate check_substate_monotonicity(const DensityOperator& sub, const DensityOperator& sigma,
                                                double epsilon);

/// H_min ≤ H ≤ H_max ≤ log2 d and H_min ≤ H_{-∞}, as four certificates.
std::vector<RelationCertificate> check_entropy_ordering(const DensityOperator& rho);

/// H(R|B) ≤ H(R) on [d_A, d_B].
RelationCertificate check_conditioning_reduces(const DensityOperator& rho, const MeasurementBasis& basis);

/// On [A, B]: the SDP value matches h_min_cond_fixed at the normalized
/// optimizer (1e-5), the primal residual is ≤ 1e-8, and the optimum dominates
/// h_min_cond_fixed at `probe`.
std::vector<RelationCertificate> check_sdp_consistency(const DensityOperator& rho, const DensityOperator& probe);

} // namespace qmur
