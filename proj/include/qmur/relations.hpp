#pragma once
// Checkers for the uncertainty relations. Bipartite inputs live on a
// two-factor profile [d_A, d_B]; both measurements act on factor 0.

#include <vector>

#include "qmur/certificate.hpp"
#include "qmur/entropies.hpp"
#include "qmur/measurements.hpp"
#include "qmur/smoothing.hpp"
#include "qmur/states.hpp"

namespace qmur {

/// Tolerances by the kind of terms involved.
inline constexpr double kSpectralTol = 1e-9;
inline constexpr double kVonNeumannTol = 1e-8;
inline constexpr double kSdpTol = 1e-6;
inline constexpr double kOracleTol = 1e-3;

/// ΔR ΔS ≥ ½|tr(ρ[R, S])| on a single system.
RelationCertificate check_robertson(const Matrix& r, const Matrix& s, const DensityOperator& rho);

/// H(R) + H(S) ≥ log2(1/c) for the outcome distributions on a single system.
RelationCertificate check_maassen_uffink(const MeasurementBasis& r, const MeasurementBasis& s,
                                         const DensityOperator& rho);

/// H(R|B) + H(S|B) ≥ log2(1/c) + H(A|B).
RelationCertificate check_main_theorem(const MeasurementBasis& r, const MeasurementBasis& s,
                                       const DensityOperator& rho);

struct CorollaryResult {
    RelationCertificate certificate;
    /// |H(RB) − H(RE)| and |H(AB) − H(E)| on the purification.
    double residual_rb_re = 0;
    double residual_ab_e = 0;
};

/// H(R|E) + H(S|B) ≥ log2(1/c) on the minimal purification of ρ_AB.
CorollaryResult check_br_corollary(const MeasurementBasis& r, const MeasurementBasis& s, const DensityOperator& rho);

/// Ω on [d, d, d_A, d_B] (registers A′, B′, A, B).
struct OmegaState {
    DensityOperator state;
    DensityOperator source;
    MeasurementBasis r;
    MeasurementBasis s;
    std::string source_digest;
};

/// Ω = d⁻² Σ_{a,b} |a⟩⟨a| ⊗ |b⟩⟨b| ⊗ (D_R^a D_S^b ⊗ 1) ρ (D_S^{-b} D_R^{-a} ⊗ 1).
/// Throws UnsupportedScaleError when d² d_A d_B > 4096.
OmegaState build_omega(const MeasurementBasis& r, const MeasurementBasis& s, const DensityOperator& rho);

/// The four Ω identities, in order omega1..omega4.
std::vector<RelationCertificate> check_omega_identities(const OmegaState& omega);

/// The three links of
///   H_min(A′B′AB) − H_{-∞}(A′AB) ≤ H_min(B′|A′AB)_{Ω|Ω} ≤ H_min(B′|AB)_{Ω|Ω}
///                                ≤ H_min(B′A|B) − H_min(A|B).
std::vector<RelationCertificate> check_combined_chain(const OmegaState& omega);

/// H_min(R|B) + H_{-∞}(SB) ≥ log2(1/c) + H_min(AB); subnormalized ρ allowed.
/// The combined-chain values on Ω are attached as terms when `with_chain`.
RelationCertificate check_nonsmooth_theorem(const MeasurementBasis& r, const MeasurementBasis& s,
                                            const DensityOperator& rho, bool with_chain = false);

/// Step-by-step certificates of the constructive smoothing argument for the
/// smooth relation, ε ∈ (0, 0.3].
std::vector<RelationCertificate> check_smooth_proof_trace(const MeasurementBasis& r, const MeasurementBasis& s,
                                                          const DensityOperator& rho, double epsilon);

/// H_min(R) + H_max(S) ≥ log2(1/c) on a single system.
RelationCertificate check_renyi_endpoint(const MeasurementBasis& r, const MeasurementBasis& s,
                                         const DensityOperator& rho);

/// c(r^{⊗n}, s^{⊗n}) = c(r, s)^n.
RelationCertificate check_iid_overlap(const MeasurementBasis& r, const MeasurementBasis& s, std::size_t n);

} // namespace qmur
