#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmur/linalg.hpp"
#include "qmur/measurements.hpp"
#include "qmur/sdp.hpp"
#include "qmur/states.hpp"

namespace qmur {

/// Entropy in bits, or the −∞ sentinel.
struct EntropyValue {
    double bits = 0;
    bool neg_infinity = false;

    static EntropyValue finite(double b) { return {b, false}; }
    static EntropyValue minus_infinity() { return {0, true}; }

    bool is_finite() const { return !neg_infinity; }
    /// bits, or -infinity for the sentinel.
    double value() const;
    /// Fixed with `precision` decimals, "-inf" for the sentinel.
    std::string format(int precision = 9) const;
};

using Subsystems = std::vector<std::size_t>;

/// ρ reordered and reduced to target ⊗ memory.
struct Bipartition {
    Matrix rho;
    std::size_t dim_target = 1;
    std::size_t dim_memory = 1;
};

/// Throws ParameterError if target and memory overlap or target is empty.
Bipartition arrange(const Matrix& rho, const DimensionProfile& profile, const Subsystems& target,
                    const Subsystems& memory);

// Spectral functionals on raw matrices. Eigenvalues at or below kSupportTol
// are dropped, so 0 log 0 = 0.
double shannon_entropy(const RealVector& p);
double von_neumann_bits(const Matrix& rho);
double min_entropy_bits(const Matrix& rho);
double max_entropy_bits(const Matrix& rho);
double neg_inf_entropy_bits(const Matrix& rho);

EntropyValue h_vn(const DensityOperator& rho, const std::optional<Subsystems>& subsystems = std::nullopt);
EntropyValue h_vn_cond(const DensityOperator& rho, const Subsystems& target, const Subsystems& memory);
EntropyValue h_vn_cond(const DensityOperator& rho, std::size_t target, std::size_t memory);
/// H(R|B) on the post-measurement state of ch.subsystem.
EntropyValue h_measured_cond(const DensityOperator& rho, const MeasurementChannel& ch, const Subsystems& memory);
EntropyValue h_measured_cond(const DensityOperator& rho, const MeasurementChannel& ch, std::size_t memory);

/// Unconditional entropies of the whole operator; subnormalized inputs allowed.
EntropyValue h_min_uncond(const DensityOperator& rho);
EntropyValue h_max_uncond(const DensityOperator& rho);
EntropyValue h_neg_inf(const DensityOperator& rho);

/// −log2 λ_max((1⊗σ)^{-1/2} ρ (1⊗σ)^{-1/2}) on ρ ordered A ⊗ B. σ may be
/// subnormalized here. Returns the sentinel when more than 1e-9 of tr ρ lies
/// outside 1 ⊗ supp(σ).
EntropyValue h_min_cond_fixed(const Matrix& rho_ab, std::size_t dim_a, const Matrix& sigma_b);
/// σ_B must be normalized.
EntropyValue h_min_cond_fixed(const DensityOperator& rho, const DensityOperator& sigma_b, const Subsystems& target,
                              const Subsystems& memory);
/// H_min(A|B)_{ρ|ρ}: σ is ρ's own marginal on `memory`.
EntropyValue h_min_cond_self(const DensityOperator& rho, const Subsystems& target, const Subsystems& memory);

struct MinEntropyResult {
    EntropyValue value;
    SdpSolution sdp;
};

MinEntropyResult h_min_cond(const Matrix& rho_ab, std::size_t dim_a, std::size_t dim_b,
                            const SdpOptions& options = {});
/// Empty `memory` reduces to h_min_uncond of the target marginal.
MinEntropyResult h_min_cond(const DensityOperator& rho, const Subsystems& target, const Subsystems& memory,
                            const SdpOptions& options = {});

} // namespace qmur
