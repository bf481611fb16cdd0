#pragma once

#include "qmur/linalg.hpp"

namespace qmur {

struct SdpOptions {
    /// Stop once the barrier duality measure m/t falls below gap_tol * tr σ.
    double gap_tol = 1e-9;
    /// Total Newton steps before giving up.
    int max_iterations = 600;
    /// Barrier parameter growth per outer step.
    double growth = 10.0;
};

/// Optimizer of   minimize tr σ   subject to   1_A ⊗ σ ⪰ ρ_AB.
struct SdpSolution {
    /// Unnormalized PSD optimizer σ_B.
    Matrix sigma;
    /// tr σ_B (primal objective).
    double value = 0;
    /// tr(ρ Y) for a dual feasible Y (Y ⪰ 0, tr_A Y = 1); a lower bound on value.
    double dual_value = 0;
    /// max(0, −λ_min(1 ⊗ σ − ρ)).
    double primal_residual = 0;
    /// tr((1 ⊗ σ − ρ) Y) at the returned pair.
    double complementarity = 0;
    int iterations = 0;
};

/// Log-det barrier interior-point solve with Newton steps on σ and a
/// decade schedule for the barrier parameter. `rho_ab` is ordered A ⊗ B.
/// Throws NumericError if the iteration budget runs out.
SdpSolution solve_min_entropy_sdp(const Matrix& rho_ab, std::size_t dim_a, std::size_t dim_b,
                                  const SdpOptions& options = {});

} // namespace qmur
