#pragma once

#include "qmur/linalg.hpp"
#include "qmur/states.hpp"

namespace qmur {

/// F(ρ, σ) = ‖√ρ √σ‖₁.
double fidelity(const Matrix& rho, const Matrix& sigma);
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

/// F̄(ρ, σ) = F(ρ, σ) + sqrt((1 - tr ρ)(1 - tr σ)); equals F when either
/// state is normalized.
double gen_fidelity(const Matrix& rho, const Matrix& sigma);
double gen_fidelity(const DensityOperator& rho, const DensityOperator& sigma);

/// P(ρ, σ) = sqrt(1 - F̄²), with 1 - F̄² clamped at zero.
double purified_distance(const Matrix& rho, const Matrix& sigma);
double purified_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// ½‖ρ − σ‖₁
double trace_distance(const Matrix& rho, const Matrix& sigma);
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// sqrt((tr ρ)² − (tr Π²ρ)²) / sqrt(tr ρ), an upper bound on P(ρ, ΠρΠ).
double distance_projection_bound(const Matrix& rho, const Matrix& pi);

// Commuting operators given by their spectra in a shared eigenbasis.
double gen_fidelity_diag(const RealVector& q, const RealVector& s);
double purified_distance_diag(const RealVector& q, const RealVector& s);

/// B^ε(center) under the purified distance.
struct BallSpec {
    BallSpec(DensityOperator center, double radius);

    DensityOperator center;
    double radius;
};

struct BallMembership {
    bool inside = false;
    /// radius − P
    double margin = 0;
    double distance = 0;
};

/// Inside iff P(center, candidate) <= radius + 1e-9.
BallMembership in_ball(const DensityOperator& candidate, const BallSpec& ball);

} // namespace qmur
