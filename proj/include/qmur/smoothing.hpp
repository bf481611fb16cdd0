#pragma once
// Smoothing operators 0 ≤ Π ≤ 1, diagonal in an eigenbasis of σ, that trade a
// bounded trace deficit tr((1 − Π²)σ) for certified bounds on the smooth
// min- and max-entropies. All optimizations run on spectra: within the
// purified-distance ball the optimum can be taken diagonal in σ's basis.

#include "qmur/entropies.hpp"
#include "qmur/linalg.hpp"
#include "qmur/states.hpp"

namespace qmur {

enum class SmoothingBudget { two_epsilon, three_epsilon };

struct SmoothingOperator {
    /// Π = V diag(factors) V†.
    Matrix op;
    /// V; column k carries factors[k] and the k-th eigenvalue of σ.
    Matrix eigenbasis;
    RealVector factors;
    /// tr((1 − Π²)σ)
    double trace_deficit = 0;
    SmoothingBudget budget = SmoothingBudget::two_epsilon;
    double epsilon = 0;

    /// 2ε or 3ε.
    double budget_bound() const;
};

struct SmoothingResult {
    SmoothingOperator smoothing;
    EntropyValue value;
    /// H_max(Π̄σΠ̄) after the first stage; only set by the H_{-∞} construction.
    EntropyValue first_stage;
};

/// Exact optimum of min 2 log2 Σ√q_i over subnormalized q with
/// P(q, s) ≤ ε, for a subnormalized spectrum s.
struct HmaxSpectrumOptimum {
    RealVector q;
    EntropyValue value;
};
HmaxSpectrumOptimum optimal_hmax_spectrum(const RealVector& s, double epsilon);

/// Cap λ* = 2^{-H_min^ε} for a normalized spectrum: the smallest λ such that
/// some subnormalized q ≤ λ lies within purified distance ε of s.
double optimal_hmin_cap(const RealVector& s, double epsilon);

/// Lemma-style H_max smoothing: ρ' = min(q*, s) = ΠσΠ with budget 2ε.
/// value = H_max(ΠσΠ), a lower bound on H_max^ε(σ). ε ∈ (0, 0.3].
SmoothingResult smooth_budget_operator_hmax(const DensityOperator& sigma, double epsilon);
SmoothingResult smooth_budget_operator_hmax(const Spectral& sigma_spectrum, double epsilon);

/// Composition with the tail cut: budget 3ε, value = H_{-∞}(ΠσΠ) with
/// H_max^ε(σ) ≥ value − 2 log2(1/ε). ε ∈ (0, 0.3].
SmoothingResult smooth_budget_operator_hneginf(const DensityOperator& sigma, double epsilon);
SmoothingResult smooth_budget_operator_hneginf(const Spectral& sigma_spectrum, double epsilon);

/// Clips σ's spectrum at λ*: budget 2ε, value = H_min(ΠσΠ) = H_min^ε(σ).
/// σ normalized, ε ∈ [0, 0.3].
SmoothingResult smooth_hmin_operator(const DensityOperator& sigma, double epsilon);
SmoothingResult smooth_hmin_operator(const Spectral& sigma_spectrum, double epsilon);

/// Projector keeping the largest eigenvalues, dropping the longest tail of
/// mass ≤ ε. Returns 0/1 factors in the order of `sorted_spectrum`
/// (non-increasing).
RealVector tail_cut(const RealVector& sorted_spectrum, double epsilon);

/// Brute-force grid in x = √q over subnormalized q with P(q, s) ≤ ε, then a
/// local pattern search. An upper bound on H_max^ε(s) that is tight to the
/// final pitch. Dimension ≤ 4.
EntropyValue smooth_hmax_oracle(const RealVector& spectrum, double epsilon);

} // namespace qmur
