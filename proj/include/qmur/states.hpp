#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmur/linalg.hpp"
#include "qmur/rng.hpp"

namespace qmur {

/// Normalized states need trace 1 within this tolerance; subnormalized ones
/// may exceed 1 by at most this much.
inline constexpr double kTraceTol = 1e-9;

enum class Normalization { normalized, subnormalized };

struct StateDiagnostics {
    double hermiticity_residual = 0;
    double min_eigenvalue = 0;
    double trace = 0;
    double trace_deviation = 0;
    bool pass = false;
    std::string message;
};

StateDiagnostics validate(const Matrix& m, const DimensionProfile& profile, Normalization normalization);

/// Positive semidefinite operator with trace <= 1 on a tensor profile.
/// Construction validates; an invalid matrix raises the matching error.
class DensityOperator {
public:
    DensityOperator(Matrix matrix, DimensionProfile profile, Normalization normalization = Normalization::normalized);

    /// Validates as subnormalized.
    static DensityOperator subnormalized(Matrix matrix, DimensionProfile profile);

    const Matrix& matrix() const { return matrix_; }
    const DimensionProfile& profile() const { return profile_; }
    Normalization normalization() const { return normalization_; }
    bool is_normalized() const { return normalization_ == Normalization::normalized; }
    Eigen::Index dim() const { return matrix_.rows(); }
    double trace() const { return real_trace(matrix_); }

    /// Reduced operator on `keep` (increasing subsystem order).
    DensityOperator marginal(std::span<const std::size_t> keep) const;
    DensityOperator marginal(std::initializer_list<std::size_t> keep) const;

private:
    Matrix matrix_;
    DimensionProfile profile_;
    Normalization normalization_;
};

StateDiagnostics validate(const DensityOperator& rho);

/// |v><v|
Matrix pure_projector(const Vector& v);
Matrix maximally_mixed(std::size_t d);

/// (1/sqrt d) sum_j |j>|j> as a projector on profile [d, d].
DensityOperator max_entangled(std::size_t d);

/// p |Φ><Φ| + (1 - p) 1/d².
DensityOperator werner(std::size_t d, double p);

/// Minimal purification on profile [..., d_E] with d_E = rank(ρ).
DensityOperator purify(const DensityOperator& rho);

enum class EnsembleKind { haar_pure, hilbert_schmidt_mixed, rank_limited };

struct RandomEnsembleSpec {
    EnsembleKind kind = EnsembleKind::hilbert_schmidt_mixed;
    DimensionProfile profile;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    /// Environment dimension for rank_limited.
    std::size_t rank = 2;
};

DensityOperator sample(const RandomEnsembleSpec& spec);

/// Variants drawing from an existing stream.
DensityOperator sample_haar_pure(CounterRng& rng, const DimensionProfile& profile);
DensityOperator sample_hilbert_schmidt(CounterRng& rng, const DimensionProfile& profile);
DensityOperator sample_rank_limited(CounterRng& rng, const DimensionProfile& profile, std::size_t rank);

/// Hermitian matrix with Gaussian entries (GUE up to scale).
Matrix random_hermitian(CounterRng& rng, std::size_t d);

/// Haar unitary from orthonormalized Gaussian columns.
Matrix random_unitary(CounterRng& rng, std::size_t d);

/// Modified Gram-Schmidt with one re-orthogonalization pass.
Matrix orthonormalize(const Matrix& columns);

std::string to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string& name);

} // namespace qmur
