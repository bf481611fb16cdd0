#include "qmur/states.hpp"

#include <cmath>

namespace qmur {

StateDiagnostics validate(const Matrix& m, const DimensionProfile& profile, Normalization normalization)
{
    StateDiagnostics d;
    if (m.rows() != m.cols() || m.rows() < 1) {
        d.message = "matrix is not square";
        return d;
    }
    if (profile.total() != static_cast<std::size_t>(m.rows())) {
        d.message = "profile " + profile.to_string() + " does not match dimension " + std::to_string(m.rows());
        return d;
    }
    if (!m.allFinite()) {
        d.message = "non-finite entries";
        return d;
    }
    d.hermiticity_residual = detail::hermiticity_residual(m);
    d.trace = real_trace(m);
    if (d.hermiticity_residual > kHermitianTol) {
        d.message = "not Hermitian (residual " + std::to_string(d.hermiticity_residual) + ")";
        return d;
    }
    d.min_eigenvalue = eig_hermitian(m).values.minCoeff();
    if (normalization == Normalization::normalized)
        d.trace_deviation = std::abs(d.trace - 1.0);
    else
        d.trace_deviation = std::max(0.0, d.trace - 1.0);

    if (d.min_eigenvalue < -kClampTol) {
        d.message = "negative eigenvalue " + std::to_string(d.min_eigenvalue);
        return d;
    }
    if (normalization == Normalization::normalized && d.trace_deviation > kTraceTol) {
        d.message = "trace " + std::to_string(d.trace) + " is not 1";
        return d;
    }
    if (normalization == Normalization::subnormalized && (d.trace <= 0.0 || d.trace > 1.0 + kTraceTol)) {
        d.message = "trace " + std::to_string(d.trace) + " outside (0, 1]";
        return d;
    }
    d.pass = true;
    return d;
}

StateDiagnostics validate(const DensityOperator& rho)
{
    return validate(rho.matrix(), rho.profile(), rho.normalization());
}

DensityOperator::DensityOperator(Matrix matrix, DimensionProfile profile, Normalization normalization)
    : matrix_(std::move(matrix)), profile_(std::move(profile)), normalization_(normalization)
{
    if (matrix_.rows() != matrix_.cols())
        throw DimensionError("DensityOperator: matrix is not square");
    profile_.require_total(static_cast<std::size_t>(matrix_.rows()));
    const auto diag = validate(matrix_, profile_, normalization_);
    if (!diag.pass) {
        if (diag.hermiticity_residual > kHermitianTol || !matrix_.allFinite())
            throw ShapeError("DensityOperator: " + diag.message);
        if (diag.min_eigenvalue < -kClampTol)
            throw PositivityError("DensityOperator: " + diag.message);
        throw NormalizationError("DensityOperator: " + diag.message);
    }
    matrix_ = (matrix_ + matrix_.adjoint()).eval() / 2.0;
}

DensityOperator DensityOperator::subnormalized(Matrix matrix, DimensionProfile profile)
{
    return DensityOperator(std::move(matrix), std::move(profile), Normalization::subnormalized);
}

DensityOperator DensityOperator::marginal(std::span<const std::size_t> keep) const
{
    const auto kept = detail::normalized_subset(keep, profile_.size());
    return DensityOperator(partial_trace(matrix_, profile_, kept), profile_.select(kept), normalization_);
}

DensityOperator DensityOperator::marginal(std::initializer_list<std::size_t> keep) const
{
    const std::vector<std::size_t> k(keep);
    return marginal(std::span<const std::size_t>(k));
}

Matrix pure_projector(const Vector& v)
{
    return v * v.adjoint();
}

Matrix maximally_mixed(std::size_t d)
{
    const auto n = static_cast<Eigen::Index>(d);
    return Matrix::Identity(n, n) / static_cast<double>(d);
}

DensityOperator max_entangled(std::size_t d)
{
    if (d < 2)
        throw DimensionError("max_entangled: d must be >= 2");
    const auto n = static_cast<Eigen::Index>(d);
    Vector phi = Vector::Zero(n * n);
    for (Eigen::Index j = 0; j < n; ++j)
        phi[j * n + j] = 1.0 / std::sqrt(static_cast<double>(d));
    return DensityOperator(pure_projector(phi), {d, d});
}

DensityOperator werner(std::size_t d, double p)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw ParameterError("werner: p must lie in [0, 1]");
    const Matrix phi = max_entangled(d).matrix();
    return DensityOperator(p * phi + (1.0 - p) * maximally_mixed(d * d), {d, d});
}

DensityOperator purify(const DensityOperator& rho)
{
    if (!rho.is_normalized())
        throw NormalizationError("purify: input must be normalized");
    const auto spec = eig_hermitian(rho.matrix());
    std::size_t rank = 0;
    for (Eigen::Index k = 0; k < spec.values.size(); ++k)
        if (spec.values[k] > kSupportTol)
            ++rank;
    const auto n = rho.dim();
    const auto r = static_cast<Eigen::Index>(rank);
    Vector psi = Vector::Zero(n * r);
    // |ψ> = Σ_k sqrt(λ_k) |v_k> ⊗ |k>_E
    for (Eigen::Index k = 0; k < r; ++k) {
        const double w = std::sqrt(spec.values[k]);
        for (Eigen::Index i = 0; i < n; ++i)
            psi[i * r + k] += w * spec.vectors(i, k);
    }
    psi /= psi.norm();
    return DensityOperator(pure_projector(psi), rho.profile().appended(rank));
}

Matrix orthonormalize(const Matrix& columns)
{
    Matrix q = columns;
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index k = 0; k < j; ++k)
                q.col(j) -= q.col(k) * (q.col(k).adjoint() * q.col(j))(0, 0);
        const double norm = q.col(j).norm();
        if (norm < 1e-12)
            throw NumericError("orthonormalize: columns are linearly dependent");
        q.col(j) /= norm;
    }
    return q;
}

Matrix random_unitary(CounterRng& rng, std::size_t d)
{
    const auto n = static_cast<Eigen::Index>(d);
    return orthonormalize(rng.complex_gaussian(n, n));
}

Matrix random_hermitian(CounterRng& rng, std::size_t d)
{
    const auto n = static_cast<Eigen::Index>(d);
    const Matrix g = rng.complex_gaussian(n, n);
    return (g + g.adjoint()) / 2.0;
}

DensityOperator sample_haar_pure(CounterRng& rng, const DimensionProfile& profile)
{
    Vector v = rng.complex_gaussian(static_cast<Eigen::Index>(profile.total()), 1).col(0);
    v /= v.norm();
    return DensityOperator(pure_projector(v), profile);
}

DensityOperator sample_hilbert_schmidt(CounterRng& rng, const DimensionProfile& profile)
{
    const auto n = static_cast<Eigen::Index>(profile.total());
    const Matrix g = rng.complex_gaussian(n, n);
    Matrix rho = g * g.adjoint();
    rho /= real_trace(rho);
    return DensityOperator(rho, profile);
}

DensityOperator sample_rank_limited(CounterRng& rng, const DimensionProfile& profile, std::size_t rank)
{
    if (rank < 1)
        throw ParameterError("sample: rank must be >= 1");
    const auto pure = sample_haar_pure(rng, profile.appended(rank));
    std::vector<std::size_t> keep(profile.size());
    std::iota(keep.begin(), keep.end(), std::size_t{0});
    return pure.marginal(keep);
}

DensityOperator sample(const RandomEnsembleSpec& spec)
{
    auto rng = CounterRng::substream(spec.seed, spec.trial);
    switch (spec.kind) {
    case EnsembleKind::haar_pure:
        return sample_haar_pure(rng, spec.profile);
    case EnsembleKind::hilbert_schmidt_mixed:
        return sample_hilbert_schmidt(rng, spec.profile);
    case EnsembleKind::rank_limited:
        return sample_rank_limited(rng, spec.profile, spec.rank);
    }
    throw ParameterError("sample: unknown ensemble kind");
}

std::string to_string(EnsembleKind kind)
{
    switch (kind) {
    case EnsembleKind::haar_pure:
        return "haar-pure";
    case EnsembleKind::hilbert_schmidt_mixed:
        return "hilbert-schmidt-mixed";
    case EnsembleKind::rank_limited:
        return "rank-limited";
    }
    return "unknown";
}

EnsembleKind ensemble_kind_from_string(const std::string& name)
{
    if (name == "haar-pure")
        return EnsembleKind::haar_pure;
    if (name == "hilbert-schmidt-mixed")
        return EnsembleKind::hilbert_schmidt_mixed;
    if (name == "rank-limited")
        return EnsembleKind::rank_limited;
    throw ParameterError("unknown ensemble kind '" + name + "'");
}

} // namespace qmur
