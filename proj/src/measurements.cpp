#include "qmur/measurements.hpp"

#include <numbers>

namespace qmur {

namespace {

constexpr double kOrthonormalTol = 1e-10;

void require_subsystem(const MeasurementBasis& basis, const DimensionProfile& profile, std::size_t subsystem)
{
    if (subsystem >= profile.size() || profile[subsystem] != basis.dimension())
        throw DimensionError("basis '" + basis.label() + "' of dimension " + std::to_string(basis.dimension())
                             + " does not match subsystem " + std::to_string(subsystem) + " of profile "
                             + profile.to_string());
}

/// Isometry |x> ⊗ |ψ_j> ⊗ |y> for the j-th basis vector on `subsystem`.
Matrix block_isometry(const MeasurementBasis& basis, const DimensionProfile& profile, std::size_t subsystem,
                      Eigen::Index j)
{
    std::size_t left = 1, right = 1;
    for (std::size_t k = 0; k < subsystem; ++k)
        left *= profile[k];
    for (std::size_t k = subsystem + 1; k < profile.size(); ++k)
        right *= profile[k];
    const auto il = Matrix::Identity(static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(left));
    const auto ir = Matrix::Identity(static_cast<Eigen::Index>(right), static_cast<Eigen::Index>(right));
    return tensor(tensor(il, Matrix(basis.vector(j))), ir);
}

} // namespace

MeasurementBasis::MeasurementBasis(Matrix vectors, std::string label)
    : vectors_(std::move(vectors)), label_(std::move(label))
{
    if (vectors_.rows() != vectors_.cols() || vectors_.rows() < 1)
        throw DimensionError("MeasurementBasis: need d vectors of dimension d");
    const auto n = vectors_.rows();
    const double residual = (vectors_.adjoint() * vectors_ - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (!(residual <= kOrthonormalTol))
        throw ShapeError("MeasurementBasis '" + label_ + "': not orthonormal (residual "
                         + std::to_string(residual) + ")");
}

MeasurementBasis MeasurementBasis::computational(std::size_t d)
{
    const auto n = static_cast<Eigen::Index>(d);
    return MeasurementBasis(Matrix::Identity(n, n), "computational");
}

MeasurementBasis fourier_basis(std::size_t d)
{
    if (d < 2)
        throw DimensionError("fourier_basis: d must be >= 2");
    const auto n = static_cast<Eigen::Index>(d);
    Matrix v(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index j = 0; j < n; ++j) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(d);
            v(j, k) = std::polar(norm, angle);
        }
    return MeasurementBasis(std::move(v), "fourier");
}

MeasurementBasis random_basis(CounterRng& rng, std::size_t d, std::string label)
{
    return MeasurementBasis(random_unitary(rng, d), std::move(label));
}

MeasurementBasis tensor_power(const MeasurementBasis& basis, std::size_t n)
{
    if (n < 1)
        throw ParameterError("tensor_power: n must be >= 1");
    Matrix v = basis.vectors();
    for (std::size_t k = 1; k < n; ++k)
        v = tensor(v, basis.vectors());
    return MeasurementBasis(std::move(v), basis.label() + "^" + std::to_string(n));
}

Overlap overlap_c(const MeasurementBasis& r, const MeasurementBasis& s)
{
    if (r.dimension() != s.dimension())
        throw DimensionError("overlap_c: bases have different dimensions");
    const double c = (r.vectors().adjoint() * s.vectors()).cwiseAbs2().maxCoeff();
    return {c, -std::log2(c)};
}

Matrix apply(const MeasurementChannel& ch, const Matrix& rho, const DimensionProfile& profile)
{
    require_subsystem(ch.basis, profile, ch.subsystem);
    profile.require_total(static_cast<std::size_t>(rho.rows()));
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(ch.basis.dimension()); ++j) {
        const Matrix p = embed(ch.basis.projector(j), profile, ch.subsystem);
        out.noalias() += p * rho * p;
    }
    return out;
}

DensityOperator apply(const MeasurementChannel& ch, const DensityOperator& rho)
{
    return DensityOperator(apply(ch, rho.matrix(), rho.profile()), rho.profile(), rho.normalization());
}

Matrix generalized_pauli(const MeasurementBasis& basis)
{
    const auto d = static_cast<Eigen::Index>(basis.dimension());
    Eigen::VectorXcd phases(d);
    for (Eigen::Index j = 0; j < d; ++j)
        phases[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d));
    return basis.vectors() * phases.asDiagonal() * basis.vectors().adjoint();
}

Matrix twirl(const MeasurementBasis& basis, const Matrix& rho, const DimensionProfile& profile, std::size_t subsystem)
{
    require_subsystem(basis, profile, subsystem);
    const Matrix d = embed(generalized_pauli(basis), profile, subsystem);
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    Matrix power = Matrix::Identity(rho.rows(), rho.cols());
    const auto count = basis.dimension();
    for (std::size_t a = 0; a < count; ++a) {
        out.noalias() += power * rho * power.adjoint();
        power = d * power;
    }
    return out / static_cast<double>(count);
}

DensityOperator twirl(const MeasurementBasis& basis, const DensityOperator& rho, std::size_t subsystem)
{
    return DensityOperator(twirl(basis, rho.matrix(), rho.profile(), subsystem), rho.profile(), rho.normalization());
}

Spectral pinched_spectral(const MeasurementChannel& ch, const Matrix& rho, const DimensionProfile& profile)
{
    require_subsystem(ch.basis, profile, ch.subsystem);
    profile.require_total(static_cast<std::size_t>(rho.rows()));
    const auto n = rho.rows();
    const auto d = static_cast<Eigen::Index>(ch.basis.dimension());
    const auto block = n / d;

    RealVector values(n);
    Matrix vectors(n, n);
    for (Eigen::Index j = 0; j < d; ++j) {
        const Matrix w = block_isometry(ch.basis, profile, ch.subsystem, j);
        const auto spec = eig_hermitian((w.adjoint() * rho * w).eval());
        values.segment(j * block, block) = spec.values;
        vectors.middleCols(j * block, block) = w * spec.vectors;
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] > values[b]; });
    Spectral out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[k] = values[order[k]];
        out.vectors.col(k) = vectors.col(order[k]);
    }
    return out;
}

RealVector outcome_distribution(const MeasurementBasis& basis, const Matrix& rho)
{
    if (static_cast<std::size_t>(rho.rows()) != basis.dimension())
        throw DimensionError("outcome_distribution: dimension mismatch");
    const auto d = static_cast<Eigen::Index>(basis.dimension());
    RealVector p(d);
    for (Eigen::Index j = 0; j < d; ++j)
        p[j] = std::max(0.0, (basis.vector(j).adjoint() * rho * basis.vector(j))(0, 0).real());
    return p;
}

} // namespace qmur
