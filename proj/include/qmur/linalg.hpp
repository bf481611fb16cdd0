#pragma once

// Dense complex linear algebra on the positive cone: a cyclic Jacobi
// Hermitian eigensolver, operator functions, Kronecker products and
// partial traces over an ordered tensor profile.
//
// Index convention: row-major Kronecker ordering with the left factor
// varying slowest, i.e. |i_0 i_1 ... i_{n-1}> has flat index
// ((i_0 * d_1 + i_1) * d_2 + ...) .

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qmur/errors.hpp"

namespace qmur {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Hermiticity residual accepted by the eigensolver (max-norm).
inline constexpr double kHermitianTol = 1e-10;
/// Eigenvalues at or below this are outside the support.
inline constexpr double kSupportTol = 1e-10;
/// Eigenvalues in [-kClampTol, 0) are roundoff and clamp to zero.
inline constexpr double kClampTol = 1e-10;

/// Ordered list of subsystem dimensions annotating a matrix.
class DimensionProfile {
public:
    DimensionProfile() = default;
    DimensionProfile(std::initializer_list<std::size_t> factors);
    explicit DimensionProfile(std::vector<std::size_t> factors);

    std::size_t size() const { return factors_.size(); }
    std::size_t operator[](std::size_t i) const { return factors_.at(i); }
    const std::vector<std::size_t>& factors() const { return factors_; }

    /// Product of all factors (1 for the empty profile).
    std::size_t total() const;
    /// Product of the factors at `indices`.
    std::size_t total(std::span<const std::size_t> indices) const;

    DimensionProfile select(std::span<const std::size_t> indices) const;
    DimensionProfile appended(std::size_t dim) const;
    DimensionProfile concatenated(const DimensionProfile& other) const;

    /// Throws DimensionError unless total() == dim.
    void require_total(std::size_t dim) const;

    /// "2x3x4"
    std::string to_string() const;
    /// Parses "AxB[xC...]"; throws ParameterError on malformed input.
    static DimensionProfile parse(const std::string& text);

    friend bool operator==(const DimensionProfile&, const DimensionProfile&) = default;

private:
    std::vector<std::size_t> factors_;
};

template <typename Scalar>
struct SpectralDecomposition {
    using RealScalar = typename Eigen::NumTraits<Scalar>::Real;

    /// Non-increasing.
    Eigen::Matrix<RealScalar, Eigen::Dynamic, 1> values;
    /// Column k is the eigenvector of values[k].
    DenseMatrix<Scalar> vectors;
    int sweeps = 0;

    DenseMatrix<Scalar> reconstruct() const
    {
        return vectors * values.template cast<Scalar>().asDiagonal() * vectors.adjoint();
    }
};

using Spectral = SpectralDecomposition<Complex>;

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* what)
{
    if (m.rows() != m.cols() || m.rows() < 1)
        throw DimensionError(std::string(what) + ": matrix must be square and non-empty, got "
                             + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real
hermiticity_residual(const Eigen::MatrixBase<Derived>& m)
{
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace detail

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kHermitianTol)
{
    return m.rows() == m.cols() && detail::hermiticity_residual(m) <= tol;
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot a_pq with a diagonal
/// unitary and then applies the classical real symmetric Jacobi rotation,
/// so the update stays exactly Hermitian. Converges when the off-diagonal
/// Frobenius mass drops below a few ulps of the total.
template <typename Derived>
SpectralDecomposition<typename Derived::Scalar>
eig_hermitian(const Eigen::MatrixBase<Derived>& input, int max_sweeps = 100)
{
    using Scalar = typename Derived::Scalar;
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    using std::abs;
    using std::sqrt;

    detail::require_square(input, "eig_hermitian");
    if (!input.allFinite())
        throw ShapeError("eig_hermitian: non-finite entries");
    const Real herm = detail::hermiticity_residual(input);
    if (herm > Real(kHermitianTol))
        throw ShapeError("eig_hermitian: matrix is not Hermitian (residual "
                         + std::to_string(static_cast<double>(herm)) + ")");

    const Eigen::Index n = input.rows();
    DenseMatrix<Scalar> a = (input + input.adjoint()) / Real(2);
    DenseMatrix<Scalar> v = DenseMatrix<Scalar>::Identity(n, n);

    const Real total = a.norm();
    const Real threshold = Real(4) * Eigen::NumTraits<Real>::epsilon() * total;

    auto off_norm = [&] {
        Real s = 0;
        for (Eigen::Index q = 0; q < n; ++q)
            for (Eigen::Index p = 0; p < q; ++p)
                s += Eigen::numext::abs2(a(p, q));
        return sqrt(Real(2) * s);
    };

    int sweep = 0;
    for (; sweep <= max_sweeps; ++sweep) {
        if (off_norm() <= threshold)
            break;
        if (sweep == max_sweeps)
            throw NumericError("eig_hermitian: no convergence after "
                               + std::to_string(max_sweeps) + " sweeps");
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Scalar apq = a(p, q);
                const Real g = abs(apq);
                if (g == Real(0))
                    continue;
                const Scalar phase = apq / g;
                const Real app = Eigen::numext::real(a(p, p));
                const Real aqq = Eigen::numext::real(a(q, q));
                const Real tau = (aqq - app) / (Real(2) * g);
                const Real t = (tau >= 0 ? Real(1) : Real(-1)) / (abs(tau) + sqrt(Real(1) + tau * tau));
                const Real c = Real(1) / sqrt(Real(1) + t * t);
                const Real s = t * c;

                // U = diag(1, conj(phase)) * [[c, s], [-s, c]]
                const Scalar u_pp = c;
                const Scalar u_pq = s;
                const Scalar u_qp = -s * Eigen::numext::conj(phase);
                const Scalar u_qq = c * Eigen::numext::conj(phase);

                for (Eigen::Index k = 0; k < n; ++k) {
                    const Scalar akp = a(k, p);
                    const Scalar akq = a(k, q);
                    a(k, p) = akp * u_pp + akq * u_qp;
                    a(k, q) = akp * u_pq + akq * u_qq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Scalar apk = a(p, k);
                    const Scalar aqk = a(q, k);
                    a(p, k) = Eigen::numext::conj(u_pp) * apk + Eigen::numext::conj(u_qp) * aqk;
                    a(q, k) = Eigen::numext::conj(u_pq) * apk + Eigen::numext::conj(u_qq) * aqk;
                }
                a(p, q) = Scalar(0);
                a(q, p) = Scalar(0);
                a(p, p) = Scalar(app - t * g);
                a(q, q) = Scalar(aqq + t * g);

                for (Eigen::Index k = 0; k < n; ++k) {
                    const Scalar vkp = v(k, p);
                    const Scalar vkq = v(k, q);
                    v(k, p) = vkp * u_pp + vkq * u_qp;
                    v(k, q) = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return Eigen::numext::real(a(i, i)) > Eigen::numext::real(a(j, j));
    });

    SpectralDecomposition<Scalar> out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[k] = Eigen::numext::real(a(order[k], order[k]));
        out.vectors.col(k) = v.col(order[k]);
    }
    out.sweeps = sweep;
    return out;
}

/// Eigenvalues only, non-increasing.
template <typename Derived>
auto eigenvalues_hermitian(const Eigen::MatrixBase<Derived>& m)
{
    return eig_hermitian(m).values;
}

/// Applies `fn` to the spectrum of a PSD matrix: V fn(Λ) V†.
///
/// Eigenvalues in [-kClampTol, 0) are clamped to zero; more negative ones
/// raise PositivityError.
template <typename Scalar, typename Fn>
DenseMatrix<Scalar> mat_fn_psd(const SpectralDecomposition<Scalar>& spec, Fn&& fn)
{
    using Real = typename SpectralDecomposition<Scalar>::RealScalar;
    const Eigen::Index n = spec.values.size();
    Eigen::Matrix<Real, Eigen::Dynamic, 1> mapped(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        Real lambda = spec.values[k];
        if (lambda < -Real(kClampTol))
            throw PositivityError("mat_fn_psd: eigenvalue " + std::to_string(static_cast<double>(lambda))
                                  + " below clamp tolerance");
        if (lambda < 0)
            lambda = 0;
        mapped[k] = fn(lambda);
    }
    return spec.vectors * mapped.template cast<Scalar>().asDiagonal() * spec.vectors.adjoint();
}

template <typename Derived, typename Fn>
auto mat_fn_psd(const Eigen::MatrixBase<Derived>& m, Fn&& fn)
{
    return mat_fn_psd(eig_hermitian(m), std::forward<Fn>(fn));
}

template <typename Derived>
auto sqrt_psd(const Eigen::MatrixBase<Derived>& m)
{
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    return mat_fn_psd(m, [](Real x) { return std::sqrt(x); });
}

/// Pseudo-inverse square root: x^{-1/2} on eigenvalues above kSupportTol,
/// zero elsewhere.
template <typename Derived>
auto inv_sqrt_psd(const Eigen::MatrixBase<Derived>& m)
{
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    return mat_fn_psd(m, [](Real x) { return x > Real(kSupportTol) ? Real(1) / std::sqrt(x) : Real(0); });
}

/// Projector onto the eigenvectors with eigenvalue above kSupportTol.
template <typename Derived>
auto support_projector(const Eigen::MatrixBase<Derived>& m)
{
    using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
    return mat_fn_psd(m, [](Real x) { return x > Real(kSupportTol) ? Real(1) : Real(0); });
}

/// Kronecker product a ⊗ b.
template <typename DerivedA, typename DerivedB>
DenseMatrix<typename DerivedA::Scalar> tensor(const Eigen::MatrixBase<DerivedA>& a,
                                              const Eigen::MatrixBase<DerivedB>& b)
{
    const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    DenseMatrix<typename DerivedA::Scalar> out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < ca; ++j)
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

template <typename Scalar>
DenseMatrix<Scalar> tensor_all(std::span<const DenseMatrix<Scalar>> factors)
{
    DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Identity(1, 1);
    for (const auto& f : factors)
        out = tensor(out, f);
    return out;
}

namespace detail {

/// Mixed-radix digits of every flat index, most significant first.
std::vector<std::vector<std::size_t>> index_digits(const DimensionProfile& profile);

/// For each flat index: (flat index within `keep`, flat index within the complement).
std::vector<std::pair<std::size_t, std::size_t>> split_indices(const DimensionProfile& profile,
                                                               std::span<const std::size_t> keep);

std::vector<std::size_t> normalized_subset(std::span<const std::size_t> keep, std::size_t n);

} // namespace detail

/// Partial trace over all subsystems not in `keep`. The result follows the
/// increasing subsystem order of `keep`. An empty `keep` yields the 1x1 trace.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> partial_trace(const Eigen::MatrixBase<Derived>& m,
                                                    const DimensionProfile& profile,
                                                    std::span<const std::size_t> keep)
{
    detail::require_square(m, "partial_trace");
    profile.require_total(static_cast<std::size_t>(m.rows()));
    const auto kept = detail::normalized_subset(keep, profile.size());
    const auto split = detail::split_indices(profile, kept);
    const auto dk = static_cast<Eigen::Index>(profile.total(kept));
    DenseMatrix<typename Derived::Scalar> out = DenseMatrix<typename Derived::Scalar>::Zero(dk, dk);
    const auto n = static_cast<std::size_t>(m.rows());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (split[i].second == split[j].second)
                out(static_cast<Eigen::Index>(split[i].first), static_cast<Eigen::Index>(split[j].first))
                    += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return out;
}

template <typename Derived>
auto partial_trace(const Eigen::MatrixBase<Derived>& m, const DimensionProfile& profile,
                   std::initializer_list<std::size_t> keep)
{
    const std::vector<std::size_t> k(keep);
    return partial_trace(m, profile, std::span<const std::size_t>(k));
}

/// Reorders tensor factors: factor k of the result is factor order[k] of the input.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> permute_subsystems(const Eigen::MatrixBase<Derived>& m,
                                                         const DimensionProfile& profile,
                                                         std::span<const std::size_t> order)
{
    detail::require_square(m, "permute_subsystems");
    profile.require_total(static_cast<std::size_t>(m.rows()));
    if (order.size() != profile.size())
        throw DimensionError("permute_subsystems: order length mismatch");
    std::vector<bool> seen(order.size(), false);
    for (auto k : order) {
        if (k >= order.size() || seen[k])
            throw DimensionError("permute_subsystems: order is not a permutation");
        seen[k] = true;
    }
    const auto digits = detail::index_digits(profile);
    const DimensionProfile target = profile.select(order);
    const std::size_t n = profile.total();
    std::vector<std::size_t> map(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t flat = 0;
        for (std::size_t k = 0; k < order.size(); ++k)
            flat = flat * target[k] + digits[i][order[k]];
        map[i] = flat;
    }
    DenseMatrix<typename Derived::Scalar> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(static_cast<Eigen::Index>(map[i]), static_cast<Eigen::Index>(map[j]))
                = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return out;
}

/// 1 ⊗ ... ⊗ op ⊗ ... ⊗ 1 with `op` on subsystem `index`.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> embed(const Eigen::MatrixBase<Derived>& op, const DimensionProfile& profile,
                                            std::size_t index)
{
    using Scalar = typename Derived::Scalar;
    if (index >= profile.size() || static_cast<std::size_t>(op.rows()) != profile[index]
        || op.rows() != op.cols())
        throw DimensionError("embed: operator does not match subsystem " + std::to_string(index));
    std::size_t left = 1, right = 1;
    for (std::size_t k = 0; k < index; ++k)
        left *= profile[k];
    for (std::size_t k = index + 1; k < profile.size(); ++k)
        right *= profile[k];
    const auto il = DenseMatrix<Scalar>::Identity(static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(left));
    const auto ir = DenseMatrix<Scalar>::Identity(static_cast<Eigen::Index>(right), static_cast<Eigen::Index>(right));
    return tensor(tensor(il, op), ir);
}

/// Sum of singular values. Hermitian inputs use the spectrum directly.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real trace_norm(const Eigen::MatrixBase<Derived>& m)
{
    detail::require_square(m, "trace_norm");
    if (is_hermitian(m, 1e-13))
        return eig_hermitian(m).values.cwiseAbs().sum();
    Eigen::JacobiSVD<DenseMatrix<typename Derived::Scalar>> svd(m.eval());
    return svd.singularValues().sum();
}

/// Largest eigenvalue of a Hermitian matrix.
template <typename Derived>
auto lambda_max(const Eigen::MatrixBase<Derived>& m)
{
    return eig_hermitian(m).values[0];
}

/// Real trace.
template <typename Derived>
auto real_trace(const Eigen::MatrixBase<Derived>& m)
{
    return Eigen::numext::real(m.trace());
}

} // namespace qmur
