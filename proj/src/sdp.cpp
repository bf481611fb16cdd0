#include "qmur/sdp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace qmur {

namespace {

/// Orthonormal basis of the real vector space of d×d Hermitian matrices
/// under Re tr(A† B).
std::vector<Matrix> hermitian_basis(Eigen::Index d)
{
    std::vector<Matrix> basis;
    basis.reserve(static_cast<std::size_t>(d * d));
    const double r = 1.0 / std::sqrt(2.0);
    for (Eigen::Index j = 0; j < d; ++j) {
        Matrix e = Matrix::Zero(d, d);
        e(j, j) = 1.0;
        basis.push_back(std::move(e));
    }
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = j + 1; k < d; ++k) {
            Matrix re = Matrix::Zero(d, d);
            re(j, k) = r;
            re(k, j) = r;
            basis.push_back(std::move(re));
            Matrix im = Matrix::Zero(d, d);
            im(j, k) = Complex(0, -r);
            im(k, j) = Complex(0, r);
            basis.push_back(std::move(im));
        }
    return basis;
}

Matrix lift(const Matrix& sigma, Eigen::Index dim_a)
{
    return tensor(Matrix::Identity(dim_a, dim_a), sigma);
}

Matrix trace_out_a(const Matrix& m, Eigen::Index dim_a, Eigen::Index dim_b)
{
    Matrix out = Matrix::Zero(dim_b, dim_b);
    for (Eigen::Index a = 0; a < dim_a; ++a)
        out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
    return out;
}

struct BarrierPoint {
    bool feasible = false;
    double log_det = 0;
    Eigen::LLT<Matrix> llt;
};

BarrierPoint evaluate(const Matrix& x)
{
    BarrierPoint p;
    p.llt.compute(x);
    if (p.llt.info() != Eigen::Success)
        return p;
    const auto& l = p.llt.matrixLLT();
    double s = 0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        const double diag = l(i, i).real();
        if (!(diag > 0) || !std::isfinite(diag))
            return p;
        s += std::log(diag);
    }
    p.feasible = true;
    p.log_det = 2 * s;
    return p;
}

} // namespace

SdpSolution solve_min_entropy_sdp(const Matrix& rho_ab, std::size_t dim_a, std::size_t dim_b,
                                  const SdpOptions& options)
{
    const auto da = static_cast<Eigen::Index>(dim_a);
    const auto db = static_cast<Eigen::Index>(dim_b);
    if (rho_ab.rows() != da * db || rho_ab.cols() != da * db)
        throw DimensionError("solve_min_entropy_sdp: ρ does not match dim_a * dim_b");
    const Matrix rho = (rho_ab + rho_ab.adjoint()) / 2.0;
    const double top = lambda_max(rho);
    if (!(top > 0))
        throw DegenerateInputError("solve_min_entropy_sdp: ρ has no positive eigenvalue");

    const auto basis = hermitian_basis(db);
    const auto k_count = static_cast<Eigen::Index>(basis.size());
    const double m = static_cast<double>(da * db);
    const Matrix id_b = Matrix::Identity(db, db);

    Matrix sigma = 2.0 * top * id_b;
    double t = m / real_trace(sigma);
    int iterations = 0;

    auto objective = [&](const Matrix& s, const BarrierPoint& p) { return t * real_trace(s) - p.log_det; };

    // Column k is vec(E_k) (column-major).
    Matrix vec_basis(db * db, k_count);
    for (Eigen::Index k = 0; k < k_count; ++k)
        vec_basis.col(k) = Eigen::Map<const Vector>(basis[static_cast<std::size_t>(k)].data(), db * db);
    for (;;) {
        // Centering by damped Newton.
        for (int inner = 0; inner < 200; ++inner) {
            if (++iterations > options.max_iterations)
                throw NumericError("solve_min_entropy_sdp: no convergence after "
                                   + std::to_string(options.max_iterations) + " Newton steps (t = "
                                   + std::to_string(t) + ")");
            const Matrix x = lift(sigma, da) - rho;
            const BarrierPoint here = evaluate(x);
            if (!here.feasible)
                throw NumericError("solve_min_entropy_sdp: iterate left the feasible cone");
            const Matrix x_inv = here.llt.solve(Matrix::Identity(x.rows(), x.cols()));
            const Matrix z = trace_out_a(x_inv, da, db);

            Eigen::VectorXd grad(k_count);
            for (Eigen::Index k = 0; k < k_count; ++k) {
                const auto& e = basis[static_cast<std::size_t>(k)];
                grad[k] = t * e.trace().real() - (z * e).trace().real();
            }
            // tr(X⁻¹(1⊗E)X⁻¹(1⊗F)) = tr(L(E) F) with L(E) = Σ_ab B_ab E B_ba,
            // B_ab the d_B blocks of X⁻¹; vec(L(E)) = Σ_ab (B_baᵀ ⊗ B_ab) vec(E).
            Matrix super = Matrix::Zero(db * db, db * db);
            for (Eigen::Index a = 0; a < da; ++a)
                for (Eigen::Index b = 0; b < da; ++b)
                    super += tensor(x_inv.block(b * db, a * db, db, db).transpose(),
                                    x_inv.block(a * db, b * db, db, db));
            const Eigen::MatrixXd hess = (vec_basis.adjoint() * super * vec_basis).real();
            const Eigen::VectorXd step = hess.ldlt().solve(-grad);
            const double decrement = -grad.dot(step);
            if (!std::isfinite(decrement))
                throw NumericError("solve_min_entropy_sdp: non-finite Newton step");
            if (decrement / 2 < 1e-9)
                break;

            Matrix direction = Matrix::Zero(db, db);
            for (Eigen::Index k = 0; k < k_count; ++k)
                direction += step[k] * basis[static_cast<std::size_t>(k)];

            const double f0 = objective(sigma, here);
            // Below this the Armijo test only sees roundoff in f.
            const double resolution = 1e-13 * std::abs(f0);
            double s = 1.0;
            bool moved = false;
            while (s > 1e-14) {
                if (0.25 * s * decrement < resolution)
                    break;
                const Matrix trial = sigma + s * direction;
                const BarrierPoint there = evaluate(lift(trial, da) - rho);
                if (there.feasible && objective(trial, there) <= f0 - 0.25 * s * decrement) {
                    sigma = (trial + trial.adjoint()) / 2.0;
                    moved = true;
                    break;
                }
                s *= 0.5;
            }
            if (!moved)
                break;
        }

        const double value = real_trace(sigma);
        if (m / t <= options.gap_tol * value)
            break;
        t *= options.growth;
    }

    SdpSolution out;
    out.sigma = sigma;
    out.value = real_trace(sigma);
    out.iterations = iterations;

    const Matrix x = lift(sigma, da) - rho;
    out.primal_residual = std::max(0.0, -eig_hermitian(x).values.minCoeff());

    // Central-path dual X^{-1}/t, rescaled so that tr_A Y = 1 exactly.
    const BarrierPoint final_point = evaluate(x);
    if (final_point.feasible) {
        const Matrix y0 = final_point.llt.solve(Matrix::Identity(x.rows(), x.cols())) / t;
        const Matrix scale = lift(inv_sqrt_psd(trace_out_a(y0, da, db)), da);
        const Matrix y = scale * y0 * scale;
        out.dual_value = (rho * y).trace().real();
        out.complementarity = (x * y).trace().real();
    } else {
        out.dual_value = -std::numeric_limits<double>::infinity();
        out.complementarity = std::numeric_limits<double>::infinity();
    }
    return out;
}

} // namespace qmur
