#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

namespace qmur::testing {

RealVector reference_eigenvalues(const Matrix& m)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

namespace {

/// λ(σ) at Bloch vector r, +∞ outside the open ball.
double lambda_at(const Matrix& rho, std::size_t dim_a, double x, double y, double z)
{
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r >= 1.0 - 1e-9)
        return std::numeric_limits<double>::infinity();
    // σ^{-1/2} from the closed form of the 2x2 eigensystem.
    const double lp = (1 + r) / 2, lm = (1 - r) / 2;
    Eigen::Matrix2cd proj_p;
    if (r < 1e-15) {
        proj_p = Eigen::Matrix2cd::Identity() / 2.0;
    } else {
        const std::complex<double> off(x / r, -y / r);
        proj_p << (1 + z / r) / 2, off / 2.0, std::conj(off) / 2.0, (1 - z / r) / 2;
    }
    const Eigen::Matrix2cd proj_m = Eigen::Matrix2cd::Identity() - proj_p;
    const Eigen::Matrix2cd inv_sqrt = proj_p / std::sqrt(lp) + proj_m / std::sqrt(lm);
    const auto da = static_cast<Eigen::Index>(dim_a);
    Matrix k = Matrix::Zero(2 * da, 2 * da);
    for (Eigen::Index i = 0; i < da; ++i)
        k.block(2 * i, 2 * i, 2, 2) = inv_sqrt;
    const Matrix m = k * rho * k;
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

} // namespace

double bloch_grid_hmin(const Matrix& rho_ab, std::size_t dim_a)
{
    double best = std::numeric_limits<double>::infinity();
    double bx = 0, by = 0, bz = 0;
    constexpr int kCoarse = 20;
    for (int i = -kCoarse; i <= kCoarse; ++i)
        for (int j = -kCoarse; j <= kCoarse; ++j)
            for (int l = -kCoarse; l <= kCoarse; ++l) {
                const double x = double(i) / kCoarse, y = double(j) / kCoarse, z = double(l) / kCoarse;
                const double v = lambda_at(rho_ab, dim_a, x, y, z);
                if (v < best) {
                    best = v;
                    bx = x, by = y, bz = z;
                }
            }
    constexpr int kHalf = 5;
    for (double window = 1.0 / kCoarse; window > 1e-8; window /= 2) {
        const double cx = bx, cy = by, cz = bz;
        const double pitch = window / kHalf;
        for (int i = -kHalf; i <= kHalf; ++i)
            for (int j = -kHalf; j <= kHalf; ++j)
                for (int l = -kHalf; l <= kHalf; ++l) {
                    const double x = cx + i * pitch, y = cy + j * pitch, z = cz + l * pitch;
                    const double v = lambda_at(rho_ab, dim_a, x, y, z);
                    if (v < best) {
                        best = v;
                        bx = x, by = y, bz = z;
                    }
                }
    }
    return -std::log2(best);
}

Matrix fixed_mixed_state(std::size_t dim, unsigned seed)
{
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            g(i, j) = Complex(n(gen), n(gen));
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

} // namespace qmur::testing
