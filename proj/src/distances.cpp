#include "qmur/distances.hpp"

#include <cmath>

namespace qmur {

namespace {

void require_same_dim(const Matrix& a, const Matrix& b, const char* what)
{
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw DimensionError(std::string(what) + ": operands have different dimensions");
}

double deficit(double trace, const char* what)
{
    if (trace > 1.0 + kTraceTol)
        throw NormalizationError(std::string(what) + ": trace " + std::to_string(trace) + " exceeds 1");
    return std::max(0.0, 1.0 - trace);
}

double distance_from_fidelity(double f)
{
    return std::sqrt(std::max(0.0, 1.0 - f * f));
}

} // namespace

double fidelity(const Matrix& rho, const Matrix& sigma)
{
    require_same_dim(rho, sigma, "fidelity");
    return trace_norm((sqrt_psd(rho) * sqrt_psd(sigma)).eval());
}

double gen_fidelity(const Matrix& rho, const Matrix& sigma)
{
    require_same_dim(rho, sigma, "gen_fidelity");
    const double dr = deficit(real_trace(rho), "gen_fidelity");
    const double ds = deficit(real_trace(sigma), "gen_fidelity");
    return fidelity(rho, sigma) + std::sqrt(dr * ds);
}

double purified_distance(const Matrix& rho, const Matrix& sigma)
{
    return distance_from_fidelity(gen_fidelity(rho, sigma));
}

double trace_distance(const Matrix& rho, const Matrix& sigma)
{
    require_same_dim(rho, sigma, "trace_distance");
    return 0.5 * trace_norm((rho - sigma).eval());
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma)
{
    return fidelity(rho.matrix(), sigma.matrix());
}

double gen_fidelity(const DensityOperator& rho, const DensityOperator& sigma)
{
    return gen_fidelity(rho.matrix(), sigma.matrix());
}

double purified_distance(const DensityOperator& rho, const DensityOperator& sigma)
{
    return purified_distance(rho.matrix(), sigma.matrix());
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma)
{
    return trace_distance(rho.matrix(), sigma.matrix());
}

double distance_projection_bound(const Matrix& rho, const Matrix& pi)
{
    require_same_dim(rho, pi, "distance_projection_bound");
    const double t = real_trace(rho);
    const double t2 = real_trace((pi * pi * rho).eval());
    return std::sqrt(std::max(0.0, t * t - t2 * t2) / t);
}

double gen_fidelity_diag(const RealVector& q, const RealVector& s)
{
    if (q.size() != s.size())
        throw DimensionError("gen_fidelity_diag: spectra have different lengths");
    double f = 0;
    for (Eigen::Index i = 0; i < q.size(); ++i)
        f += std::sqrt(std::max(0.0, q[i]) * std::max(0.0, s[i]));
    return f + std::sqrt(deficit(q.sum(), "gen_fidelity_diag") * deficit(s.sum(), "gen_fidelity_diag"));
}

double purified_distance_diag(const RealVector& q, const RealVector& s)
{
    return distance_from_fidelity(gen_fidelity_diag(q, s));
}

BallSpec::BallSpec(DensityOperator c, double r) : center(std::move(c)), radius(r)
{
    if (!(radius >= 0.0 && radius <= 1.0))
        throw ParameterError("BallSpec: radius must lie in [0, 1]");
}

BallMembership in_ball(const DensityOperator& candidate, const BallSpec& ball)
{
    const double p = purified_distance(ball.center, candidate);
    return {p <= ball.radius + 1e-9, ball.radius - p, p};
}

} // namespace qmur
