#include "qmur/smoothing.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace qmur {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RealVector clamp_spectrum(const RealVector& s, const char* what)
{
    RealVector out(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (!std::isfinite(s[i]) || s[i] < -kClampTol)
            throw PositivityError(std::string(what) + ": spectrum has a negative entry");
        out[i] = std::max(0.0, s[i]);
    }
    if (out.sum() > 1.0 + kTraceTol)
        throw NormalizationError(std::string(what) + ": spectrum sums above 1");
    return out;
}

void require_operator_epsilon(double epsilon, bool allow_zero, const char* what)
{
    const bool ok = allow_zero ? (epsilon >= 0.0 && epsilon <= 0.3) : (epsilon > 0.0 && epsilon <= 0.3);
    if (!ok)
        throw ParameterError(std::string(what) + ": ε must lie in " + (allow_zero ? "[0" : "(0") + ", 0.3]");
}

/// Smallest w in [0, 1] with w α + b sqrt(1 − w²) ≥ f0 given b < f0; +∞ if none.
double min_scale(double alpha, double b, double f0)
{
    const double r2 = alpha * alpha + b * b;
    if (r2 < f0 * f0)
        return kInf;
    return (f0 * alpha - b * std::sqrt(r2 - f0 * f0)) / r2;
}

/// Σx over the cheapest feasible point on the ray through `direction` (≥ 0, non-zero).
double ray_cost(const RealVector& direction, const RealVector& a, double b, double f0)
{
    const double norm = direction.norm();
    if (!(norm > 0))
        return kInf;
    const double w = min_scale(a.dot(direction) / norm, b, f0);
    return w * direction.sum() / norm;
}

double log2_sum_sqrt_squared(const RealVector& q)
{
    double s = 0;
    for (Eigen::Index i = 0; i < q.size(); ++i)
        s += std::sqrt(std::max(0.0, q[i]));
    return 2 * std::log2(s);
}

Spectral spectrum_of(const DensityOperator& sigma)
{
    return eig_hermitian(sigma.matrix());
}

SmoothingOperator make_operator(const Spectral& spec, RealVector factors, SmoothingBudget budget, double epsilon)
{
    SmoothingOperator out;
    out.eigenbasis = spec.vectors;
    out.op = spec.vectors * factors.cast<Complex>().asDiagonal() * spec.vectors.adjoint();
    out.trace_deficit = 0;
    for (Eigen::Index i = 0; i < factors.size(); ++i)
        out.trace_deficit += (1.0 - factors[i] * factors[i]) * std::max(0.0, spec.values[i]);
    out.factors = std::move(factors);
    out.budget = budget;
    out.epsilon = epsilon;
    return out;
}

/// F(λ) = max Σ sqrt(ρ_i s_i) over ρ ≤ λ, Σρ ≤ 1, for `s` sorted non-increasing
/// and strictly positive.
double capped_fidelity(const RealVector& s, double lambda)
{
    const Eigen::Index n = s.size();
    if (static_cast<double>(n) * lambda <= 1.0)
        return std::sqrt(lambda) * s.cwiseSqrt().sum();
    double rest = s.sum();
    for (Eigen::Index k = 0; k < n; ++k) {
        // Entries [0, k) sit at the cap; the rest are κ s_i.
        const double kappa = (1.0 - static_cast<double>(k) * lambda) / rest;
        if (kappa * s[k] <= lambda) {
            double f = 0;
            for (Eigen::Index i = 0; i < k; ++i)
                f += std::sqrt(lambda * s[i]);
            for (Eigen::Index i = k; i < n; ++i)
                f += std::sqrt(kappa) * s[i];
            return f;
        }
        rest -= s[k];
    }
    return std::sqrt(lambda) * s.cwiseSqrt().sum();
}

} // namespace

double SmoothingOperator::budget_bound() const
{
    return (budget == SmoothingBudget::two_epsilon ? 2.0 : 3.0) * epsilon;
}

HmaxSpectrumOptimum optimal_hmax_spectrum(const RealVector& spectrum, double epsilon)
{
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw ParameterError("optimal_hmax_spectrum: ε must lie in [0, 1)");
    const RealVector s = clamp_spectrum(spectrum, "optimal_hmax_spectrum");
    const Eigen::Index n = s.size();
    if (!(s.sum() > kSupportTol))
        throw DegenerateInputError("optimal_hmax_spectrum: zero spectrum");
    if (epsilon == 0.0)
        return {s, EntropyValue::finite(log2_sum_sqrt_squared(s))};

    const RealVector a = s.cwiseSqrt();
    const double b = std::sqrt(std::max(0.0, 1.0 - s.sum()));
    const double f0 = std::sqrt(1.0 - epsilon * epsilon);
    if (b >= f0)
        return {RealVector::Zero(n), EntropyValue::minus_infinity()};

    // KKT: the optimizer is x = w (a − τ)_+ / ‖(a − τ)_+‖ for some τ; the
    // endpoint τ = max a keeps only the tied top entries.
    const double a_max = a.maxCoeff();
    auto direction = [&](double tau) {
        RealVector u(n);
        if (tau >= a_max) {
            for (Eigen::Index i = 0; i < n; ++i)
                u[i] = a[i] >= a_max * (1.0 - 1e-15) ? 1.0 : 0.0;
        } else {
            u = (a.array() - tau).max(0.0).matrix();
        }
        return u;
    };
    auto cost = [&](double tau) { return ray_cost(direction(tau), a, b, f0); };

    constexpr int kScan = 4096;
    double best_tau = a_max;
    double best = cost(a_max);
    int best_k = kScan;
    for (int k = 0; k < kScan; ++k) {
        const double tau = a_max * k / kScan;
        const double c = cost(tau);
        if (c < best) {
            best = c;
            best_tau = tau;
            best_k = k;
        }
    }
    // Golden-section refinement on the bracketing scan cell.
    double lo = a_max * std::max(0, best_k - 1) / kScan;
    double hi = a_max * std::min(kScan, best_k + 1) / kScan;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double c1 = cost(x1), c2 = cost(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, a_max); ++it) {
        if (c1 <= c2) {
            hi = x2;
            x2 = x1;
            c2 = c1;
            x1 = hi - g * (hi - lo);
            c1 = cost(x1);
        } else {
            lo = x1;
            x1 = x2;
            c1 = c2;
            x2 = lo + g * (hi - lo);
            c2 = cost(x2);
        }
    }
    for (double tau : {x1, x2})
        if (const double c = cost(tau); c < best) {
            best = c;
            best_tau = tau;
        }
    if (!std::isfinite(best))
        throw NumericError("optimal_hmax_spectrum: no feasible direction found");

    const RealVector u = direction(best_tau);
    const double w = min_scale(a.dot(u) / u.norm(), b, f0);
    const RealVector x = w * u / u.norm();
    const RealVector q = x.cwiseAbs2();
    return {q, EntropyValue::finite(2 * std::log2(x.sum()))};
}

double optimal_hmin_cap(const RealVector& spectrum, double epsilon)
{
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw ParameterError("optimal_hmin_cap: ε must lie in [0, 1)");
    const RealVector clamped = clamp_spectrum(spectrum, "optimal_hmin_cap");
    std::vector<double> support;
    for (Eigen::Index i = 0; i < clamped.size(); ++i)
        if (clamped[i] > kSupportTol)
            support.push_back(clamped[i]);
    if (support.empty())
        throw DegenerateInputError("optimal_hmin_cap: zero spectrum");
    std::sort(support.begin(), support.end(), std::greater<>());
    const RealVector s = Eigen::Map<const RealVector>(support.data(), static_cast<Eigen::Index>(support.size()));
    if (epsilon == 0.0)
        return s[0];

    const double f0 = std::sqrt(1.0 - epsilon * epsilon);
    double lo = 0.0, hi = s[0];
    for (int it = 0; it < 400 && hi - lo > 1e-17 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (capped_fidelity(s, mid) >= f0)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

RealVector tail_cut(const RealVector& sorted, double epsilon)
{
    const Eigen::Index n = sorted.size();
    Eigen::Index j = n;
    double tail = 0;
    while (j > 0 && tail + std::max(0.0, sorted[j - 1]) <= epsilon) {
        tail += std::max(0.0, sorted[j - 1]);
        --j;
    }
    RealVector keep = RealVector::Zero(n);
    keep.head(j).setOnes();
    return keep;
}

SmoothingResult smooth_budget_operator_hmax(const Spectral& spec, double epsilon)
{
    require_operator_epsilon(epsilon, false, "smooth_budget_operator_hmax");
    const RealVector s = clamp_spectrum(spec.values, "smooth_budget_operator_hmax");
    const auto opt = optimal_hmax_spectrum(s, epsilon);
    RealVector factors(s.size());
    RealVector kept(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        kept[i] = std::min(opt.q[i], s[i]);
        factors[i] = s[i] > 0 ? std::sqrt(kept[i] / s[i]) : 1.0;
    }
    SmoothingResult out;
    out.smoothing = make_operator(spec, std::move(factors), SmoothingBudget::two_epsilon, epsilon);
    out.value = kept.sum() > kSupportTol ? EntropyValue::finite(log2_sum_sqrt_squared(kept))
                                         : EntropyValue::minus_infinity();
    out.first_stage = out.value;
    return out;
}

SmoothingResult smooth_budget_operator_hmax(const DensityOperator& sigma, double epsilon)
{
    return smooth_budget_operator_hmax(spectrum_of(sigma), epsilon);
}

SmoothingResult smooth_budget_operator_hneginf(const Spectral& spec, double epsilon)
{
    require_operator_epsilon(epsilon, false, "smooth_budget_operator_hneginf");
    auto first = smooth_budget_operator_hmax(spec, epsilon);
    const RealVector s = clamp_spectrum(spec.values, "smooth_budget_operator_hneginf");
    const Eigen::Index n = s.size();
    const RealVector r = first.smoothing.factors.cwiseAbs2().cwiseProduct(s);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return r[i] > r[j]; });
    RealVector sorted(n);
    for (Eigen::Index k = 0; k < n; ++k)
        sorted[k] = r[order[static_cast<std::size_t>(k)]];
    const RealVector keep_sorted = tail_cut(sorted, epsilon);

    RealVector factors = first.smoothing.factors;
    double smallest = kInf;
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto i = order[static_cast<std::size_t>(k)];
        factors[i] *= keep_sorted[k];
        if (keep_sorted[k] > 0 && sorted[k] > kSupportTol)
            smallest = std::min(smallest, sorted[k]);
    }
    SmoothingResult out;
    out.smoothing = make_operator(spec, std::move(factors), SmoothingBudget::three_epsilon, epsilon);
    out.value = std::isfinite(smallest) ? EntropyValue::finite(-std::log2(smallest)) : EntropyValue::minus_infinity();
    out.first_stage = first.value;
    return out;
}

SmoothingResult smooth_budget_operator_hneginf(const DensityOperator& sigma, double epsilon)
{
    return smooth_budget_operator_hneginf(spectrum_of(sigma), epsilon);
}

SmoothingResult smooth_hmin_operator(const Spectral& spec, double epsilon)
{
    require_operator_epsilon(epsilon, true, "smooth_hmin_operator");
    const RealVector s = clamp_spectrum(spec.values, "smooth_hmin_operator");
    if (std::abs(s.sum() - 1.0) > kTraceTol)
        throw NormalizationError("smooth_hmin_operator: σ must be normalized");
    const double cap = optimal_hmin_cap(s, epsilon);
    RealVector factors(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        factors[i] = s[i] > cap ? std::sqrt(cap / s[i]) : 1.0;
    SmoothingResult out;
    out.smoothing = make_operator(spec, std::move(factors), SmoothingBudget::two_epsilon, epsilon);
    out.value = EntropyValue::finite(-std::log2(std::min(cap, s.maxCoeff())));
    out.first_stage = out.value;
    return out;
}

SmoothingResult smooth_hmin_operator(const DensityOperator& sigma, double epsilon)
{
    if (!sigma.is_normalized())
        throw NormalizationError("smooth_hmin_operator: σ must be normalized");
    return smooth_hmin_operator(spectrum_of(sigma), epsilon);
}

EntropyValue smooth_hmax_oracle(const RealVector& spectrum, double epsilon)
{
    const Eigen::Index d = spectrum.size();
    if (d > 4)
        throw UnsupportedScaleError("smooth_hmax_oracle: dimension " + std::to_string(d) + " exceeds 4");
    if (d < 1)
        throw DimensionError("smooth_hmax_oracle: empty spectrum");
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw ParameterError("smooth_hmax_oracle: ε must lie in [0, 1)");
    const RealVector s = clamp_spectrum(spectrum, "smooth_hmax_oracle");
    if (!(s.sum() > kSupportTol))
        throw DegenerateInputError("smooth_hmax_oracle: zero spectrum");
    if (epsilon == 0.0)
        return EntropyValue::finite(log2_sum_sqrt_squared(s));

    const RealVector a = s.cwiseSqrt();
    const double b = std::sqrt(std::max(0.0, 1.0 - s.sum()));
    const double f0 = std::sqrt(1.0 - epsilon * epsilon);
    if (b >= f0)
        return EntropyValue::minus_infinity();

    // Every ray from the origin meets the cube surface max_i x_i = 1, so the
    // grid runs over the d faces with pitch h. The free coordinates are
    // swept by up to three nested loops carrying partial sums of x, x² and a·x.
    const double h = d <= 3 ? 1e-3 : 1e-2;
    const int steps = static_cast<int>(std::lround(1.0 / h));
    double best = kInf;
    RealVector best_x = RealVector::Zero(d);
    for (Eigen::Index face = 0; face < d; ++face) {
        std::array<double, 3> af{};
        std::array<int, 3> n{};
        std::array<Eigen::Index, 3> coord{};
        Eigen::Index k = 0;
        for (Eigen::Index i = 0; i < d; ++i)
            if (i != face) {
                af[static_cast<std::size_t>(k)] = a[i];
                n[static_cast<std::size_t>(k)] = steps;
                coord[static_cast<std::size_t>(k++)] = i;
            }
        for (int i0 = 0; i0 <= n[0]; ++i0) {
            const double g0 = i0 * h;
            const double sum0 = 1.0 + g0, sq0 = 1.0 + g0 * g0, dot0 = a[face] + af[0] * g0;
            for (int i1 = 0; i1 <= n[1]; ++i1) {
                const double g1 = i1 * h;
                const double sum1 = sum0 + g1, sq1 = sq0 + g1 * g1, dot1 = dot0 + af[1] * g1;
                for (int i2 = 0; i2 <= n[2]; ++i2) {
                    const double g2 = i2 * h;
                    const double norm = std::sqrt(sq1 + g2 * g2);
                    const double w = min_scale((dot1 + af[2] * g2) / norm, b, f0);
                    const double v = w * (sum1 + g2) / norm;
                    if (v < best) {
                        best = v;
                        best_x.setZero();
                        best_x[face] = 1.0;
                        const std::array<double, 3> g{g0, g1, g2};
                        for (Eigen::Index j = 0; j < k; ++j)
                            best_x[coord[static_cast<std::size_t>(j)]] = g[static_cast<std::size_t>(j)];
                    }
                }
            }
        }
    }
    RealVector x(d);
    if (!std::isfinite(best))
        throw NumericError("smooth_hmax_oracle: grid found no feasible point");

    // Zoom: a 21^(d-1) sub-grid on the face of the incumbent, window shrinking 5x per round.
    Eigen::Index face;
    best_x.maxCoeff(&face);
    best_x /= best_x[face];
    constexpr int kHalf = 10;
    for (double window = h; window > 1e-9; window /= 5) {
        const double pitch = window / kHalf;
        const RealVector center = best_x;
        const long count = static_cast<long>(std::pow(2 * kHalf + 1, static_cast<double>(d - 1)));
        for (long c = 0; c < count; ++c) {
            long rem = c;
            x = center;
            for (Eigen::Index i = 0; i < d; ++i) {
                if (i == face)
                    continue;
                const int offset = static_cast<int>(rem % (2 * kHalf + 1)) - kHalf;
                rem /= 2 * kHalf + 1;
                x[i] = std::max(0.0, center[i] + offset * pitch);
            }
            const double v = ray_cost(x, a, b, f0);
            if (v < best) {
                best = v;
                best_x = x;
            }
        }
    }
    return EntropyValue::finite(2 * std::log2(best));
}

} // namespace qmur
