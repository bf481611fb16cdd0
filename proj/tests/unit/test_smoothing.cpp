#include <doctest.h>

#include <cmath>

#include "qmur/distances.hpp"
#include "qmur/smoothing.hpp"

using namespace qmur;

namespace {

RealVector vec(std::initializer_list<double> v)
{
    RealVector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index k = 0;
    for (double x : v)
        out[k++] = x;
    return out;
}

DensityOperator diag_state(std::initializer_list<double> v)
{
    const RealVector d = vec(v);
    return DensityOperator::subnormalized(d.cast<Complex>().asDiagonal().toDenseMatrix(),
                                          {static_cast<std::size_t>(d.size())});
}

} // namespace

TEST_CASE("exact smooth max-entropy matches frozen convex-program values")
{
    // Frozen from tests/oracle/freeze_values.py.
    CHECK(optimal_hmax_spectrum(vec({0.5, 0.3, 0.2}), 0.1).value.bits
          == doctest::Approx(1.4648162140166912).epsilon(1e-8));
    CHECK(optimal_hmax_spectrum(vec({0.7, 0.2, 0.1}), 0.05).value.bits
          == doctest::Approx(1.2922257385585172).epsilon(1e-8));
    CHECK(optimal_hmax_spectrum(vec({0.4, 0.3, 0.2, 0.1}), 0.2).value.bits
          == doctest::Approx(1.7120491390628156).epsilon(1e-8));
    CHECK(optimal_hmax_spectrum(vec({0.6, 0.3}), 0.1).value.bits == doctest::Approx(0.6795154447933887).epsilon(1e-8));
}

TEST_CASE("grid oracle is an upper bound within its pitch of the exact optimum")
{
    CounterRng rng(41);
    for (int t = 0; t < 12; ++t) {
        const Eigen::Index d = 2 + t % 3;
        RealVector s(d);
        for (Eigen::Index k = 0; k < d; ++k)
            s[k] = rng.uniform();
        s /= s.sum();
        for (double eps : {0.05, 0.1, 0.2}) {
            const double exact = optimal_hmax_spectrum(s, eps).value.bits;
            const double grid = smooth_hmax_oracle(s, eps).value();
            CHECK(grid >= exact - 1e-9);
            CHECK(grid - exact <= 1e-3);
        }
    }
}

TEST_CASE("oracle on a pure spectrum reflects subnormalized states in the ball")
{
    CHECK(smooth_hmax_oracle(vec({1.0, 0.0}), 0.2).value() == doctest::Approx(std::log2(0.96)).epsilon(1e-6));
    CHECK(smooth_hmax_oracle(vec({0.5, 0.5}), 0.0).value() == doctest::Approx(1.0));
    CHECK_THROWS_AS(smooth_hmax_oracle(vec({0.2, 0.2, 0.2, 0.2, 0.2}), 0.1), UnsupportedScaleError);
}

TEST_CASE("budget operator for the max-entropy gives a lower bound inside the budget")
{
    for (auto sigma : {diag_state({0.5, 0.5}), diag_state({0.6, 0.3, 0.1}), diag_state({0.4, 0.3, 0.2, 0.1})}) {
        for (double eps : {0.05, 0.1, 0.3}) {
            const auto res = smooth_budget_operator_hmax(sigma, eps);
            CHECK(res.smoothing.trace_deficit <= 2 * eps + 1e-12);
            CHECK(res.smoothing.budget_bound() == doctest::Approx(2 * eps));
            const RealVector s = eigenvalues_hermitian(sigma.matrix());
            CHECK(res.value.value() <= smooth_hmax_oracle(s, eps).value() + 1e-9);
            CHECK(res.value.value() <= max_entropy_bits(sigma.matrix()) + 1e-12);
            CHECK(res.smoothing.factors.maxCoeff() <= 1.0 + 1e-12);
            CHECK(res.smoothing.factors.minCoeff() >= -1e-12);
        }
    }
    CHECK_THROWS_AS(smooth_budget_operator_hmax(diag_state({0.5, 0.5}), 0.0), ParameterError);
    CHECK_THROWS_AS(smooth_budget_operator_hmax(diag_state({0.5, 0.5}), 0.31), ParameterError);
}

TEST_CASE("pure σ gives the subnormalized value under the max-entropy budget")
{
    const auto res = smooth_budget_operator_hmax(diag_state({1.0, 0.0}), 0.1);
    CHECK(res.value.bits == doctest::Approx(std::log2(1 - 0.01)).epsilon(1e-9));
}

TEST_CASE("budget operator for H_-inf composes the tail cut within 3ε")
{
    CounterRng rng(43);
    for (int t = 0; t < 10; ++t) {
        const auto sigma = sample_hilbert_schmidt(rng, {4});
        for (double eps : {0.01, 0.1}) {
            const auto res = smooth_budget_operator_hneginf(sigma, eps);
            CHECK(res.smoothing.trace_deficit <= 3 * eps + 1e-12);
            if (res.value.is_finite())
                CHECK(res.value.bits - 2 * std::log2(1 / eps) <= res.first_stage.value() + 1e-9);
        }
    }
}

TEST_CASE("tail cut drops the smallest eigenvalues up to ε of mass")
{
    const RealVector cut = tail_cut(vec({0.5, 0.3, 0.15, 0.05}), 0.1);
    // A keep mask: 0.05 fits in the budget, 0.05 + 0.15 does not.
    CHECK(cut == vec({1, 1, 1, 0}));
    CHECK(tail_cut(vec({0.5, 0.3, 0.15, 0.05}), 0.2) == vec({1, 1, 0, 0}));
    CHECK(tail_cut(vec({1.0}), 0.1) == vec({1}));
}

TEST_CASE("min-entropy smoothing caps the largest eigenvalues")
{
    const auto flat = DensityOperator(maximally_mixed(2), {2});
    const auto res = smooth_hmin_operator(flat, 0.1);
    // The cap drops both eigenvalues to (1 − ε²)/2.
    CHECK(res.value.bits == doctest::Approx(1.0 - std::log2(1 - 0.01)).epsilon(1e-9));
    CHECK(res.smoothing.trace_deficit <= 0.2 + 1e-12);
    CHECK(optimal_hmin_cap(vec({0.5, 0.5}), 0.1) == doctest::Approx(0.495).epsilon(1e-9));

    CounterRng rng(47);
    for (int t = 0; t < 10; ++t) {
        const auto sigma = sample_hilbert_schmidt(rng, {3});
        const auto r = smooth_hmin_operator(sigma, 0.05);
        CHECK(r.value.bits >= min_entropy_bits(sigma.matrix()) - 1e-12);
        const Matrix smoothed = r.smoothing.op * sigma.matrix() * r.smoothing.op;
        CHECK(purified_distance(sigma.matrix(), smoothed) <= std::sqrt(4 * 0.05) + 1e-9);
        CHECK(r.smoothing.trace_deficit <= 0.1 + 1e-12);
    }
    CHECK(smooth_hmin_operator(flat, 0.0).value.bits == doctest::Approx(1.0));
}
