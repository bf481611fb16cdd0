// Invariants over seeded random inputs.
#include <doctest.h>

#include <cmath>

#include "qmur/distances.hpp"
#include "qmur/entropies.hpp"
#include "qmur/relations.hpp"

using namespace qmur;

namespace {

/// (1 ⊗ U) ρ (1 ⊗ U)† with U Haar on the memory.
DensityOperator rotate_memory(CounterRng& rng, const DensityOperator& rho)
{
    const Matrix u = embed(random_unitary(rng, rho.profile()[1]), rho.profile(), 1);
    return DensityOperator(u * rho.matrix() * u.adjoint(), rho.profile(), rho.normalization());
}

} // namespace

TEST_CASE("main relation slack is non-negative and symmetric in the two bases")
{
    CounterRng rng(101);
    for (int t = 0; t < 40; ++t) {
        const DimensionProfile p{2 + static_cast<std::size_t>(t % 2), 2};
        const auto rho = sample_hilbert_schmidt(rng, p);
        const auto r = random_basis(rng, p[0]);
        const auto s = random_basis(rng, p[0]);
        const auto a = check_main_theorem(r, s, rho);
        const auto b = check_main_theorem(s, r, rho);
        CHECK(a.slack >= -1e-8);
        CHECK(std::abs(a.slack - b.slack) <= 1e-8);
    }
}

TEST_CASE("non-smooth relation slack is invariant under unitaries on the memory")
{
    CounterRng rng(103);
    for (int t = 0; t < 10; ++t) {
        const auto rho = sample_hilbert_schmidt(rng, {2, 2});
        const auto r = random_basis(rng, 2);
        const auto s = random_basis(rng, 2);
        const auto a = check_nonsmooth_theorem(r, s, rho);
        const auto b = check_nonsmooth_theorem(r, s, rotate_memory(rng, rho));
        CHECK(std::abs(a.slack - b.slack) <= 1e-6);
    }
}

TEST_CASE("entropies are unitarily invariant")
{
    CounterRng rng(107);
    for (int t = 0; t < 10; ++t) {
        const auto rho = sample_hilbert_schmidt(rng, {3});
        const Matrix u = random_unitary(rng, 3);
        const Matrix v = u * rho.matrix() * u.adjoint();
        CHECK(von_neumann_bits(v) == doctest::Approx(von_neumann_bits(rho.matrix())).epsilon(1e-10));
        CHECK(max_entropy_bits(v) == doctest::Approx(max_entropy_bits(rho.matrix())).epsilon(1e-10));
        CHECK(min_entropy_bits(v) == doctest::Approx(min_entropy_bits(rho.matrix())).epsilon(1e-10));
    }
}

TEST_CASE("conditional min-entropy is invariant under memory unitaries and bounded by log2 d_A")
{
    CounterRng rng(109);
    for (int t = 0; t < 10; ++t) {
        const auto rho = sample_hilbert_schmidt(rng, {2, 3});
        const double a = h_min_cond(rho, {0}, {1}).value.bits;
        const double b = h_min_cond(rotate_memory(rng, rho), {0}, {1}).value.bits;
        CHECK(std::abs(a - b) <= 1e-7);
        CHECK(a <= 1.0 + 1e-9);
        CHECK(a >= -1.0 - 1e-9);
        CHECK(a <= h_vn_cond(rho, 0, 1).bits + 1e-7);
    }
}

TEST_CASE("purified distance is a symmetric metric bounded by one")
{
    CounterRng rng(113);
    for (int t = 0; t < 20; ++t) {
        const auto a = sample_hilbert_schmidt(rng, {3});
        const auto b = sample_hilbert_schmidt(rng, {3});
        const double p = purified_distance(a, b);
        CHECK(p == doctest::Approx(purified_distance(b, a)).epsilon(1e-9));
        CHECK(p >= 0);
        CHECK(p <= 1 + 1e-12);
        CHECK(trace_distance(a, b) <= p + 1e-9);
    }
}

TEST_CASE("measured conditional entropy lies in [0, log2 d] for classical outcomes")
{
    CounterRng rng(127);
    for (int t = 0; t < 20; ++t) {
        const auto rho = sample_hilbert_schmidt(rng, {3, 2});
        const double h = h_measured_cond(rho, MeasurementChannel{random_basis(rng, 3), 0}, 1).bits;
        CHECK(h >= -1e-10);
        CHECK(h <= std::log2(3.0) + 1e-10);
    }
}
