#include <doctest.h>

#include <cmath>

#include "qmur/entropies.hpp"
#include "qmur/lemmas.hpp"

using namespace qmur;

TEST_CASE("chain rule I is tight on the flat tripartite state")
{
    const DensityOperator flat(maximally_mixed(8), {2, 2, 2});
    const auto certs = check_chain_rules(flat);
    REQUIRE(certs.size() == 2);
    CHECK(certs[0].pass);
    CHECK(certs[0].lhs == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(certs[0].rhs == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(certs[1].pass);
}

TEST_CASE("chain rule II on product states")
{
    CounterRng rng(61);
    const auto a = sample_hilbert_schmidt(rng, {2});
    const auto b = sample_hilbert_schmidt(rng, {3});
    const DensityOperator ab(tensor(a.matrix(), b.matrix()), {2, 3});
    const auto certs = check_chain_rules(ab);
    CHECK(certs[1].pass);
    const double expected = min_entropy_bits(a.matrix()) + min_entropy_bits(b.matrix())
                            - neg_inf_entropy_bits(b.matrix());
    CHECK(certs[1].rhs == doctest::Approx(expected));
}

TEST_CASE("lemma checkers pass on sampled instances")
{
    CounterRng rng(67);
    for (int t = 0; t < 5; ++t) {
        const auto rho = sample_hilbert_schmidt(rng, {2, 2});
        const auto sigma = sample_hilbert_schmidt(rng, {2, 2});
        const auto tau = sample_hilbert_schmidt(rng, {2, 2});
        const Matrix u = random_unitary(rng, 4);
        RealVector lam = RealVector::LinSpaced(4, 0.2, 1.0);
        const Matrix pi = u * lam.cast<Complex>().asDiagonal() * u.adjoint();
        CHECK(check_trace_bound(rho, sigma).pass);
        CHECK(check_distance_nonincrease(rho, sigma, pi).pass);
        CHECK(check_distance_projection(rho, pi).pass);
        CHECK(check_rearrangement(rho, sigma).pass);
        CHECK(check_distance_triangle(rho, sigma, tau).pass);
        CHECK(check_distance_partial_trace(rho, sigma, {1}).pass);
        for (const auto& c : check_entropy_ordering(rho))
            CHECK_MESSAGE(c.pass, c.relation);
        CHECK(check_conditioning_reduces(rho, random_basis(rng, 2)).pass);
        for (const auto& c : check_sdp_consistency(rho, sample_hilbert_schmidt(rng, {2})))
            CHECK_MESSAGE(c.pass, c.relation);
        const auto tri = sample_hilbert_schmidt(rng, {2, 2, 2});
        CHECK(check_strong_subadditivity(tri).pass);
    }
}

TEST_CASE("max-entropy under measurement: exact at ε = 0, oracle above, skipped past dimension four")
{
    CounterRng rng(71);
    const auto sigma = sample_hilbert_schmidt(rng, {3});
    const auto basis = random_basis(rng, 3);
    CHECK(check_hmax_measurement_monotonicity(sigma, basis, 0.0).tolerance == doctest::Approx(1e-9));
    CHECK(check_hmax_measurement_monotonicity(sigma, basis, 0.0).pass);
    const auto smooth = check_hmax_measurement_monotonicity(sigma, basis, 0.1);
    CHECK(smooth.pass);
    CHECK(smooth.tolerance == doctest::Approx(1e-3));
    const auto big = sample_hilbert_schmidt(rng, {5});
    const auto skipped = check_hmax_measurement_monotonicity(big, fourier_basis(5), 0.1);
    CHECK(skipped.status == CertificateStatus::skipped);
    CHECK(check_hmax_measurement_monotonicity(big, fourier_basis(5), 0.0).pass);
}

TEST_CASE("substate monotonicity")
{
    Matrix s = Matrix::Zero(3, 3), sub = Matrix::Zero(3, 3);
    s.diagonal() << 0.5, 0.3, 0.2;
    sub.diagonal() << 0.4, 0.3, 0.0;
    const auto c = check_substate_monotonicity(DensityOperator::subnormalized(sub, {3}), DensityOperator(s, {3}), 0.1);
    CHECK(c.pass);
    CHECK(c.slack > 0);
}

TEST_CASE("profile arity is enforced")
{
    CHECK_THROWS_AS(check_strong_subadditivity(max_entangled(2)), DimensionError);
    CHECK_THROWS_AS(check_chain_rules(DensityOperator(maximally_mixed(2), {2})), DimensionError);
}
