#include <doctest.h>

#include <cmath>

#include "qmur/measurements.hpp"
#include "qmur/states.hpp"

using namespace qmur;

TEST_CASE("Fourier and computational bases are mutually unbiased")
{
    for (std::size_t d : {2, 3, 5}) {
        const auto ov = overlap_c(MeasurementBasis::computational(d), fourier_basis(d));
        CHECK(ov.c == doctest::Approx(1.0 / static_cast<double>(d)));
        CHECK(ov.log2_inv_c == doctest::Approx(std::log2(static_cast<double>(d))));
        CHECK(overlap_c(fourier_basis(d), fourier_basis(d)).c == doctest::Approx(1.0));
    }
}

TEST_CASE("overlap of random bases lies in [1/d, 1]")
{
    CounterRng rng(4);
    for (int t = 0; t < 20; ++t) {
        const auto c = overlap_c(random_basis(rng, 3), random_basis(rng, 3)).c;
        CHECK(c >= 1.0 / 3.0 - 1e-12);
        CHECK(c <= 1.0 + 1e-12);
    }
}

TEST_CASE("non-orthonormal bases are rejected")
{
    Matrix v = Matrix::Identity(2, 2);
    v(0, 1) = 0.5;
    CHECK_THROWS(MeasurementBasis(v, "bad"));
}

TEST_CASE("the twirl over powers of the generalized Pauli operator equals the pinching")
{
    CounterRng rng(9);
    for (std::size_t d : {2, 3}) {
        const auto rho = sample_hilbert_schmidt(rng, {d, 2});
        const auto basis = random_basis(rng, d);
        const auto pinched = apply(MeasurementChannel{basis, 0}, rho);
        const auto twirled = twirl(basis, rho, 0);
        CHECK((pinched.matrix() - twirled.matrix()).cwiseAbs().maxCoeff() < 1e-12);
        const Matrix dp = generalized_pauli(basis);
        CHECK((dp.adjoint() * dp - Matrix::Identity(dp.rows(), dp.cols())).norm() < 1e-12);
    }
}

TEST_CASE("measurement is idempotent and preserves the memory marginal")
{
    CounterRng rng(10);
    const auto rho = sample_hilbert_schmidt(rng, {3, 2});
    const MeasurementChannel ch{fourier_basis(3), 0};
    const auto once = apply(ch, rho);
    CHECK((apply(ch, once).matrix() - once.matrix()).norm() < 1e-13);
    CHECK((once.marginal({1}).matrix() - rho.marginal({1}).matrix()).norm() < 1e-13);
    CHECK_THROWS_AS(apply(MeasurementChannel{fourier_basis(2), 0}, rho), DimensionError);
}

TEST_CASE("outcome distribution of a basis vector is a point mass")
{
    const auto f = fourier_basis(3);
    const RealVector p = outcome_distribution(f, f.projector(1));
    CHECK(p[1] == doctest::Approx(1.0));
    CHECK(p.sum() == doctest::Approx(1.0));
}

TEST_CASE("tensor power bases multiply overlaps")
{
    const auto r = MeasurementBasis::computational(2);
    const auto s = fourier_basis(2);
    CHECK(overlap_c(tensor_power(r, 2), tensor_power(s, 2)).c == doctest::Approx(0.25));
    CHECK(tensor_power(r, 3).dimension() == 8);
}

TEST_CASE("pinched spectral decomposition has product eigenvectors")
{
    CounterRng rng(12);
    const auto rho = sample_hilbert_schmidt(rng, {2, 2});
    const auto basis = random_basis(rng, 2);
    const MeasurementChannel ch{basis, 0};
    const Matrix pinched = apply(ch, rho.matrix(), rho.profile());
    const Spectral spec = pinched_spectral(ch, rho.matrix(), rho.profile());
    CHECK((spec.reconstruct() - pinched).norm() < 1e-12);
    // Any operator diagonal in this basis commutes with the pinching.
    RealVector f = RealVector::LinSpaced(4, 0.1, 0.9);
    const Matrix op = spec.vectors * f.cast<Complex>().asDiagonal() * spec.vectors.adjoint();
    const Matrix x = sample_hilbert_schmidt(rng, {2, 2}).matrix();
    CHECK((apply(ch, (op * x * op).eval(), rho.profile()) - op * apply(ch, x, rho.profile()) * op).norm() < 1e-12);
}
