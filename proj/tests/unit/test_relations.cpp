#include <doctest.h>

#include <cmath>

#include "qmur/relations.hpp"

using namespace qmur;

namespace {

const MeasurementBasis kComp = MeasurementBasis::computational(2);
const MeasurementBasis kFourier = fourier_basis(2);

const RelationCertificate& find(const std::vector<RelationCertificate>& certs, const std::string& id)
{
    for (const auto& c : certs)
        if (c.relation == id)
            return c;
    FAIL("missing certificate " << id);
    return certs.front();
}

} // namespace

TEST_CASE("main relation is tight on the maximally entangled state")
{
    const auto c = check_main_theorem(kComp, kFourier, max_entangled(2));
    CHECK(c.pass);
    CHECK(c.lhs == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(c.rhs == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(std::abs(c.slack) <= 1e-7);
}

TEST_CASE("main relation with same basis twice has rhs H(A|B)")
{
    const auto c = check_main_theorem(kComp, kComp, werner(2, 0.3));
    CHECK(c.pass);
    CHECK(c.rhs == doctest::Approx(h_vn_cond(werner(2, 0.3), 0, 1).bits));
}

TEST_CASE("Robertson and Maassen-Uffink on qubits")
{
    Matrix x(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    Vector plus = Vector::Constant(2, 1 / std::sqrt(2.0));
    const DensityOperator p(pure_projector(plus), {2});
    const auto rob = check_robertson(x, z, p);
    CHECK(rob.pass);
    const auto mu = check_maassen_uffink(kComp, kFourier, p);
    CHECK(mu.pass);
    CHECK(mu.lhs == doctest::Approx(1.0));
    CHECK(mu.slack == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("eavesdropper corollary on the maximally entangled state has trivial E")
{
    const auto res = check_br_corollary(kComp, kFourier, max_entangled(2));
    CHECK(res.certificate.pass);
    CHECK(res.certificate.lhs == doctest::Approx(1.0));
    CHECK(res.residual_rb_re <= 1e-8);
    CHECK(res.residual_ab_e <= 1e-8);
    const auto flat = check_br_corollary(kComp, kFourier, DensityOperator(maximally_mixed(4), {2, 2}));
    CHECK(flat.certificate.pass);
}

TEST_CASE("auxiliary state has the pinched marginal and unit trace")
{
    CounterRng rng(53);
    const auto rho = sample_hilbert_schmidt(rng, {2, 2});
    const auto omega = build_omega(kComp, kFourier, rho);
    CHECK(omega.state.dim() == 16);
    CHECK(omega.state.trace() == doctest::Approx(1.0));
    const Matrix seq = apply(MeasurementChannel{kComp, 0},
                             apply(MeasurementChannel{kFourier, 0}, rho.matrix(), rho.profile()), rho.profile());
    CHECK((omega.state.marginal({2, 3}).matrix() - seq).cwiseAbs().maxCoeff() <= 1e-10);

    Matrix diag = Matrix::Zero(4, 4);
    diag(0, 0) = 0.7;
    diag(3, 3) = 0.3;
    const DensityOperator d(diag, {2, 2});
    const auto om = build_omega(kComp, kComp, d);
    CHECK((om.state.marginal({2, 3}).matrix() - diag).norm() < 1e-12);
    CHECK_THROWS_AS(build_omega(fourier_basis(8), fourier_basis(8), sample_hilbert_schmidt(rng, {8, 9})),
                    UnsupportedScaleError);
}

TEST_CASE("identities on the auxiliary state for flat and entangled inputs")
{
    const auto flat = build_omega(kComp, kFourier, DensityOperator(maximally_mixed(4), {2, 2}));
    const auto ids = check_omega_identities(flat);
    REQUIRE(ids.size() == 4);
    for (const auto& c : ids)
        CHECK(c.pass);
    CHECK(ids[0].lhs == doctest::Approx(4.0).epsilon(1e-7));

    const auto mes = build_omega(kComp, kFourier, max_entangled(2));
    const auto ids2 = check_omega_identities(mes);
    CHECK(find(ids2, "omega4").pass);
    CHECK(find(ids2, "omega4").lhs >= 1.0 - 1e-6);
    for (const auto& c : check_combined_chain(mes))
        CHECK(c.pass);
}

TEST_CASE("non-smooth relation on closed-form states")
{
    const DensityOperator flat(maximally_mixed(4), {2, 2});
    const auto a = check_nonsmooth_theorem(kComp, kFourier, flat);
    CHECK(a.pass);
    CHECK(a.lhs == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(a.slack == doctest::Approx(0.0).epsilon(1e-6));

    const auto b = check_nonsmooth_theorem(kComp, kFourier, max_entangled(2), true);
    CHECK(b.pass);
    // Pure state: H_min(AB) = 0, so the bound is log2(1/c) = 1 and it is met exactly.
    CHECK(b.lhs == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(b.rhs == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(b.slack) <= 1e-6);

    const auto sub = DensityOperator::subnormalized(maximally_mixed(4) * 0.5, {2, 2});
    CHECK(check_nonsmooth_theorem(kComp, kFourier, sub).pass);
}

TEST_CASE("proof trace on the flat state recovers the full 2 log2(1/ε) margin")
{
    const double eps = 0.05;
    const auto certs = check_smooth_proof_trace(kComp, kFourier, DensityOperator(maximally_mixed(4), {2, 2}), eps);
    for (const auto& c : certs)
        CHECK_MESSAGE(c.pass, c.relation);
    CHECK(find(certs, "proof.final").slack >= 2 * std::log2(1 / eps) - 1e-9);
}

TEST_CASE("proof trace distance budgets on the maximally entangled state")
{
    const double eps = 0.01;
    const auto certs = check_smooth_proof_trace(kComp, kFourier, max_entangled(2), eps);
    for (const auto& c : certs)
        CHECK_MESSAGE(c.pass, c.relation);
    CHECK(find(certs, "proof.distance_hmin").lhs == doctest::Approx(0.2));
    CHECK(find(certs, "proof.distance_hmin").rhs <= 0.2 + 1e-12);
    CHECK(find(certs, "proof.distance_hneginf").lhs == doctest::Approx(std::sqrt(0.06)));
    CHECK(find(certs, "proof.distance_hneginf").rhs <= std::sqrt(0.06) + 1e-12);
    CHECK(find(certs, "proof.five_root_eps").lhs == doctest::Approx(0.5));
}

TEST_CASE("proof trace skips oracle steps above dimension four and checks ε")
{
    CounterRng rng(59);
    const auto rho = sample_hilbert_schmidt(rng, {3, 2});
    const auto certs = check_smooth_proof_trace(fourier_basis(3), MeasurementBasis::computational(3), rho, 0.1);
    const auto& sub = find(certs, "proof.hmax_substate");
    CHECK(sub.status == CertificateStatus::skipped);
    CHECK_FALSE(sub.pass);
    CHECK(sub.note == "skipped: dimension");
    for (const auto& c : certs)
        if (c.status != CertificateStatus::skipped)
            CHECK_MESSAGE(c.pass, c.relation);
    CHECK_THROWS_AS(check_smooth_proof_trace(kComp, kFourier, max_entangled(2), 0.0), ParameterError);
    CHECK_THROWS_AS(check_smooth_proof_trace(kComp, kFourier, max_entangled(2), 0.31), ParameterError);
}

TEST_CASE("Rényi endpoint on a basis state")
{
    Vector zero = Vector::Zero(2);
    zero[0] = 1;
    const DensityOperator p(pure_projector(zero), {2});
    const auto c = check_renyi_endpoint(kComp, kFourier, p);
    CHECK(c.pass);
    CHECK(c.lhs == doctest::Approx(1.0));
    CHECK(c.slack == doctest::Approx(0.0).epsilon(1e-12));
    const auto same = check_renyi_endpoint(kFourier, kFourier, p);
    CHECK(same.rhs == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(same.pass);
}

TEST_CASE("overlap of tensor-power bases")
{
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto c = check_iid_overlap(kComp, kFourier, n);
        CHECK(c.pass);
        CHECK(std::abs(c.slack) <= 1e-12);
    }
    CHECK(check_iid_overlap(kComp, kFourier, 2).lhs == doctest::Approx(0.25));
}

TEST_CASE("mismatched bases are rejected")
{
    CHECK_THROWS_AS(check_main_theorem(fourier_basis(3), kComp, max_entangled(2)), DimensionError);
}
