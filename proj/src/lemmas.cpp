#include "qmur/lemmas.hpp"

#include <cmath>

#include "qmur/distances.hpp"
#include "qmur/entropies.hpp"
#include "qmur/relations.hpp"
#include "qmur/smoothing.hpp"

namespace qmur {

namespace {

void require_same_profile(const DensityOperator& a, const DensityOperator& b, const char* what)
{
    if (a.profile() != b.profile())
        throw DimensionError(std::string(what) + ": states have different profiles");
}

void require_profile_size(const DensityOperator& rho, std::size_t n, const char* what)
{
    if (rho.profile().size() != n)
        throw DimensionError(std::string(what) + ": expected " + std::to_string(n) + " subsystems, got "
                             + rho.profile().to_string());
}

} // namespace

RelationCertificate check_trace_bound(const DensityOperator& rho, const DensityOperator& sigma)
{
    require_same_profile(rho, sigma, "check_trace_bound");
    const double p = purified_distance(rho, sigma);
    const double norm = 2 * trace_distance(rho, sigma);
    return certify_inequality("lemma.trace_bound", 2 * p, norm, kSpectralTol, digest(rho),
                              {{"P", p}, {"||rho-sigma||_1", norm}});
}

RelationCertificate check_distance_nonincrease(const DensityOperator& rho, const DensityOperator& sigma,
                                               const Matrix& pi)
{
    require_same_profile(rho, sigma, "check_distance_nonincrease");
    const double before = purified_distance(rho, sigma);
    const double after = purified_distance((pi * rho.matrix() * pi).eval(), (pi * sigma.matrix() * pi).eval());
    return certify_inequality("lemma.distance_nonincrease", before, after, kSpectralTol, digest(rho));
}

RelationCertificate check_distance_projection(const DensityOperator& rho, const Matrix& pi)
{
    const Matrix& m = rho.matrix();
    const double p = purified_distance(m, (pi * m * pi).eval());
    return certify_inequality("lemma.distance_projection", distance_projection_bound(m, pi), p, kSpectralTol,
                              digest(rho));
}

RelationCertificate check_rearrangement(const DensityOperator& rho, const DensityOperator& sigma)
{
    require_same_profile(rho, sigma, "check_rearrangement");
    const auto spec = eig_hermitian(sigma.matrix());
    const RealVector r = eigenvalues_hermitian(rho.matrix()).cwiseMax(0.0);
    const Matrix rearranged = spec.vectors * r.cast<Complex>().asDiagonal() * spec.vectors.adjoint();
    const double p = purified_distance(rho, sigma);
    const double p_tilde = purified_distance(rearranged, sigma.matrix());
    return certify_inequality("lemma.rearrangement", p, p_tilde, kSpectralTol, digest(rho));
}

RelationCertificate check_distance_triangle(const DensityOperator& rho, const DensityOperator& sigma,
                                            const DensityOperator& tau)
{
    require_same_profile(rho, sigma, "check_distance_triangle");
    require_same_profile(rho, tau, "check_distance_triangle");
    const double direct = purified_distance(rho, tau);
    const double via = purified_distance(rho, sigma) + purified_distance(sigma, tau);
    return certify_inequality("lemma.distance_triangle", via, direct, kSpectralTol, digest(rho));
}

RelationCertificate check_distance_partial_trace(const DensityOperator& rho, const DensityOperator& sigma,
                                                 const std::vector<std::size_t>& keep)
{
    require_same_profile(rho, sigma, "check_distance_partial_trace");
    const double full = purified_distance(rho, sigma);
    const double reduced = purified_distance(rho.marginal(keep), sigma.marginal(keep));
    return certify_inequality("lemma.distance_partial_trace", full, reduced, kSpectralTol, digest(rho));
}

std::vector<RelationCertificate> check_chain_rules(const DensityOperator& rho)
{
    const std::size_t n = rho.profile().size();
    if (n != 2 && n != 3)
        throw DimensionError("check_chain_rules: expected [A, B] or [A, B, C]");
    const Subsystems c = n == 3 ? Subsystems{2} : Subsystems{};
    Subsystems bc{1};
    bc.insert(bc.end(), c.begin(), c.end());
    const std::string dig = digest(rho);

    const double a_bc = h_min_cond_self(rho, {0}, bc).value();
    const double ab_c = h_min_cond(rho, {0, 1}, c).value.bits;
    const double b_c = h_min_cond(rho, {1}, c).value.bits;
    auto chain1 = certify_inequality("lemma.chain_rule_1", ab_c - b_c, a_bc, kSdpTol, dig,
                                     {{"H_min(A|BC)_rho|rho", a_bc}, {"H_min(AB|C)", ab_c}, {"H_min(B|C)", b_c}});

    const DensityOperator ab = n == 3 ? rho.marginal({0, 1}) : rho;
    const double a_b = h_min_cond_self(ab, {0}, {1}).value();
    const double h_ab = min_entropy_bits(ab.matrix());
    const double h_b = neg_inf_entropy_bits(ab.marginal({1}).matrix());
    auto chain2 = certify_inequality("lemma.chain_rule_2", a_b, h_ab - h_b, kVonNeumannTol, dig,
                                     {{"H_min(A|B)_rho|rho", a_b}, {"H_min(AB)", h_ab}, {"H_-inf(B)", h_b}});
    return {std::move(chain1), std::move(chain2)};
}

RelationCertificate check_strong_subadditivity(const DensityOperator& rho)
{
    require_profile_size(rho, 3, "check_strong_subadditivity");
    const double a_b = h_min_cond_self(rho, {0}, {1}).value();
    const double a_bc = h_min_cond_self(rho, {0}, {1, 2}).value();
    return certify_inequality("lemma.strong_subadditivity", a_b, a_bc, kVonNeumannTol, digest(rho),
                              {{"H_min(A|B)_rho|rho", a_b}, {"H_min(A|BC)_rho|rho", a_bc}});
}

RelationCertificate check_hmax_measurement_monotonicity(const DensityOperator& sigma, const MeasurementBasis& basis,
                                                        double epsilon)
{
    if (static_cast<std::size_t>(sigma.dim()) != basis.dimension())
        throw DimensionError("check_hmax_measurement_monotonicity: basis does not match the state");
    const DimensionProfile single{basis.dimension()};
    const Matrix measured = apply(MeasurementChannel{basis, 0}, sigma.matrix(), single);
    const std::string dig = digest(sigma);
    if (epsilon == 0.0)
        return certify_inequality("lemma.hmax_measurement", max_entropy_bits(measured),
                                  max_entropy_bits(sigma.matrix()), kSpectralTol, dig);
    if (basis.dimension() > 4)
        return certify_skipped("lemma.hmax_measurement", "dimension", dig);
    const double after = smooth_hmax_oracle(eigenvalues_hermitian(measured), epsilon).value();
    const double before = smooth_hmax_oracle(eigenvalues_hermitian(sigma.matrix()), epsilon).value();
    return certify_inequality("lemma.hmax_measurement", after, before, kOracleTol, dig,
                              {{"epsilon", epsilon},
                               {"H_max^eps_measured_oracle", after},
                               {"H_max^eps_oracle", before}});
}

RelationCertificate check_substate_monotonicity(const DensityOperator& sub, const DensityOperator& sigma,
                                                double epsilon)
{
    require_same_profile(sub, sigma, "check_substate_monotonicity");
    const std::string dig = digest(sigma);
    if (sigma.dim() > 4)
        return certify_skipped("lemma.hmax_substate", "dimension", dig);
    const double upper = smooth_hmax_oracle(eigenvalues_hermitian(sigma.matrix()), epsilon).value();
    const double lower = smooth_hmax_oracle(eigenvalues_hermitian(sub.matrix()), epsilon).value();
    return certify_inequality("lemma.hmax_substate", upper, lower, kOracleTol, dig,
                              {{"epsilon", epsilon}, {"H_max^eps_sigma", upper}, {"H_max^eps_sub", lower}});
}

std::vector<RelationCertificate> check_entropy_ordering(const DensityOperator& rho)
{
    const Matrix& m = rho.matrix();
    const double hmin = min_entropy_bits(m);
    const double h = von_neumann_bits(m);
    const double hmax = max_entropy_bits(m);
    const double hneg = neg_inf_entropy_bits(m);
    const double log_d = std::log2(static_cast<double>(rho.dim()));
    const std::string dig = digest(rho);
    return {certify_inequality("ordering.hmin_le_h", h, hmin, kSpectralTol, dig),
            certify_inequality("ordering.h_le_hmax", hmax, h, kSpectralTol, dig),
            certify_inequality("ordering.hmax_le_log_d", log_d, hmax, kSpectralTol, dig),
            certify_inequality("ordering.hmin_le_hneginf", hneg, hmin, kSpectralTol, dig)};
}

RelationCertificate check_conditioning_reduces(const DensityOperator& rho, const MeasurementBasis& basis)
{
    require_profile_size(rho, 2, "check_conditioning_reduces");
    const MeasurementChannel ch{basis, 0};
    const double conditional = h_measured_cond(rho, ch, 1).bits;
    const double plain = h_vn(apply(ch, rho), Subsystems{0}).bits;
    return certify_inequality("lemma.conditioning_reduces", plain, conditional, kVonNeumannTol, digest(rho),
                              {{"H(R)", plain}, {"H(R|B)", conditional}});
}

std::vector<RelationCertificate> check_sdp_consistency(const DensityOperator& rho, const DensityOperator& probe)
{
    require_profile_size(rho, 2, "check_sdp_consistency");
    const std::string dig = digest(rho);
    const auto res = h_min_cond(rho, {0}, {1});
    const Matrix normalized = res.sdp.sigma / res.sdp.value;
    const double at_optimizer = h_min_cond_fixed(rho.matrix(), rho.profile()[0], normalized).value();
    const double at_probe = h_min_cond_fixed(rho, probe, {0}, {1}).value();
    const std::vector<Term> terms{{"value", res.sdp.value},
                                  {"dual_value", res.sdp.dual_value},
                                  {"complementarity", res.sdp.complementarity},
                                  {"iterations", static_cast<double>(res.sdp.iterations)}};
    return {certify_equality("sdp.fixed_at_optimizer", res.value.bits, at_optimizer, 1e-5, dig, terms),
            certify_inequality("sdp.primal_residual", 1e-8, res.sdp.primal_residual, 0.0, dig),
            certify_inequality("sdp.dominates_probe", res.value.bits, at_probe, kSdpTol, dig)};
}

} // namespace qmur
