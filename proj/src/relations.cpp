#include "qmur/relations.hpp"

#include <cmath>
#include <limits>

#include "qmur/distances.hpp"

namespace qmur {

namespace {

void require_bipartite(const MeasurementBasis& r, const MeasurementBasis& s, const DensityOperator& rho,
                       const char* what)
{
    if (rho.profile().size() != 2)
        throw DimensionError(std::string(what) + ": expected a profile [d_A, d_B], got " + rho.profile().to_string());
    if (r.dimension() != rho.profile()[0] || s.dimension() != rho.profile()[0])
        throw DimensionError(std::string(what) + ": bases do not match d_A");
}

void require_single(const MeasurementBasis& r, const MeasurementBasis& s, const DensityOperator& rho,
                    const char* what)
{
    const auto d = static_cast<std::size_t>(rho.dim());
    if (r.dimension() != d || s.dimension() != d)
        throw DimensionError(std::string(what) + ": bases do not match the state");
}

Matrix measured(const MeasurementBasis& basis, const Matrix& rho, const DimensionProfile& profile)
{
    return apply(MeasurementChannel{basis, 0}, rho, profile);
}

double h_min_rb(const Matrix& rho_rb, const DimensionProfile& profile)
{
    return h_min_cond(rho_rb, profile[0], profile[1]).value.bits;
}

/// −∞ for an operator without support.
double neg_inf_or_sentinel(const Matrix& m)
{
    if (!(eigenvalues_hermitian(m)[0] > kSupportTol))
        return -std::numeric_limits<double>::infinity();
    return neg_inf_entropy_bits(m);
}

} // namespace

RelationCertificate check_robertson(const Matrix& r, const Matrix& s, const DensityOperator& rho)
{
    if (!is_hermitian(r) || !is_hermitian(s))
        throw ShapeError("check_robertson: observables must be Hermitian");
    if (r.rows() != rho.dim() || s.rows() != rho.dim())
        throw DimensionError("check_robertson: observable and state dimensions differ");
    if (!rho.is_normalized())
        throw NormalizationError("check_robertson: requires a normalized state");
    const Matrix& m = rho.matrix();
    auto spread = [&](const Matrix& o) {
        const double mean = real_trace((m * o).eval());
        const double second = real_trace((m * o * o).eval());
        return std::sqrt(std::max(0.0, second - mean * mean));
    };
    const double dr = spread(r), ds = spread(s);
    const double commutator = 0.5 * std::abs((m * (r * s - s * r)).trace());
    return certify_inequality("robertson", dr * ds, commutator, kSpectralTol, digest(rho),
                              {{"delta_r", dr}, {"delta_s", ds}});
}

RelationCertificate check_maassen_uffink(const MeasurementBasis& r, const MeasurementBasis& s,
                                         const DensityOperator& rho)
{
    require_single(r, s, rho, "check_maassen_uffink");
    const double hr = shannon_entropy(outcome_distribution(r, rho.matrix()));
    const double hs = shannon_entropy(outcome_distribution(s, rho.matrix()));
    const double bound = overlap_c(r, s).log2_inv_c;
    return certify_inequality("maassen_uffink", hr + hs, bound, kSpectralTol, digest(rho),
                              {{"H(R)", hr}, {"H(S)", hs}, {"log2(1/c)", bound}});
}

RelationCertificate check_main_theorem(const MeasurementBasis& r, const MeasurementBasis& s,
                                       const DensityOperator& rho)
{
    require_bipartite(r, s, rho, "check_main_theorem");
    const double hr = h_measured_cond(rho, MeasurementChannel{r, 0}, 1).bits;
    const double hs = h_measured_cond(rho, MeasurementChannel{s, 0}, 1).bits;
    const double ha = h_vn_cond(rho, 0, 1).bits;
    const double bound = overlap_c(r, s).log2_inv_c;
    return certify_inequality("main_theorem", hr + hs, bound + ha, kVonNeumannTol, digest(rho),
                              {{"H(R|B)", hr}, {"H(S|B)", hs}, {"log2(1/c)", bound}, {"H(A|B)", ha}});
}

CorollaryResult check_br_corollary(const MeasurementBasis& r, const MeasurementBasis& s, const DensityOperator& rho)
{
    require_bipartite(r, s, rho, "check_br_corollary");
    const DensityOperator psi = purify(rho);
    const DensityOperator post_r = apply(MeasurementChannel{r, 0}, psi);
    const double hre = h_vn_cond(post_r, 0, 2).bits;
    const double hsb = h_measured_cond(rho, MeasurementChannel{s, 0}, 1).bits;
    const double bound = overlap_c(r, s).log2_inv_c;

    CorollaryResult out;
    out.residual_rb_re = std::abs(h_vn(post_r, Subsystems{0, 1}).bits - h_vn(post_r, Subsystems{0, 2}).bits);
    out.residual_ab_e = std::abs(h_vn(psi, Subsystems{0, 1}).bits - h_vn(psi, Subsystems{2}).bits);
    out.certificate = certify_inequality("br_corollary", hre + hsb, bound, kVonNeumannTol, digest(rho),
                                         {{"H(R|E)", hre},
                                          {"H(S|B)", hsb},
                                          {"log2(1/c)", bound},
                                          {"|H(RB)-H(RE)|", out.residual_rb_re},
                                          {"|H(AB)-H(E)|", out.residual_ab_e},
                                          {"d_E", static_cast<double>(psi.profile()[2])}});
    return out;
}

OmegaState build_omega(const MeasurementBasis& r, const MeasurementBasis& s, const DensityOperator& rho)
{
    require_bipartite(r, s, rho, "build_omega");
    const auto& profile = rho.profile();
    const std::size_t d = r.dimension();
    const std::size_t block = profile.total();
    if (d * d * block > 4096)
        throw UnsupportedScaleError("build_omega: Ω would have dimension " + std::to_string(d * d * block));

    const Matrix dr = embed(generalized_pauli(r), profile, 0);
    const Matrix ds = embed(generalized_pauli(s), profile, 0);
    const auto n = static_cast<Eigen::Index>(block);
    const auto dd = static_cast<Eigen::Index>(d);
    Matrix omega = Matrix::Zero(dd * dd * n, dd * dd * n);
    Matrix ra = Matrix::Identity(n, n);
    for (Eigen::Index a = 0; a < dd; ++a) {
        Matrix sb = Matrix::Identity(n, n);
        for (Eigen::Index b = 0; b < dd; ++b) {
            const Matrix u = ra * sb;
            omega.block((a * dd + b) * n, (a * dd + b) * n, n, n) = u * rho.matrix() * u.adjoint();
            sb = ds * sb;
        }
        ra = dr * ra;
    }
    omega /= static_cast<double>(d * d);
    DimensionProfile full{d, d, profile[0], profile[1]};
    return OmegaState{DensityOperator(std::move(omega), std::move(full), rho.normalization()), rho, r, s, digest(rho)};
}

std::vector<RelationCertificate> check_omega_identities(const OmegaState& omega)
{
    const auto& w = omega.state;
    const auto& rho = omega.source;
    const auto& profile = rho.profile();
    const double log_d = std::log2(static_cast<double>(omega.r.dimension()));
    std::vector<RelationCertificate> out;

    const double h1 = min_entropy_bits(w.matrix());
    const double h1_rho = min_entropy_bits(rho.matrix());
    out.push_back(certify_equality("omega1", h1, 2 * log_d + h1_rho, 1e-7, omega.source_digest,
                                   {{"H_min(A'B'AB)_Omega", h1}, {"H_min(AB)", h1_rho}}));

    const double h2 = neg_inf_entropy_bits(w.marginal({0, 2, 3}).matrix());
    const double h2_rho = neg_inf_entropy_bits(measured(omega.s, rho.matrix(), profile));
    out.push_back(certify_equality("omega2", h2, log_d + h2_rho, 1e-7, omega.source_digest,
                                   {{"H_-inf(A'AB)_Omega", h2}, {"H_-inf(SB)", h2_rho}}));

    const double h3 = h_min_cond(w, {1, 2}, {3}).value.bits;
    const double h3_rho = h_min_rb(measured(omega.r, rho.matrix(), profile), profile);
    out.push_back(certify_inequality("omega3", log_d + h3_rho, h3, kSdpTol, omega.source_digest,
                                     {{"H_min(B'A|B)_Omega", h3}, {"H_min(R|B)", h3_rho}}));

    const double h4 = h_min_cond(w, {2}, {3}).value.bits;
    const double bound = overlap_c(omega.r, omega.s).log2_inv_c;
    out.push_back(certify_inequality("omega4", h4, bound, kSdpTol, omega.source_digest,
                                     {{"H_min(A|B)_Omega", h4}, {"log2(1/c)", bound}}));
    return out;
}

std::vector<RelationCertificate> check_combined_chain(const OmegaState& omega)
{
    const auto& w = omega.state;
    const double t1 = min_entropy_bits(w.matrix()) - neg_inf_entropy_bits(w.marginal({0, 2, 3}).matrix());
    const double t2 = h_min_cond_self(w, {1}, {0, 2, 3}).value();
    const double t3 = h_min_cond_self(w, {1}, {2, 3}).value();
    const double t4 = h_min_cond(w, {1, 2}, {3}).value.bits - h_min_cond(w, {2}, {3}).value.bits;
    const std::vector<Term> terms{{"t1", t1}, {"t2", t2}, {"t3", t3}, {"t4", t4}};
    return {certify_inequality("chain.link1", t2, t1, kVonNeumannTol, omega.source_digest, terms),
            certify_inequality("chain.link2", t3, t2, kVonNeumannTol, omega.source_digest, terms),
            certify_inequality("chain.link3", t4, t3, kSdpTol, omega.source_digest, terms)};
}

RelationCertificate check_nonsmooth_theorem(const MeasurementBasis& r, const MeasurementBasis& s,
                                            const DensityOperator& rho, bool with_chain)
{
    require_bipartite(r, s, rho, "check_nonsmooth_theorem");
    const auto& profile = rho.profile();
    const double hrb = h_min_rb(measured(r, rho.matrix(), profile), profile);
    const double hsb = neg_inf_entropy_bits(measured(s, rho.matrix(), profile));
    const double hab = min_entropy_bits(rho.matrix());
    const double bound = overlap_c(r, s).log2_inv_c;
    std::vector<Term> terms{{"H_min(R|B)", hrb}, {"H_-inf(SB)", hsb}, {"log2(1/c)", bound}, {"H_min(AB)", hab}};
    if (with_chain) {
        const auto omega = build_omega(r, s, rho);
        for (const auto& link : check_combined_chain(omega)) {
            terms.push_back({link.relation + ".slack", link.slack});
            if (link.relation == "chain.link3")
                for (const auto& t : link.terms)
                    terms.push_back({"chain." + t.name, t.value});
        }
    }
    return certify_inequality("nonsmooth_theorem", hrb + hsb, bound + hab, kSdpTol, digest(rho), std::move(terms));
}

std::vector<RelationCertificate> check_smooth_proof_trace(const MeasurementBasis& r, const MeasurementBasis& s,
                                                          const DensityOperator& rho, double epsilon)
{
    require_bipartite(r, s, rho, "check_smooth_proof_trace");
    if (!(epsilon > 0.0 && epsilon <= 0.3))
        throw ParameterError("check_smooth_proof_trace: ε must lie in (0, 0.3]");
    if (!rho.is_normalized())
        throw NormalizationError("check_smooth_proof_trace: requires a normalized state");

    const auto& profile = rho.profile();
    const std::string dig = digest(rho);
    const MeasurementChannel ch_r{r, 0}, ch_s{s, 0};
    const double bound = overlap_c(r, s).log2_inv_c;
    const double penalty = 2 * std::log2(1.0 / epsilon);
    const Matrix& m = rho.matrix();
    std::vector<RelationCertificate> out;

    // Π̄ from the H_min smoothing of ρ_AB.
    const auto hmin = smooth_hmin_operator(rho, epsilon);
    const Matrix& pbar = hmin.smoothing.op;
    Matrix sigma = pbar * m * pbar;
    sigma = (sigma + sigma.adjoint()) / 2.0;
    const double deficit_hmin = real_trace((m - sigma).eval());
    const double hmin_eps = hmin.value.bits;
    const double hmin_sigma = min_entropy_bits(sigma);
    out.push_back(certify_inequality("proof.hmin_budget", 2 * epsilon, deficit_hmin, kSpectralTol, dig,
                                     {{"tr((1-Pbar^2)rho)", deficit_hmin}}));
    out.push_back(certify_inequality("proof.hmin_smoothing", hmin_sigma, hmin_eps, kSpectralTol, dig,
                                     {{"H_min(AB)_sigma", hmin_sigma}, {"H_min^eps(AB)_rho", hmin_eps}}));

    // Π from the H_{-∞} smoothing of (S ⊗ I)(σ), in a basis that commutes with the pinching.
    const Matrix sigma_sb = apply(ch_s, sigma, profile);
    const auto hr = smooth_budget_operator_hneginf(pinched_spectral(ch_s, sigma, profile), epsilon);
    const Matrix& pi = hr.smoothing.op;
    const Matrix smoothed_sb = pi * sigma_sb * pi;
    const double deficit_sb = real_trace((sigma_sb - smoothed_sb).eval());
    out.push_back(certify_inequality("proof.hneginf_budget", 3 * epsilon, deficit_sb, kSpectralTol, dig,
                                     {{"tr((1-Pi^2)sigma_SB)", deficit_sb}}));

    Matrix tau = pi * sigma * pi;
    tau = (tau + tau.adjoint()) / 2.0;
    const double deficit_ab = real_trace((sigma - tau).eval());
    out.push_back(certify_equality("proof.trace_commute", deficit_ab, deficit_sb, kSpectralTol, dig,
                                   {{"tr((1-Pi^2)sigma_AB)", deficit_ab}}));
    const Matrix tau_sb = apply(ch_s, tau, profile);
    const double commute_residual = (smoothed_sb - tau_sb).cwiseAbs().maxCoeff();
    out.push_back(certify_equality("proof.pinching_commute", commute_residual, 0.0, kSpectralTol, dig));

    const double hneg_tau_sb = neg_inf_or_sentinel(tau_sb);
    out.push_back(certify_inequality("proof.hmax_tail_cut", hr.first_stage.value(), hneg_tau_sb - penalty,
                                     kSpectralTol, dig,
                                     {{"H_max(SB)_first_stage", hr.first_stage.value()},
                                      {"H_-inf(SB)_tau", hneg_tau_sb},
                                      {"H_-inf(SB)_spectral", hr.value.value()}}));

    if (!(real_trace(tau) > kSupportTol)) {
        for (const char* id : {"proof.nonsmooth_on_tau", "proof.hmin_projection", "proof.rhoexpr",
                               "proof.hmax_substate", "proof.presmooth", "proof.final"})
            out.push_back(certify_skipped(id, "smoothed operator vanishes", dig));
        return out;
    }

    // Nonsmooth relation on τ = ΠσΠ.
    const Matrix tau_rb = apply(ch_r, tau, profile);
    const double hmin_rb_tau = h_min_rb(tau_rb, profile);
    const double hmin_ab_tau = min_entropy_bits(tau);
    out.push_back(certify_inequality("proof.nonsmooth_on_tau", hmin_rb_tau + hneg_tau_sb, bound + hmin_ab_tau,
                                     kSdpTol, dig,
                                     {{"H_min(R|B)_tau", hmin_rb_tau},
                                      {"H_-inf(SB)_tau", hneg_tau_sb},
                                      {"H_min(AB)_tau", hmin_ab_tau}}));
    out.push_back(certify_inequality("proof.hmin_projection", hmin_ab_tau, hmin_sigma, kSpectralTol, dig));

    // H_max^ε(SB)_{S(σ)} ≥ H_max(Π̄₂ S(σ) Π̄₂), the first stage of Π.
    out.push_back(certify_inequality("proof.rhoexpr", hmin_rb_tau + hr.first_stage.value(),
                                     bound + hmin_sigma - penalty, kSdpTol, dig,
                                     {{"H_max^eps(SB)_sigma_lower", hr.first_stage.value()}}));

    const Matrix rho_sb = apply(ch_s, m, profile);
    if (profile.total() <= 4) {
        const double upper_rho = smooth_hmax_oracle(eigenvalues_hermitian(rho_sb), epsilon).value();
        const double upper_sigma = smooth_hmax_oracle(eigenvalues_hermitian(sigma_sb), epsilon).value();
        out.push_back(certify_inequality("proof.hmax_substate", upper_rho, upper_sigma, kOracleTol, dig,
                                         {{"H_max^eps(SB)_rho_oracle", upper_rho},
                                          {"H_max^eps(SB)_sigma_oracle", upper_sigma}}));
    } else {
        out.push_back(certify_skipped("proof.hmax_substate", "dimension", dig));
    }

    const double hmax_rho_lower = smooth_budget_operator_hmax(pinched_spectral(ch_s, m, profile), epsilon).value.value();
    out.push_back(certify_inequality("proof.presmooth", hmin_rb_tau + hmax_rho_lower, bound + hmin_eps - penalty,
                                     kSdpTol, dig, {{"H_max^eps(SB)_rho_lower", hmax_rho_lower}}));

    const double p_hmin = purified_distance(m, sigma);
    const double p_hneginf = purified_distance(sigma, tau);
    const double p_total = purified_distance(m, tau);
    out.push_back(certify_inequality("proof.distance_hmin", std::sqrt(4 * epsilon), p_hmin, kSpectralTol, dig));
    out.push_back(certify_inequality("proof.distance_hmin_projection", distance_projection_bound(m, pbar), p_hmin,
                                     kSpectralTol, dig));
    out.push_back(certify_inequality("proof.distance_hneginf", std::sqrt(6 * epsilon), p_hneginf, kSpectralTol, dig));
    out.push_back(certify_inequality("proof.distance_hneginf_projection", distance_projection_bound(sigma, pi),
                                     p_hneginf, kSpectralTol, dig));
    out.push_back(certify_inequality("proof.triangle", p_hmin + p_hneginf, p_total, kSpectralTol, dig));
    out.push_back(certify_inequality("proof.five_root_eps", 5 * std::sqrt(epsilon), p_total, kSpectralTol, dig,
                                     {{"(sqrt4+sqrt6)sqrt(eps)", (2 + std::sqrt(6.0)) * std::sqrt(epsilon)}}));
    const double p_rb = purified_distance(apply(ch_r, m, profile), tau_rb);
    out.push_back(certify_inequality("proof.feasible_point", 5 * std::sqrt(epsilon), p_rb, kSpectralTol, dig));

    // H_min^{5√ε}(R|B) ≥ H_min(R|B)_τ and H_max^ε(SB) ≥ its constructive lower bound.
    out.push_back(certify_inequality("proof.final", hmin_rb_tau + hmax_rho_lower, bound + hmin_eps - penalty,
                                     kSdpTol, dig,
                                     {{"H_min^5sqrt(eps)(R|B)_lower", hmin_rb_tau},
                                      {"H_max^eps(SB)_lower", hmax_rho_lower},
                                      {"log2(1/c)", bound},
                                      {"H_min^eps(AB)", hmin_eps},
                                      {"2log2(1/eps)", penalty}}));
    return out;
}

RelationCertificate check_renyi_endpoint(const MeasurementBasis& r, const MeasurementBasis& s,
                                         const DensityOperator& rho)
{
    require_single(r, s, rho, "check_renyi_endpoint");
    const RealVector pr = outcome_distribution(r, rho.matrix());
    const RealVector ps = outcome_distribution(s, rho.matrix());
    const double hmin = -std::log2(pr.maxCoeff());
    const double hmax = 2 * std::log2(ps.cwiseSqrt().sum());
    const double bound = overlap_c(r, s).log2_inv_c;
    return certify_inequality("renyi_endpoint", hmin + hmax, bound, kSpectralTol, digest(rho),
                              {{"H_min(R)", hmin}, {"H_max(S)", hmax}, {"log2(1/c)", bound}});
}

RelationCertificate check_iid_overlap(const MeasurementBasis& r, const MeasurementBasis& s, std::size_t n)
{
    const double c = overlap_c(r, s).c;
    const double cn = overlap_c(tensor_power(r, n), tensor_power(s, n)).c;
    const DimensionProfile profile{r.dimension()};
    return certify_equality("iid_overlap", cn, std::pow(c, static_cast<double>(n)), 1e-12,
                            digest(r.vectors(), profile), {{"n", static_cast<double>(n)}, {"c", c}});
}

} // namespace qmur
