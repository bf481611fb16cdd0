#include "qmur/entropies.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace qmur {

namespace {

void require_positive_trace(const Matrix& rho, const char* what)
{
    detail::require_square(rho, what);
    if (!(real_trace(rho) > kSupportTol))
        throw DegenerateInputError(std::string(what) + ": operator has zero trace");
}

void require_normalized(const DensityOperator& rho, const char* what)
{
    if (!rho.is_normalized())
        throw NormalizationError(std::string(what) + ": requires a normalized state");
}

} // namespace

double EntropyValue::value() const
{
    return neg_infinity ? -std::numeric_limits<double>::infinity() : bits;
}

std::string EntropyValue::format(int precision) const
{
    if (neg_infinity)
        return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, bits);
    return buf;
}

Bipartition arrange(const Matrix& rho, const DimensionProfile& profile, const Subsystems& target,
                    const Subsystems& memory)
{
    if (target.empty())
        throw ParameterError("arrange: empty target");
    const std::size_t n = profile.size();
    std::vector<bool> used(n, false);
    std::vector<std::size_t> order;
    for (const auto* part : {&target, &memory})
        for (auto k : *part) {
            if (k >= n)
                throw DimensionError("arrange: subsystem " + std::to_string(k) + " out of range for "
                                     + profile.to_string());
            if (used[k])
                throw ParameterError("arrange: overlapping subsystems");
            used[k] = true;
            order.push_back(k);
        }
    const std::size_t kept = order.size();
    for (std::size_t k = 0; k < n; ++k)
        if (!used[k])
            order.push_back(k);

    Bipartition out;
    out.dim_target = profile.total(target);
    out.dim_memory = profile.total(memory);
    const Matrix permuted = permute_subsystems(rho, profile, order);
    std::vector<std::size_t> front(kept);
    std::iota(front.begin(), front.end(), std::size_t{0});
    out.rho = partial_trace(permuted, profile.select(order), front);
    return out;
}

double shannon_entropy(const RealVector& p)
{
    double h = 0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
        if (p[i] > kSupportTol)
            h -= p[i] * std::log2(p[i]);
    return h;
}

double von_neumann_bits(const Matrix& rho)
{
    return shannon_entropy(eigenvalues_hermitian(rho));
}

double min_entropy_bits(const Matrix& rho)
{
    require_positive_trace(rho, "min_entropy");
    return -std::log2(lambda_max(rho));
}

double max_entropy_bits(const Matrix& rho)
{
    require_positive_trace(rho, "max_entropy");
    const RealVector values = eigenvalues_hermitian(rho);
    double s = 0;
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (values[i] > 0)
            s += std::sqrt(values[i]);
    return 2 * std::log2(s);
}

double neg_inf_entropy_bits(const Matrix& rho)
{
    require_positive_trace(rho, "neg_inf_entropy");
    const RealVector values = eigenvalues_hermitian(rho);
    double smallest = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (values[i] > kSupportTol)
            smallest = std::min(smallest, values[i]);
    if (!std::isfinite(smallest))
        throw DegenerateInputError("neg_inf_entropy: no eigenvalue above the support tolerance");
    return -std::log2(smallest);
}

EntropyValue h_vn(const DensityOperator& rho, const std::optional<Subsystems>& subsystems)
{
    require_normalized(rho, "h_vn");
    if (!subsystems)
        return EntropyValue::finite(von_neumann_bits(rho.matrix()));
    return EntropyValue::finite(von_neumann_bits(rho.marginal(*subsystems).matrix()));
}

EntropyValue h_vn_cond(const DensityOperator& rho, const Subsystems& target, const Subsystems& memory)
{
    require_normalized(rho, "h_vn_cond");
    const auto joint = arrange(rho.matrix(), rho.profile(), target, memory);
    const double h_joint = von_neumann_bits(joint.rho);
    const DimensionProfile two{joint.dim_target, joint.dim_memory};
    const double h_memory = von_neumann_bits(partial_trace(joint.rho, two, {1}));
    return EntropyValue::finite(h_joint - h_memory);
}

EntropyValue h_vn_cond(const DensityOperator& rho, std::size_t target, std::size_t memory)
{
    return h_vn_cond(rho, Subsystems{target}, Subsystems{memory});
}

EntropyValue h_measured_cond(const DensityOperator& rho, const MeasurementChannel& ch, const Subsystems& memory)
{
    return h_vn_cond(apply(ch, rho), Subsystems{ch.subsystem}, memory);
}

EntropyValue h_measured_cond(const DensityOperator& rho, const MeasurementChannel& ch, std::size_t memory)
{
    return h_measured_cond(rho, ch, Subsystems{memory});
}

EntropyValue h_min_uncond(const DensityOperator& rho)
{
    return EntropyValue::finite(min_entropy_bits(rho.matrix()));
}

EntropyValue h_max_uncond(const DensityOperator& rho)
{
    return EntropyValue::finite(max_entropy_bits(rho.matrix()));
}

EntropyValue h_neg_inf(const DensityOperator& rho)
{
    return EntropyValue::finite(neg_inf_entropy_bits(rho.matrix()));
}

EntropyValue h_min_cond_fixed(const Matrix& rho_ab, std::size_t dim_a, const Matrix& sigma_b)
{
    detail::require_square(sigma_b, "h_min_cond_fixed");
    const auto da = static_cast<Eigen::Index>(dim_a);
    if (rho_ab.rows() != da * sigma_b.rows() || rho_ab.cols() != rho_ab.rows())
        throw DimensionError("h_min_cond_fixed: ρ is not (dim_a * dim σ) square");
    require_positive_trace(rho_ab, "h_min_cond_fixed");

    const auto spec = eig_hermitian(sigma_b);
    const Matrix id_a = Matrix::Identity(da, da);
    const Matrix outside = tensor(id_a, Matrix(mat_fn_psd(spec, [](double x) { return x > kSupportTol ? 0.0 : 1.0; })));
    if (real_trace((rho_ab * outside).eval()) > 1e-9)
        return EntropyValue::minus_infinity();

    const Matrix w = tensor(id_a, Matrix(mat_fn_psd(spec, [](double x) {
                                return x > kSupportTol ? 1.0 / std::sqrt(x) : 0.0;
                            })));
    Matrix m = w * rho_ab * w;
    m = (m + m.adjoint()) / 2.0;
    const double top = lambda_max(m);
    if (!(top > 0))
        throw DegenerateInputError("h_min_cond_fixed: ρ vanishes on supp(σ)");
    return EntropyValue::finite(-std::log2(top));
}

EntropyValue h_min_cond_fixed(const DensityOperator& rho, const DensityOperator& sigma_b, const Subsystems& target,
                              const Subsystems& memory)
{
    if (!sigma_b.is_normalized())
        throw NormalizationError("h_min_cond_fixed: σ_B must be normalized");
    const auto joint = arrange(rho.matrix(), rho.profile(), target, memory);
    if (static_cast<std::size_t>(sigma_b.dim()) != joint.dim_memory)
        throw DimensionError("h_min_cond_fixed: σ_B dimension does not match the memory");
    return h_min_cond_fixed(joint.rho, joint.dim_target, sigma_b.matrix());
}

EntropyValue h_min_cond_self(const DensityOperator& rho, const Subsystems& target, const Subsystems& memory)
{
    const auto joint = arrange(rho.matrix(), rho.profile(), target, memory);
    const DimensionProfile two{joint.dim_target, joint.dim_memory};
    return h_min_cond_fixed(joint.rho, joint.dim_target, partial_trace(joint.rho, two, {1}));
}

MinEntropyResult h_min_cond(const Matrix& rho_ab, std::size_t dim_a, std::size_t dim_b, const SdpOptions& options)
{
    require_positive_trace(rho_ab, "h_min_cond");
    MinEntropyResult out;
    out.sdp = solve_min_entropy_sdp(rho_ab, dim_a, dim_b, options);
    out.value = EntropyValue::finite(-std::log2(out.sdp.value));
    return out;
}

MinEntropyResult h_min_cond(const DensityOperator& rho, const Subsystems& target, const Subsystems& memory,
                            const SdpOptions& options)
{
    const auto joint = arrange(rho.matrix(), rho.profile(), target, memory);
    return h_min_cond(joint.rho, joint.dim_target, joint.dim_memory, options);
}

} // namespace qmur
