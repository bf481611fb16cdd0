#include "qmur/game.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "qmur/certificate.hpp"
#include "qmur/entropies.hpp"
#include "qmur/smoothing.hpp"

namespace qmur {

namespace {

constexpr double kViolationMargin = 1e-9;
constexpr std::size_t kMaxIidDim = 4096;

MeasurementBasis basis_or(const std::optional<MeasurementBasis>& b, MeasurementBasis fallback)
{
    return b ? *b : std::move(fallback);
}

} // namespace

Strategy strategy_from_string(const std::string& name)
{
    if (name == "mes")
        return Strategy::mes;
    if (name == "product")
        return Strategy::product;
    if (name == "werner")
        return Strategy::werner;
    if (name == "custom")
        return Strategy::custom;
    throw ParameterError("unknown strategy '" + name + "' (expected mes, product, werner or custom)");
}

std::string to_string(Strategy strategy)
{
    switch (strategy) {
    case Strategy::mes:
        return "mes";
    case Strategy::product:
        return "product";
    case Strategy::werner:
        return "werner";
    case Strategy::custom:
        return "custom";
    }
    return "custom";
}

DensityOperator scenario_state(const GameScenario& sc)
{
    switch (sc.strategy) {
    case Strategy::mes:
        return max_entangled(sc.dim);
    case Strategy::werner:
        return werner(sc.dim, sc.p);
    case Strategy::product: {
        // |0><0| on A, nothing useful on B.
        Matrix a = Matrix::Zero(static_cast<Eigen::Index>(sc.dim), static_cast<Eigen::Index>(sc.dim));
        a(0, 0) = 1.0;
        return DensityOperator(tensor(a, maximally_mixed(sc.dim)), {sc.dim, sc.dim});
    }
    case Strategy::custom:
        if (!sc.state)
            throw ParameterError("custom strategy needs a state");
        if (sc.state->profile().size() != 2)
            throw DimensionError("custom strategy needs a state on [d_A, d_B]");
        return *sc.state;
    }
    throw ParameterError("unknown strategy");
}

GameReport run_game(const GameScenario& sc)
{
    const DensityOperator rho = scenario_state(sc);
    const std::size_t d = rho.profile()[0];
    const MeasurementBasis r = basis_or(sc.r, MeasurementBasis::computational(d));
    const MeasurementBasis s = basis_or(sc.s, fourier_basis(d));
    if (r.dimension() != d || s.dimension() != d)
        throw DimensionError("run_game: bases must act on d_A = " + std::to_string(d));

    GameReport out;
    out.strategy = to_string(sc.strategy);
    out.p = sc.strategy == Strategy::werner ? sc.p : std::numeric_limits<double>::quiet_NaN();
    out.profile = rho.profile();
    out.r_label = r.label();
    out.s_label = s.label();
    const Overlap ov = overlap_c(r, s);
    out.c = ov.c;
    out.h_r_b = h_measured_cond(rho, MeasurementChannel{r, 0}, 1).bits;
    out.h_s_b = h_measured_cond(rho, MeasurementChannel{s, 0}, 1).bits;
    out.h_a_b = h_vn_cond(rho, 0, 1).bits;
    out.classical_bound = ov.log2_inv_c;
    out.memory_bound = ov.log2_inv_c + out.h_a_b;
    const double sum = out.h_r_b + out.h_s_b;
    out.violation = sum < out.classical_bound - kViolationMargin;
    out.tightness_gap = sum - out.memory_bound;
    out.digest = digest(rho);
    return out;
}

QkdPoint qkd_bound(const DensityOperator& state, const MeasurementBasis& r, const MeasurementBasis& s)
{
    if (state.profile().size() != 2)
        throw DimensionError("qkd_bound: state must live on [d_A, d_B]");
    if (!state.is_normalized())
        throw NormalizationError("qkd_bound: state must be normalized");
    const DensityOperator psi = purify(state);
    QkdPoint out;
    out.p = std::numeric_limits<double>::quiet_NaN();
    out.h_s_b = h_measured_cond(state, MeasurementChannel{s, 0}, 1).bits;
    out.log2_inv_c = overlap_c(r, s).log2_inv_c;
    out.bound = out.log2_inv_c - out.h_s_b;
    out.h_r_e = h_vn_cond(apply(MeasurementChannel{r, 0}, psi), 0, 2).bits;
    out.slack = out.h_r_e - out.bound;
    out.pass = out.slack >= -1e-8;
    return out;
}

std::vector<QkdPoint> qkd_werner_sweep(std::size_t d, const MeasurementBasis& r, const MeasurementBasis& s,
                                       std::size_t points)
{
    if (points < 2)
        throw ParameterError("qkd_werner_sweep: need at least two points");
    std::vector<QkdPoint> rows;
    for (std::size_t k = 0; k < points; ++k) {
        const double p = static_cast<double>(k) / static_cast<double>(points - 1);
        auto row = qkd_bound(werner(d, p), r, s);
        row.p = p;
        rows.push_back(row);
    }
    return rows;
}

DensityOperator iid_power(const DensityOperator& sigma, std::size_t n)
{
    if (sigma.profile().size() != 2)
        throw DimensionError("iid_power: σ must live on [d_A, d_B]");
    const std::size_t da = sigma.profile()[0];
    const std::size_t db = sigma.profile()[1];
    Matrix m = sigma.matrix();
    std::vector<std::size_t> factors{da, db};
    for (std::size_t k = 1; k < n; ++k) {
        m = tensor(m, sigma.matrix());
        factors.push_back(da);
        factors.push_back(db);
    }
    // A1 B1 A2 B2 ... -> A1 A2 ... B1 B2 ...
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < n; ++k)
        order.push_back(2 * k);
    for (std::size_t k = 0; k < n; ++k)
        order.push_back(2 * k + 1);
    m = permute_subsystems(m, DimensionProfile(factors), order);
    std::size_t dan = 1;
    std::size_t dbn = 1;
    for (std::size_t k = 0; k < n; ++k) {
        dan *= da;
        dbn *= db;
    }
    return DensityOperator(std::move(m), {dan, dbn}, sigma.normalization());
}

std::vector<TrendRow> iid_trend(const DensityOperator& sigma, const MeasurementBasis& r, const MeasurementBasis& s,
                                std::size_t max_n, double epsilon)
{
    if (max_n < 1 || max_n > 3)
        throw ParameterError("iid_trend: n must lie in 1..3");
    if (sigma.profile().size() != 2)
        throw DimensionError("iid_trend: σ must live on [d_A, d_B]");
    std::size_t dim = 1;
    for (std::size_t k = 0; k < max_n; ++k)
        dim *= sigma.profile().total();
    if (dim > kMaxIidDim)
        throw UnsupportedScaleError("iid_trend: σ^⊗n would have dimension " + std::to_string(dim));

    const double c = overlap_c(r, s).c;
    std::vector<TrendRow> rows;
    for (std::size_t n = 1; n <= max_n; ++n) {
        const DensityOperator rho = iid_power(sigma, n);
        const MeasurementBasis rn = tensor_power(r, n);
        const MeasurementBasis sn = tensor_power(s, n);
        const double per = 1.0 / static_cast<double>(n);

        TrendRow row;
        row.n = n;
        row.dim = static_cast<std::size_t>(rho.dim());
        row.c_n = overlap_c(rn, sn).c;
        row.c_pow_n = std::pow(c, static_cast<double>(n));
        row.log2_inv_c = per * -std::log2(row.c_n);
        const DensityOperator post_r = apply(MeasurementChannel{rn, 0}, rho);
        const DensityOperator post_s = apply(MeasurementChannel{sn, 0}, rho);
        row.h_min_r_b = per * h_min_cond(post_r, {0}, {1}).value.bits;
        row.h_neginf_s_b = per * neg_inf_entropy_bits(post_s.matrix());
        row.h_min_a_b = per * min_entropy_bits(rho.matrix());
        if (rho.is_normalized())
            row.h_min_eps_a_b = per * smooth_hmin_operator(rho, epsilon).value.value();
        else
            row.h_min_eps_a_b = std::numeric_limits<double>::quiet_NaN();
        row.slack = row.h_min_r_b + row.h_neginf_s_b - row.log2_inv_c - row.h_min_a_b;
        rows.push_back(row);
    }
    return rows;
}

} // namespace qmur
