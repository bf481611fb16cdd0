#pragma once
// The uncertainty game: Bob prepares ρ_AB, Alice measures A in R or S, and
// Bob guesses from B. Also the eavesdropper bound and the i.i.d. trend table.

#include <optional>
#include <string>
#include <vector>

#include "qmur/measurements.hpp"
#include "qmur/states.hpp"

namespace qmur {

enum class Strategy { mes, product, werner, custom };

struct GameScenario {
    Strategy strategy = Strategy::mes;
    std::size_t dim = 2;
    /// Werner weight; ignored by the other strategies.
    double p = 1.0;
    /// Required for Strategy::custom, on [d_A, d_B].
    std::optional<DensityOperator> state;
    /// Default to the computational and Fourier bases of d_A.
    std::optional<MeasurementBasis> r;
    std::optional<MeasurementBasis> s;
};

struct GameReport {
    std::string strategy;
    double p = 0;
    DimensionProfile profile;
    std::string r_label;
    std::string s_label;
    double c = 1;
    double h_r_b = 0;
    double h_s_b = 0;
    double h_a_b = 0;
    /// log2(1/c), the bound without quantum memory.
    double classical_bound = 0;
    /// log2(1/c) + H(A|B).
    double memory_bound = 0;
    /// H(R|B) + H(S|B) < classical_bound − 1e-9.
    bool violation = false;
    /// H(R|B) + H(S|B) − memory_bound, never below −1e-8.
    double tightness_gap = 0;
    std::string digest;
};

DensityOperator scenario_state(const GameScenario& sc);
GameReport run_game(const GameScenario& sc);

Strategy strategy_from_string(const std::string& name);
std::string to_string(Strategy strategy);

struct QkdPoint {
    /// Werner weight for sweep rows, NaN otherwise.
    double p = 0;
    double h_s_b = 0;
    double log2_inv_c = 0;
    /// log2(1/c) − H(S|B).
    double bound = 0;
    /// H(R|E) on the minimal purification.
    double h_r_e = 0;
    double slack = 0;
    bool pass = false;
};

/// Lower bound on the eavesdropper's uncertainty about R versus its direct value.
QkdPoint qkd_bound(const DensityOperator& state, const MeasurementBasis& r, const MeasurementBasis& s);

/// qkd_bound on werner(d, p) for `points` equally spaced p in [0, 1].
std::vector<QkdPoint> qkd_werner_sweep(std::size_t d, const MeasurementBasis& r, const MeasurementBasis& s,
                                       std::size_t points = 11);

/// Per-copy terms of the non-smooth relation on σ^{⊗n}. Informational only.
struct TrendRow {
    std::size_t n = 1;
    std::size_t dim = 0;
    double c_n = 1;
    double c_pow_n = 1;
    double log2_inv_c = 0;
    double h_min_r_b = 0;
    double h_neginf_s_b = 0;
    double h_min_a_b = 0;
    /// H_min(AB) of the smoothed operator at budget 2ε.
    double h_min_eps_a_b = 0;
    /// Per-copy lhs − rhs of the non-smooth relation.
    double slack = 0;
};

/// σ on [d_A, d_B]; rows for n = 1..max_n. Throws UnsupportedScaleError when
/// (d_A d_B)^max_n > 4096 and ParameterError unless 1 ≤ max_n ≤ 3.
std::vector<TrendRow> iid_trend(const DensityOperator& sigma, const MeasurementBasis& r, const MeasurementBasis& s,
                                std::size_t max_n, double epsilon);

/// σ^{⊗n} regrouped onto [d_A^n, d_B^n].
DensityOperator iid_power(const DensityOperator& sigma, std::size_t n);

} // namespace qmur
