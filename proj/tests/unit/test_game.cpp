#include <doctest.h>

#include <cmath>

#include "qmur/entropies.hpp"
#include "qmur/game.hpp"

using namespace qmur;

TEST_CASE("maximally entangled strategy beats the memoryless bound")
{
    const auto r = run_game({});
    CHECK(r.h_r_b + r.h_s_b == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.classical_bound == doctest::Approx(1.0));
    CHECK(r.memory_bound == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.violation);
}

TEST_CASE("product strategy respects the memoryless bound")
{
    GameScenario sc;
    sc.strategy = Strategy::product;
    const auto r = run_game(sc);
    CHECK_FALSE(r.violation);
    CHECK(r.h_r_b + r.h_s_b >= r.classical_bound - 1e-9);
}

TEST_CASE("Werner strategy at p = 0.5")
{
    GameScenario sc;
    sc.strategy = Strategy::werner;
    sc.p = 0.5;
    const auto r = run_game(sc);
    CHECK(r.h_r_b > 0);
    CHECK(r.h_r_b + r.h_s_b < 2);
    CHECK(r.memory_bound == doctest::Approx(1.548794941).epsilon(1e-9));
    CHECK(r.tightness_gap >= -1e-8);
}

TEST_CASE("Werner at p = 1 reproduces the maximally entangled report")
{
    GameScenario w;
    w.strategy = Strategy::werner;
    w.p = 1.0;
    const auto a = run_game(w);
    const auto b = run_game({});
    CHECK(a.h_r_b == b.h_r_b);
    CHECK(a.h_s_b == b.h_s_b);
    CHECK(a.memory_bound == b.memory_bound);
    CHECK(a.violation == b.violation);
    CHECK(a.digest == b.digest);
}

TEST_CASE("violation is an up-set in the Werner weight and the memory bound always holds")
{
    bool seen = false;
    for (int k = 0; k <= 20; ++k) {
        GameScenario sc;
        sc.strategy = Strategy::werner;
        sc.p = k / 20.0;
        const auto r = run_game(sc);
        CHECK(r.tightness_gap >= -1e-8);
        if (seen)
            CHECK(r.violation);
        seen = seen || r.violation;
    }
    CHECK(seen);
}

TEST_CASE("custom strategy requires a bipartite state")
{
    GameScenario sc;
    sc.strategy = Strategy::custom;
    CHECK_THROWS_AS(run_game(sc), ParameterError);
    sc.state = DensityOperator(maximally_mixed(2), {2});
    CHECK_THROWS_AS(run_game(sc), DimensionError);
    sc.state = werner(3, 0.2);
    CHECK_NOTHROW(run_game(sc));
    CHECK(strategy_from_string("werner") == Strategy::werner);
    CHECK_THROWS_AS(strategy_from_string("nope"), ParameterError);
}

TEST_CASE("eavesdropper bound: maximally entangled, flat and Werner sweep")
{
    const auto r = MeasurementBasis::computational(2);
    const auto s = fourier_basis(2);
    const auto mes = qkd_bound(max_entangled(2), r, s);
    CHECK(mes.bound == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mes.h_r_e == doctest::Approx(1.0).epsilon(1e-9));
    const auto flat = qkd_bound(DensityOperator(maximally_mixed(4), {2, 2}), r, s);
    CHECK(flat.bound <= 1e-12);
    CHECK(flat.pass);
    const auto sweep = qkd_werner_sweep(2, r, s);
    REQUIRE(sweep.size() == 11);
    for (const auto& p : sweep)
        CHECK(p.slack >= -1e-8);
    CHECK(sweep.back().p == 1.0);
}

TEST_CASE("i.i.d. trend rows")
{
    const auto r = MeasurementBasis::computational(2);
    const auto s = fourier_basis(2);
    const DensityOperator flat(maximally_mixed(4), {2, 2});
    const auto rows = iid_trend(flat, r, s, 2, 0.05);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].c_n == doctest::Approx(0.25));
    CHECK(rows[1].c_pow_n == doctest::Approx(0.25));
    // Flat product states: per-copy terms do not depend on n.
    CHECK(rows[0].h_min_r_b == doctest::Approx(rows[1].h_min_r_b).epsilon(1e-6));
    CHECK(rows[0].h_neginf_s_b == doctest::Approx(rows[1].h_neginf_s_b));
    CHECK(rows[0].h_min_a_b == doctest::Approx(rows[1].h_min_a_b));

    CounterRng rng(73);
    const auto rho = sample_hilbert_schmidt(rng, {2, 2});
    const auto one = iid_trend(rho, r, s, 1, 0.05);
    CHECK(one[0].h_min_r_b == doctest::Approx(h_min_cond(apply(MeasurementChannel{r, 0}, rho), {0}, {1}).value.bits));
    CHECK_THROWS_AS(iid_trend(rho, r, s, 4, 0.05), ParameterError);
    CHECK_THROWS_AS(iid_trend(sample_hilbert_schmidt(rng, {4, 5}), fourier_basis(4), MeasurementBasis::computational(4),
                              3, 0.05),
                    UnsupportedScaleError);
}

TEST_CASE("i.i.d. power regroups copies as A^n ⊗ B^n")
{
    CounterRng rng(79);
    const auto rho = sample_hilbert_schmidt(rng, {2, 3});
    const auto two = iid_power(rho, 2);
    CHECK(two.profile() == DimensionProfile{4, 9});
    const DensityOperator split(two.matrix(), {2, 2, 3, 3});
    CHECK((split.marginal({0, 2}).matrix() - rho.matrix()).norm() < 1e-12);
}
