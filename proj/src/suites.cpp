#include "qmur/suites.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "qmur/distances.hpp"
#include "qmur/game.hpp"
#include "qmur/lemmas.hpp"
#include "qmur/relations.hpp"
#include "qmur/smoothing.hpp"

namespace qmur {

namespace {

struct TrialContext {
    const SuiteConfig& cfg;
    const SuiteInfo& info;
    std::uint64_t trial;
    CounterRng& rng;

    DimensionProfile profile(DimensionProfile fallback) const
    {
        if (cfg.dims && (info.arity == 0 || cfg.dims->size() == info.arity))
            return *cfg.dims;
        return fallback;
    }
    std::vector<double> epsilons(std::vector<double> fallback) const
    {
        return cfg.epsilon.empty() ? fallback : cfg.epsilon;
    }
};

using TrialFn = std::function<std::vector<RelationCertificate>(TrialContext&)>;

struct Suite {
    SuiteInfo info;
    TrialFn run;
};

std::uint64_t hash_id(const std::string& id)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : id) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// 0 ≤ Π ≤ 1 with a random eigenbasis and uniform eigenvalues.
Matrix random_contraction(CounterRng& rng, std::size_t d)
{
    const Matrix u = random_unitary(rng, d);
    RealVector lambda(static_cast<Eigen::Index>(d));
    for (Eigen::Index k = 0; k < lambda.size(); ++k)
        lambda[k] = rng.uniform();
    return u * lambda.cast<Complex>().asDiagonal() * u.adjoint();
}

/// Alternates normalized and subnormalized draws, trace in [0.3, 1) for the latter.
DensityOperator mixed_normalization(CounterRng& rng, const DimensionProfile& profile, std::uint64_t trial)
{
    DensityOperator rho = sample_hilbert_schmidt(rng, profile);
    if (trial % 2 == 0)
        return rho;
    const double scale = 0.3 + 0.7 * rng.uniform();
    return DensityOperator::subnormalized(rho.matrix() * scale, profile);
}

std::vector<RelationCertificate> one(RelationCertificate c)
{
    std::vector<RelationCertificate> v;
    v.push_back(std::move(c));
    return v;
}

void append(std::vector<RelationCertificate>& out, std::vector<RelationCertificate> more)
{
    for (auto& c : more)
        out.push_back(std::move(c));
}

const std::vector<Suite>& suites()
{
    static const std::vector<Suite> all = {
        {{"robertson", "variance product against the commutator on one system", 1},
         [](TrialContext& t) {
             const std::size_t d = t.profile({3})[0];
             const Matrix r = random_hermitian(t.rng, d);
             const Matrix s = random_hermitian(t.rng, d);
             return one(check_robertson(r, s, sample_hilbert_schmidt(t.rng, {d})));
         }},
        {{"maassen-uffink", "H(R) + H(S) >= log2(1/c) on one system", 1},
         [](TrialContext& t) {
             const std::size_t d = t.profile({3})[0];
             const auto r = random_basis(t.rng, d, "r");
             const auto s = random_basis(t.rng, d, "s");
             return one(check_maassen_uffink(r, s, sample_hilbert_schmidt(t.rng, {d})));
         }},
        {{"main-theorem", "H(R|B) + H(S|B) >= log2(1/c) + H(A|B); cycles 2x2, 2x3, 3x3 by default", 2},
         [](TrialContext& t) {
             static const DimensionProfile cycle[] = {{2, 2}, {2, 3}, {3, 3}};
             const DimensionProfile p = t.profile(cycle[t.trial % 3]);
             const auto r = random_basis(t.rng, p[0], "r");
             const auto s = random_basis(t.rng, p[0], "s");
             return one(check_main_theorem(r, s, sample_hilbert_schmidt(t.rng, p)));
         }},
        {{"corollary", "H(R|E) + H(S|B) >= log2(1/c) with purification duality residuals", 2},
         [](TrialContext& t) {
             const DimensionProfile p = t.profile({2, 2});
             const auto r = random_basis(t.rng, p[0], "r");
             const auto s = random_basis(t.rng, p[0], "s");
             const DensityOperator rho = sample_hilbert_schmidt(t.rng, p);
             auto res = check_br_corollary(r, s, rho);
             std::vector<RelationCertificate> out;
             out.push_back(certify_equality("br_corollary.residual_rb_re", res.residual_rb_re, 0.0, kVonNeumannTol,
                                            res.certificate.digest));
             out.push_back(certify_equality("br_corollary.residual_ab_e", res.residual_ab_e, 0.0, kVonNeumannTol,
                                            res.certificate.digest));
             out.insert(out.begin(), std::move(res.certificate));
             return out;
         }},
        {{"nonsmooth-theorem", "H_min(R|B) + H_-inf(SB) >= log2(1/c) + H_min(AB), odd trials subnormalized", 2},
         [](TrialContext& t) {
             const DimensionProfile p = t.profile({2, 2});
             const auto r = random_basis(t.rng, p[0], "r");
             const auto s = random_basis(t.rng, p[0], "s");
             return one(check_nonsmooth_theorem(r, s, mixed_normalization(t.rng, p, t.trial), true));
         }},
        {{"omega", "the four identities of the auxiliary state and the combined chain", 2},
         [](TrialContext& t) {
             const DimensionProfile p = t.profile({2, 2});
             const auto r = random_basis(t.rng, p[0], "r");
             const auto s = random_basis(t.rng, p[0], "s");
             const auto omega = build_omega(r, s, sample_hilbert_schmidt(t.rng, p));
             auto out = check_omega_identities(omega);
             append(out, check_combined_chain(omega));
             return out;
         }},
        {{"smooth-trace", "each step of the constructive smoothing argument", 2},
         [](TrialContext& t) {
             const DimensionProfile p = t.profile({2, 2});
             const auto r = random_basis(t.rng, p[0], "r");
             const auto s = random_basis(t.rng, p[0], "s");
             const DensityOperator rho = sample_hilbert_schmidt(t.rng, p);
             std::vector<RelationCertificate> out;
             for (double eps : t.epsilons({0.01, 0.05, 0.1}))
                 append(out, check_smooth_proof_trace(r, s, rho, eps));
             return out;
         }},
        {{"renyi-endpoint", "H_min(R) + H_max(S) >= log2(1/c) on one system", 1},
         [](TrialContext& t) {
             const std::size_t d = t.profile({3})[0];
             const auto r = random_basis(t.rng, d, "r");
             const auto s = random_basis(t.rng, d, "s");
             return one(check_renyi_endpoint(r, s, sample_hilbert_schmidt(t.rng, {d})));
         }},
        {{"distance-lemmas", "purified-distance lemmas: trace bound, contraction, projection, rearrangement, triangle, "
                             "partial trace",
          2},
         [](TrialContext& t) {
             const DimensionProfile p = t.profile({2, 2});
             const DensityOperator rho = sample_hilbert_schmidt(t.rng, p);
             const DensityOperator sigma = sample_hilbert_schmidt(t.rng, p);
             const DensityOperator tau = sample_hilbert_schmidt(t.rng, p);
             const Matrix pi = random_contraction(t.rng, p.total());
             return std::vector<RelationCertificate>{check_trace_bound(rho, sigma),
                                                     check_distance_nonincrease(rho, sigma, pi),
                                                     check_distance_projection(rho, pi),
                                                     check_rearrangement(rho, sigma),
                                                     check_distance_triangle(rho, sigma, tau),
                                                     check_distance_partial_trace(rho, sigma, {0})};
         }},
        {{"chain-rules", "chain rules I and II on [A, B, C]", 3},
         [](TrialContext& t) { return check_chain_rules(sample_hilbert_schmidt(t.rng, t.profile({2, 2, 2}))); }},
        {{"strong-subadditivity", "H_min(A|BC) <= H_min(A|B) for the self-conditioned entropy", 3},
         [](TrialContext& t) {
             return one(check_strong_subadditivity(sample_hilbert_schmidt(t.rng, t.profile({2, 2, 2}))));
         }},
        {{"hmax-measurement", "smooth max-entropy does not decrease under a measurement", 1},
         [](TrialContext& t) {
             const std::size_t d = t.profile({2 + t.trial % 2})[0];
             const DensityOperator sigma = sample_hilbert_schmidt(t.rng, {d});
             const auto basis = random_basis(t.rng, d, "m");
             std::vector<RelationCertificate> out{check_hmax_measurement_monotonicity(sigma, basis, 0.0)};
             for (double eps : t.epsilons({0.05, 0.1}))
                 out.push_back(check_hmax_measurement_monotonicity(sigma, basis, eps));
             return out;
         }},
        {{"substate", "smooth max-entropy is monotone on commuting substates", 1},
         [](TrialContext& t) {
             const std::size_t d = t.profile({2 + t.trial % 2})[0];
             const DensityOperator sigma = sample_hilbert_schmidt(t.rng, {d});
             const auto spec = eig_hermitian(sigma.matrix());
             RealVector shrunk = spec.values.cwiseMax(0.0);
             for (Eigen::Index k = 0; k < shrunk.size(); ++k)
                 shrunk[k] *= t.rng.uniform();
             const Matrix sub = spec.vectors * shrunk.cast<Complex>().asDiagonal() * spec.vectors.adjoint();
             const auto sub_op = DensityOperator::subnormalized(sub, {d});
             std::vector<RelationCertificate> out;
             for (double eps : t.epsilons({0.05, 0.1}))
                 out.push_back(check_substate_monotonicity(sub_op, sigma, eps));
             return out;
         }},
        {{"entropy-ordering", "H_min <= H <= H_max <= log2 d and H_min <= H_-inf", 0},
         [](TrialContext& t) { return check_entropy_ordering(sample_hilbert_schmidt(t.rng, t.profile({2, 2}))); }},
        {{"conditioning", "H(R|B) <= H(R)", 2},
         [](TrialContext& t) {
             const DimensionProfile p = t.profile({2, 2});
             const auto basis = random_basis(t.rng, p[0], "r");
             return one(check_conditioning_reduces(sample_hilbert_schmidt(t.rng, p), basis));
         }},
        {{"sdp", "conditional min-entropy solver: optimizer consistency, feasibility, dominance", 2},
         [](TrialContext& t) {
             const DimensionProfile p = t.profile({2, 2});
             const DensityOperator rho = sample_hilbert_schmidt(t.rng, p);
             return check_sdp_consistency(rho, sample_hilbert_schmidt(t.rng, {p[1]}));
         }},
        {{"smooth-bracketing", "budget lower bound <= smooth max-entropy oracle <= H_max", 1},
         [](TrialContext& t) {
             const std::size_t d = t.profile({2 + t.trial % 2})[0];
             const DensityOperator sigma = sample_hilbert_schmidt(t.rng, {d});
             const std::string dig = digest(sigma);
             const RealVector spectrum = eigenvalues_hermitian(sigma.matrix());
             const double hmax = max_entropy_bits(sigma.matrix());
             std::vector<RelationCertificate> out;
             for (double eps : t.epsilons({0.05, 0.1})) {
                 if (d > 4) {
                     out.push_back(certify_skipped("bracket.lower", "dimension", dig));
                     out.push_back(certify_skipped("bracket.upper", "dimension", dig));
                     continue;
                 }
                 const double lower = smooth_budget_operator_hmax(sigma, eps).value.value();
                 const double oracle = smooth_hmax_oracle(spectrum, eps).value();
                 const double exact = optimal_hmax_spectrum(spectrum, eps).value.value();
                 const std::vector<Term> terms{{"epsilon", eps}, {"kkt_optimum", exact}};
                 out.push_back(certify_inequality("bracket.lower", oracle, lower, kOracleTol, dig, terms));
                 out.push_back(certify_inequality("bracket.upper", hmax, oracle, kOracleTol, dig, terms));
             }
             return out;
         }},
        {{"iid-overlap", "c of the n-fold tensor bases equals c^n for n = 1..3", 1},
         [](TrialContext& t) {
             const std::size_t d = t.profile({2 + t.trial % 2})[0];
             const bool mub = t.trial < 2;
             const auto r = mub ? MeasurementBasis::computational(d) : random_basis(t.rng, d, "r");
             const auto s = mub ? fourier_basis(d) : random_basis(t.rng, d, "s");
             std::vector<RelationCertificate> out;
             for (std::size_t n = 1; n <= 3; ++n)
                 out.push_back(check_iid_overlap(r, s, n));
             return out;
         }},
        {{"qkd", "eavesdropper bound on the Werner family, p = (trial mod 11)/10", 1},
         [](TrialContext& t) {
             const std::size_t d = t.profile({2})[0];
             const double p = static_cast<double>(t.trial % 11) / 10.0;
             const DensityOperator rho = werner(d, p);
             const auto q = qkd_bound(rho, MeasurementBasis::computational(d), fourier_basis(d));
             return one(certify_inequality("qkd.werner", q.h_r_e, q.bound, kVonNeumannTol, digest(rho),
                                           {{"p", p}, {"H(S|B)", q.h_s_b}, {"log2(1/c)", q.log2_inv_c}}));
         }},
        {{"game", "memory bound of the uncertainty game; strategies cycle mes, product, werner(random p)", 1},
         [](TrialContext& t) {
             GameScenario sc;
             sc.dim = t.profile({2})[0];
             sc.strategy = std::array{Strategy::mes, Strategy::product, Strategy::werner}[t.trial % 3];
             sc.p = t.rng.uniform();
             const GameReport g = run_game(sc);
             return one(certify_inequality("game.memory_bound", g.h_r_b + g.h_s_b, g.memory_bound, kVonNeumannTol,
                                           g.digest,
                                           {{"H(R|B)", g.h_r_b},
                                            {"H(S|B)", g.h_s_b},
                                            {"classical_bound", g.classical_bound},
                                            {"violation", g.violation ? 1.0 : 0.0}}));
         }},
    };
    return all;
}

const Suite& find_suite(const std::string& id)
{
    for (const auto& s : suites())
        if (s.info.id == id)
            return s;
    throw ParameterError("unknown suite '" + id + "'");
}

void apply_tolerance(RelationCertificate& c, const SuiteConfig& cfg)
{
    if (c.status == CertificateStatus::skipped)
        return;
    auto it = cfg.tolerance.find(c.relation);
    if (it == cfg.tolerance.end())
        it = cfg.tolerance.find(c.suite);
    if (it == cfg.tolerance.end())
        return;
    c.tolerance = it->second;
    c.pass = c.kind == CertificateKind::equality ? std::abs(c.slack) <= c.tolerance : c.slack >= -c.tolerance;
    c.status = c.pass ? CertificateStatus::passed : CertificateStatus::failed;
}

} // namespace

const std::vector<SuiteInfo>& suite_registry()
{
    static const std::vector<SuiteInfo> infos = [] {
        std::vector<SuiteInfo> v;
        for (const auto& s : suites())
            v.push_back(s.info);
        return v;
    }();
    return infos;
}

bool is_known_suite(const std::string& id)
{
    return id == "all"
           || std::any_of(suites().begin(), suites().end(), [&](const Suite& s) { return s.info.id == id; });
}

std::vector<std::string> resolve_suites(const SuiteConfig& cfg)
{
    if (cfg.trials == 0)
        throw ParameterError("trials must be at least 1");
    if (cfg.suites.empty())
        throw ParameterError("no suite selected");
    std::set<std::string> ids;
    for (const auto& id : cfg.suites) {
        if (!is_known_suite(id))
            throw ParameterError("unknown suite '" + id + "'");
        if (id == "all")
            for (const auto& s : suites())
                ids.insert(s.info.id);
        else
            ids.insert(id);
    }
    for (const auto& [key, tol] : cfg.tolerance)
        if (!(tol >= 0.0) || !std::isfinite(tol))
            throw ParameterError("tolerance for '" + key + "' must be finite and non-negative");
    for (double eps : cfg.epsilon)
        if (!(eps > 0.0 && eps <= 0.3))
            throw ParameterError("epsilon must lie in (0, 0.3]");
    return {ids.begin(), ids.end()};
}

std::vector<RelationCertificate> run_trial(const std::string& suite, const SuiteConfig& cfg, std::uint64_t trial)
{
    const Suite& s = find_suite(suite);
    CounterRng rng = CounterRng::substream(cfg.seed ^ hash_id(suite), trial);
    TrialContext ctx{cfg, s.info, trial, rng};
    std::vector<RelationCertificate> certs;
    try {
        certs = s.run(ctx);
    } catch (const Error& e) {
        RelationCertificate c;
        c.relation = suite + ".error";
        c.lhs = c.rhs = c.slack = std::numeric_limits<double>::quiet_NaN();
        c.note = std::string("error: ") + e.what();
        certs.push_back(std::move(c));
    }
    for (auto& c : certs) {
        c.suite = suite;
        c.trial = trial;
        apply_tolerance(c, cfg);
    }
    return certs;
}

std::size_t worker_count()
{
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QMUR_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            n = static_cast<std::size_t>(v);
    }
    return n;
}

std::size_t SuiteRun::failures() const
{
    return std::accumulate(summaries.begin(), summaries.end(), std::size_t{0},
                           [](std::size_t acc, const SuiteSummary& s) { return acc + s.failures; });
}

SuiteRun run_suites(const SuiteConfig& cfg)
{
    const auto ids = resolve_suites(cfg);
    struct Job {
        std::size_t suite;
        std::uint64_t trial;
    };
    std::vector<Job> jobs;
    for (std::size_t k = 0; k < ids.size(); ++k)
        for (std::uint64_t t = 0; t < cfg.trials; ++t)
            jobs.push_back({k, t});

    std::vector<std::vector<RelationCertificate>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            try {
                results[j] = run_trial(ids[jobs[j].suite], cfg, jobs[j].trial);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    const std::size_t n_workers = std::min(worker_count(), jobs.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < n_workers; ++w)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);

    // Jobs are laid out by suite id then trial, so concatenation is already sorted.
    SuiteRun run;
    for (std::size_t k = 0; k < ids.size(); ++k) {
        SuiteSummary sum;
        sum.suite = ids[k];
        sum.trials = cfg.trials;
        sum.seed = cfg.seed;
        sum.min_slack = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t j = k * cfg.trials; j < (k + 1) * cfg.trials; ++j)
            for (auto& c : results[j]) {
                ++sum.certificates;
                if (c.status == CertificateStatus::skipped)
                    ++sum.skipped;
                else {
                    if (!c.pass)
                        ++sum.failures;
                    if (!std::isnan(c.slack) && !(c.slack >= sum.min_slack))
                        sum.min_slack = c.slack;
                }
                run.certificates.push_back(std::move(c));
            }
        run.summaries.push_back(sum);
    }
    return run;
}

Json config_to_json(const SuiteConfig& cfg)
{
    Json tol = Json::object();
    for (const auto& [k, v] : cfg.tolerance)
        tol[k] = json_real(v);
    Json eps = Json::array();
    for (double e : cfg.epsilon)
        eps.push_back(json_real(e));
    return {{"suites", cfg.suites},
            {"trials", cfg.trials},
            {"dims", cfg.dims ? Json(cfg.dims->to_string()) : Json(nullptr)},
            {"seed", cfg.seed},
            {"tolerance", tol},
            {"epsilon", eps},
            {"out", cfg.out},
            {"format", to_string(cfg.format)}};
}

Json report_json(const SuiteConfig& cfg, const SuiteRun& run)
{
    Json summary = Json::array();
    for (const auto& s : run.summaries)
        summary.push_back({{"suite", s.suite},
                           {"trials", s.trials},
                           {"certificates", s.certificates},
                           {"failures", s.failures},
                           {"skipped", s.skipped},
                           {"min_slack", json_real(s.min_slack)},
                           {"seed", s.seed}});
    Json certs = Json::array();
    for (const auto& c : run.certificates)
        certs.push_back(to_json(c));
    return {{"header", {{"generator", "qmur"}, {"timestamp", utc_timestamp()}}},
            {"config", config_to_json(cfg)},
            {"summary", std::move(summary)},
            {"certificates", std::move(certs)}};
}

std::string render_report(const SuiteConfig& cfg, const SuiteRun& run)
{
    switch (cfg.format) {
    case ReportFormat::json:
        return report_json(cfg, run).dump(2) + "\n";
    case ReportFormat::csv:
        return certificates_csv(run.certificates);
    case ReportFormat::text: {
        std::string out;
        for (const auto& s : run.summaries) {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%-22s trials=%zu certificates=%zu failures=%zu skipped=%zu min_slack=%.3g\n",
                          s.suite.c_str(), s.trials, s.certificates, s.failures, s.skipped, s.min_slack);
            out += buf;
        }
        return out + "\n" + certificates_text(run.certificates);
    }
    }
    return {};
}

} // namespace qmur
