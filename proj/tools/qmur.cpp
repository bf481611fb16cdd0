#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmur/entropies.hpp"
#include "qmur/game.hpp"
#include "qmur/io.hpp"
#include "qmur/relations.hpp"
#include "qmur/smoothing.hpp"
#include "qmur/suites.hpp"

using namespace qmur;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, sep);)
        if (!item.empty())
            out.push_back(item);
    return out;
}

double parse_real(const std::string& s, const char* what)
{
    std::size_t used = 0;
    double x = 0;
    try {
        x = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw ParameterError(std::string(what) + ": '" + s + "' is not a number");
    return x;
}

Subsystems parse_subsystems(const std::string& s)
{
    Subsystems out;
    for (const auto& item : split(s, ','))
        out.push_back(static_cast<std::size_t>(parse_real(item, "subsystem index")));
    return out;
}

/// Writes to `out` atomically, or to stdout when empty.
void emit(const std::string& out, const std::string& contents)
{
    if (out.empty())
        std::cout << contents << std::flush;
    else
        write_atomic(out, contents);
}

struct VerifyArgs {
    std::vector<std::string> suites;
    std::size_t trials = 100;
    std::string dims;
    std::uint64_t seed = 0;
    std::vector<std::string> tolerance;
    std::vector<std::string> epsilon;
    std::string out;
    std::string format = "json";
};

int cmd_verify(const VerifyArgs& a)
{
    SuiteConfig cfg;
    for (const auto& s : a.suites)
        for (const auto& id : split(s, ','))
            cfg.suites.push_back(id);
    cfg.trials = a.trials;
    if (!a.dims.empty())
        cfg.dims = DimensionProfile::parse(a.dims);
    cfg.seed = a.seed;
    for (const auto& t : a.tolerance) {
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            // A bare value applies to every selected suite.
            const double v = parse_real(t, "tolerance");
            for (const auto& id : resolve_suites(cfg))
                cfg.tolerance[id] = v;
        } else {
            cfg.tolerance[t.substr(0, eq)] = parse_real(t.substr(eq + 1), "tolerance");
        }
    }
    for (const auto& e : a.epsilon)
        for (const auto& item : split(e, ','))
            cfg.epsilon.push_back(parse_real(item, "epsilon"));
    cfg.out = a.out;
    cfg.format = report_format_from_string(a.format);
    resolve_suites(cfg);

    const SuiteRun run = run_suites(cfg);
    emit(cfg.out, render_report(cfg, run));
    for (const auto& s : run.summaries)
        std::fprintf(stderr, "%s: %zu certificates, %zu failures, %zu skipped\n", s.suite.c_str(), s.certificates,
                     s.failures, s.skipped);
    if (run.failures() == 0)
        return kExitOk;
    for (const auto& c : run.certificates)
        if (c.status == CertificateStatus::failed)
            std::fprintf(stderr, "FAILED %s trial %llu relation %s digest %s slack %.3g %s\n", c.suite.c_str(),
                         static_cast<unsigned long long>(c.trial), c.relation.c_str(), c.digest.c_str(), c.slack,
                         c.note.c_str());
    return kExitFailure;
}

struct EntropyArgs {
    std::string state;
    std::string measure;
    std::string basis;
    std::string sigma;
    std::string target = "0";
    std::string memory = "1";
    std::optional<double> epsilon;
};

double require_epsilon(const EntropyArgs& a)
{
    if (!a.epsilon)
        throw ParameterError("--epsilon is required for " + a.measure);
    return *a.epsilon;
}

EntropyValue evaluate(const EntropyArgs& a)
{
    const DensityOperator rho = read_state(a.state);
    const Subsystems target = parse_subsystems(a.target);
    const Subsystems memory = parse_subsystems(a.memory);
    const std::string& m = a.measure;
    if (m == "vn")
        return h_vn(rho);
    if (m == "vn-cond")
        return h_vn_cond(rho, target, memory);
    if (m == "measured-cond") {
        if (a.basis.empty())
            throw ParameterError("--basis is required for measured-cond");
        if (target.size() != 1)
            throw ParameterError("measured-cond needs a single target subsystem");
        return h_measured_cond(rho, MeasurementChannel{read_basis(a.basis), target[0]}, memory);
    }
    if (m == "hmin")
        return h_min_uncond(rho);
    if (m == "hmax")
        return h_max_uncond(rho);
    if (m == "hneginf")
        return h_neg_inf(rho);
    if (m == "hmin-cond")
        return h_min_cond(rho, target, memory).value;
    if (m == "hmin-cond-fixed") {
        if (a.sigma.empty())
            throw ParameterError("--sigma is required for hmin-cond-fixed");
        return h_min_cond_fixed(rho, read_state(a.sigma), target, memory);
    }
    if (m == "hmax-smooth")
        return optimal_hmax_spectrum(eigenvalues_hermitian(rho.matrix()), require_epsilon(a)).value;
    if (m == "hmax-smooth-oracle")
        return smooth_hmax_oracle(eigenvalues_hermitian(rho.matrix()), require_epsilon(a));
    if (m == "hmax-smooth-lower")
        return smooth_budget_operator_hmax(rho, require_epsilon(a)).value;
    if (m == "hmin-smooth")
        return smooth_hmin_operator(rho, require_epsilon(a)).value;
    throw ParameterError("unknown measure '" + m + "'");
}

int cmd_entropy(const EntropyArgs& a)
{
    std::cout << evaluate(a).format(9) << "\n";
    return kExitOk;
}

struct GameArgs {
    std::string strategy = "mes";
    std::string dims = "2";
    double p = 1.0;
    std::string state;
    std::string r;
    std::string s;
    bool qkd = false;
    std::size_t trend = 0;
    double epsilon = 0.05;
    std::string out;
    std::string format = "json";
};

int cmd_game(const GameArgs& a)
{
    GameScenario sc;
    sc.strategy = strategy_from_string(a.strategy);
    sc.dim = DimensionProfile::parse(a.dims)[0];
    sc.p = a.p;
    if (!a.state.empty())
        sc.state = read_state(a.state);
    if (!a.r.empty())
        sc.r = read_basis(a.r);
    if (!a.s.empty())
        sc.s = read_basis(a.s);
    const auto format = report_format_from_string(a.format);
    if (format == ReportFormat::csv)
        throw ParameterError("game reports are json or text");

    const DensityOperator rho = scenario_state(sc);
    const std::size_t d = rho.profile()[0];
    const MeasurementBasis r = sc.r ? *sc.r : MeasurementBasis::computational(d);
    const MeasurementBasis s = sc.s ? *sc.s : fourier_basis(d);
    sc.r = r;
    sc.s = s;
    const GameReport report = run_game(sc);
    std::vector<QkdPoint> qkd;
    if (a.qkd) {
        if (rho.profile()[1] != d)
            throw DimensionError("the QKD sweep needs d_A = d_B");
        qkd = qkd_werner_sweep(d, r, s);
    }
    std::vector<TrendRow> trend;
    if (a.trend > 0)
        trend = iid_trend(rho, r, s, a.trend, a.epsilon);

    std::string text;
    if (format == ReportFormat::json) {
        Json j{{"header", {{"generator", "qmur"}, {"timestamp", utc_timestamp()}}},
               {"config",
                {{"strategy", a.strategy},
                 {"dims", a.dims},
                 {"p", a.p},
                 {"state", a.state},
                 {"r", r.label()},
                 {"s", s.label()},
                 {"qkd", a.qkd},
                 {"trend", a.trend},
                 {"epsilon", a.epsilon}}},
               {"game", to_json(report)}};
        if (a.qkd) {
            Json rows = Json::array();
            for (const auto& q : qkd)
                rows.push_back(to_json(q));
            j["qkd"] = std::move(rows);
        }
        if (a.trend > 0) {
            Json rows = Json::array();
            for (const auto& t : trend)
                rows.push_back(to_json(t));
            j["trend"] = std::move(rows);
        }
        text = j.dump(2) + "\n";
    } else {
        text = game_text(report);
        if (a.qkd)
            text += "\n" + qkd_text(qkd);
        if (a.trend > 0)
            text += "\n" + trend_text(trend);
    }
    emit(a.out, text);
    for (const auto& q : qkd)
        if (!q.pass)
            return kExitFailure;
    return kExitOk;
}

struct TraceArgs {
    std::string state;
    double epsilon = 0.05;
    std::string r;
    std::string s;
    std::string out;
    std::string format = "json";
};

int cmd_smooth_trace(const TraceArgs& a)
{
    const DensityOperator rho = read_state(a.state);
    if (rho.profile().size() != 2)
        throw DimensionError("smooth-trace needs a state on [d_A, d_B]");
    const std::size_t d = rho.profile()[0];
    const MeasurementBasis r = a.r.empty() ? MeasurementBasis::computational(d) : read_basis(a.r);
    const MeasurementBasis s = a.s.empty() ? fourier_basis(d) : read_basis(a.s);
    const auto format = report_format_from_string(a.format);
    auto certs = check_smooth_proof_trace(r, s, rho, a.epsilon);
    for (auto& c : certs)
        c.suite = "smooth-trace";

    std::string text;
    if (format == ReportFormat::json) {
        Json list = Json::array();
        for (const auto& c : certs)
            list.push_back(to_json(c));
        text = Json{{"header", {{"generator", "qmur"}, {"timestamp", utc_timestamp()}}},
                    {"config", {{"state", a.state}, {"epsilon", a.epsilon}, {"r", r.label()}, {"s", s.label()}}},
                    {"certificates", std::move(list)}}
                   .dump(2)
               + "\n";
    } else if (format == ReportFormat::csv) {
        text = certificates_csv(certs);
    } else {
        text = certificates_text(certs);
    }
    emit(a.out, text);
    for (const auto& c : certs)
        if (c.status == CertificateStatus::failed)
            return kExitFailure;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical certificates for entropic uncertainty relations with quantum memory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "qmur 0.1.0");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run seeded certificate suites");
    verify->add_option("--suite", va.suites, "Suite id(s), comma separated or repeated; 'all' for every suite")
        ->required();
    verify->add_option("--trials", va.trials, "Trials per suite")->check(CLI::PositiveNumber);
    verify->add_option("--dims", va.dims, "Profile override, e.g. 2x3");
    verify->add_option("--seed", va.seed, "64-bit seed");
    verify->add_option("--tolerance", va.tolerance, "VALUE for all selected suites, or ID=VALUE per suite or relation");
    verify->add_option("--epsilon", va.epsilon, "Smoothing parameters, comma separated or repeated");
    verify->add_option("--out", va.out, "Report path (stdout when omitted)");
    verify->add_option("--format", va.format, "json, csv or text");

    EntropyArgs ea;
    auto* entropy = app.add_subcommand("entropy", "Evaluate one entropy of a state file");
    entropy->add_option("--state", ea.state, "State file")->required();
    entropy->add_option("--measure", ea.measure,
                        "vn, vn-cond, measured-cond, hmin, hmax, hneginf, hmin-cond, hmin-cond-fixed, hmax-smooth, "
                        "hmax-smooth-oracle, hmax-smooth-lower, hmin-smooth")
        ->required();
    entropy->add_option("--basis", ea.basis, "Basis file for measured-cond");
    entropy->add_option("--sigma", ea.sigma, "Memory state file for hmin-cond-fixed");
    entropy->add_option("--target", ea.target, "Target subsystems, comma separated");
    entropy->add_option("--memory", ea.memory, "Memory subsystems, comma separated (may be empty)");
    entropy->add_option("--epsilon", ea.epsilon, "Smoothing parameter");

    GameArgs ga;
    auto* game = app.add_subcommand("game", "Play the uncertainty game");
    game->add_option("--strategy", ga.strategy, "mes, product, werner or custom");
    game->add_option("--dims", ga.dims, "Local dimension d");
    game->add_option("--p", ga.p, "Werner weight");
    game->add_option("--state", ga.state, "State file for the custom strategy");
    game->add_option("--r", ga.r, "Basis file for R");
    game->add_option("--s", ga.s, "Basis file for S");
    game->add_flag("--qkd", ga.qkd, "Append the Werner eavesdropper sweep");
    game->add_option("--trend", ga.trend, "Append the per-copy table for n = 1..N (N <= 3)");
    game->add_option("--epsilon", ga.epsilon, "Smoothing parameter for the trend table");
    game->add_option("--out", ga.out, "Report path (stdout when omitted)");
    game->add_option("--format", ga.format, "json or text");

    TraceArgs ta;
    auto* trace = app.add_subcommand("smooth-trace", "Certify each step of the smoothing argument on a state");
    trace->add_option("--state", ta.state, "State file on [d_A, d_B]")->required();
    trace->add_option("--epsilon", ta.epsilon, "Smoothing parameter in (0, 0.3]");
    trace->add_option("--r", ta.r, "Basis file for R");
    trace->add_option("--s", ta.s, "Basis file for S");
    trace->add_option("--out", ta.out, "Report path (stdout when omitted)");
    trace->add_option("--format", ta.format, "json, csv or text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (verify->parsed())
            return cmd_verify(va);
        if (entropy->parsed())
            return cmd_entropy(ea);
        if (game->parsed())
            return cmd_game(ga);
        if (trace->parsed())
            return cmd_smooth_trace(ta);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "qmur: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
