#include <doctest.h>

#include <cstdlib>

#include "qmur/suites.hpp"

using namespace qmur;

namespace {

SuiteConfig small(std::string id, std::size_t trials = 4)
{
    SuiteConfig cfg;
    cfg.suites = {std::move(id)};
    cfg.trials = trials;
    cfg.seed = 99;
    return cfg;
}

} // namespace

TEST_CASE("suite ids resolve and unknown ids are rejected")
{
    CHECK(is_known_suite("main-theorem"));
    CHECK(is_known_suite("all"));
    CHECK_FALSE(is_known_suite("nosuch"));
    CHECK_THROWS_AS(resolve_suites(small("nosuch")), ParameterError);
    CHECK_THROWS_AS(resolve_suites(small("main-theorem", 0)), ParameterError);
    auto cfg = small("all");
    CHECK(resolve_suites(cfg).size() == suite_registry().size());
    cfg.suites = {"omega", "omega", "game"};
    CHECK(resolve_suites(cfg) == std::vector<std::string>{"game", "omega"});
    cfg.epsilon = {0.5};
    CHECK_THROWS_AS(resolve_suites(cfg), ParameterError);
}

TEST_CASE("results do not depend on the worker count")
{
    auto cfg = small("main-theorem", 9);
    cfg.suites.push_back("corollary");
    setenv("QMUR_THREADS", "1", 1);
    const auto a = run_suites(cfg);
    setenv("QMUR_THREADS", "3", 1);
    const auto b = run_suites(cfg);
    unsetenv("QMUR_THREADS");
    auto strip = [&](const SuiteRun& r) {
        Json j = report_json(cfg, r);
        j.erase("header");
        return j.dump();
    };
    CHECK(strip(a) == strip(b));
    REQUIRE(a.certificates.size() == 9 + 27);
    CHECK(a.certificates.front().suite == "corollary");
    for (std::size_t k = 1; k < a.certificates.size(); ++k) {
        const auto& p = a.certificates[k - 1];
        const auto& c = a.certificates[k];
        CHECK((p.suite < c.suite || (p.suite == c.suite && p.trial <= c.trial)));
    }
    CHECK(a.failures() == 0);
}

TEST_CASE("QMUR_THREADS caps the worker count")
{
    setenv("QMUR_THREADS", "2", 1);
    CHECK(worker_count() == 2);
    setenv("QMUR_THREADS", "junk", 1);
    CHECK(worker_count() >= 1);
    unsetenv("QMUR_THREADS");
}

TEST_CASE("a trial is reproducible on its own")
{
    const auto cfg = small("omega", 5);
    const auto run = run_suites(cfg);
    const auto again = run_trial("omega", cfg, 3);
    std::vector<RelationCertificate> from_run;
    for (const auto& c : run.certificates)
        if (c.trial == 3)
            from_run.push_back(c);
    REQUIRE(from_run.size() == again.size());
    for (std::size_t k = 0; k < again.size(); ++k)
        CHECK(from_run[k].lhs == again[k].lhs);
}

TEST_CASE("tolerance overrides re-evaluate pass and fail")
{
    auto cfg = small("maassen-uffink", 3);
    cfg.tolerance["maassen_uffink"] = 0.0;
    const auto strict = run_suites(cfg);
    for (const auto& c : strict.certificates)
        CHECK(c.tolerance == 0.0);
    cfg.tolerance.clear();
    cfg.tolerance["maassen-uffink"] = -10.0;
    CHECK_THROWS_AS(run_suites(cfg), ParameterError);
}

TEST_CASE("summary counts certificates and records the seed")
{
    const auto cfg = small("distance-lemmas", 3);
    const auto run = run_suites(cfg);
    REQUIRE(run.summaries.size() == 1);
    CHECK(run.summaries[0].certificates == 18);
    CHECK(run.summaries[0].seed == 99);
    CHECK(run.summaries[0].failures == 0);
    const auto j = report_json(cfg, run);
    CHECK(j.contains("header"));
    CHECK(j["config"]["trials"] == 3);
    CHECK(j["certificates"].size() == 18);
}

TEST_CASE("every registered suite runs one trial cleanly")
{
    for (const auto& info : suite_registry()) {
        const auto certs = run_trial(info.id, small(info.id), 0);
        CHECK_MESSAGE(!certs.empty(), info.id);
        for (const auto& c : certs)
            CHECK_MESSAGE(c.status != CertificateStatus::failed, info.id << " " << c.relation << " " << c.note);
    }
}
