#pragma once
// Seeded ensemble sweeps. Trial t of suite id draws from
// CounterRng::substream(seed ^ hash(id), t), so results do not depend on the
// number of workers or the order in which trials finish.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmur/certificate.hpp"
#include "qmur/io.hpp"
#include "qmur/linalg.hpp"

namespace qmur {

struct SuiteConfig {
    std::vector<std::string> suites;
    std::size_t trials = 100;
    /// Overrides each suite's default profile when its arity matches.
    std::optional<DimensionProfile> dims;
    std::uint64_t seed = 0;
    /// Keyed by relation id or by suite id; the relation id wins.
    std::map<std::string, double> tolerance;
    /// Empty selects each suite's default list.
    std::vector<double> epsilon;
    std::string out;
    ReportFormat format = ReportFormat::json;
};

struct SuiteInfo {
    std::string id;
    std::string description;
    /// Number of tensor factors a --dims override must have; 0 accepts any.
    std::size_t arity = 2;
};

const std::vector<SuiteInfo>& suite_registry();
bool is_known_suite(const std::string& id);
/// "all" expands to the whole registry; duplicates are dropped. Throws
/// ParameterError on an unknown id or trials == 0.
std::vector<std::string> resolve_suites(const SuiteConfig& cfg);

struct SuiteSummary {
    std::string suite;
    std::size_t trials = 0;
    std::size_t certificates = 0;
    std::size_t failures = 0;
    std::size_t skipped = 0;
    /// Over passed and failed certificates; NaN when there are none.
    double min_slack = 0;
    std::uint64_t seed = 0;
};

struct SuiteRun {
    /// Sorted by suite id, then trial.
    std::vector<RelationCertificate> certificates;
    std::vector<SuiteSummary> summaries;
    std::size_t failures() const;
};

/// Certificates for one trial of one suite.
std::vector<RelationCertificate> run_trial(const std::string& suite, const SuiteConfig& cfg, std::uint64_t trial);

SuiteRun run_suites(const SuiteConfig& cfg);

/// QMUR_THREADS if set and positive, else the hardware concurrency.
std::size_t worker_count();

Json config_to_json(const SuiteConfig& cfg);
/// {"header": {timestamp}, "config", "summary", "certificates"}. Everything
/// outside "header" is a function of the config alone.
Json report_json(const SuiteConfig& cfg, const SuiteRun& run);
std::string render_report(const SuiteConfig& cfg, const SuiteRun& run);

} // namespace qmur
