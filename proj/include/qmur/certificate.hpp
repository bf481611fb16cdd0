#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmur/linalg.hpp"
#include "qmur/states.hpp"

namespace qmur {

enum class CertificateKind { inequality, equality };
enum class CertificateStatus { passed, failed, skipped };

struct Term {
    std::string name;
    /// May be −∞ for entropies of vanishing operators.
    double value = 0;
};

/// One checked instance of a relation, oriented so that it asserts lhs ≥ rhs
/// (inequality) or lhs = rhs (equality).
///
/// inequality: pass ⟺ slack ≥ −tolerance
/// equality:   pass ⟺ |slack| ≤ tolerance
/// skipped:    pass is false and `note` says why.
struct RelationCertificate {
    std::string relation;
    double lhs = 0;
    double rhs = 0;
    double slack = 0;
    double tolerance = 0;
    bool pass = false;
    CertificateKind kind = CertificateKind::inequality;
    CertificateStatus status = CertificateStatus::failed;
    std::string digest;
    std::vector<Term> terms;
    std::string note;
    std::string suite;
    std::uint64_t trial = 0;
};

RelationCertificate certify_inequality(std::string relation, double lhs, double rhs, double tolerance,
                                       std::string digest, std::vector<Term> terms = {});
RelationCertificate certify_equality(std::string relation, double lhs, double rhs, double tolerance,
                                     std::string digest, std::vector<Term> terms = {});
RelationCertificate certify_skipped(std::string relation, std::string reason, std::string digest,
                                    std::vector<Term> terms = {});

/// 16 hex digits of FNV-1a 64 over the profile and the matrix entries.
std::string digest(const Matrix& m, const DimensionProfile& profile);
std::string digest(const DensityOperator& rho);

std::string to_string(CertificateStatus status);
std::string to_string(CertificateKind kind);

} // namespace qmur
