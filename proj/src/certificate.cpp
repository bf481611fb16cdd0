#include "qmur/certificate.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

namespace qmur {

namespace {

/// lhs − rhs with ∞ − ∞ of equal sign taken as 0.
double difference(double lhs, double rhs)
{
    if (std::isinf(lhs) && std::isinf(rhs) && (lhs > 0) == (rhs > 0))
        return 0.0;
    return lhs - rhs;
}

RelationCertificate base(std::string relation, double lhs, double rhs, double tolerance, std::string digest,
                         std::vector<Term> terms)
{
    RelationCertificate c;
    c.relation = std::move(relation);
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = difference(lhs, rhs);
    c.tolerance = tolerance;
    c.digest = std::move(digest);
    c.terms = std::move(terms);
    return c;
}

class Fnv1a {
public:
    void add(const void* data, std::size_t size)
    {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < size; ++i) {
            hash_ ^= p[i];
            hash_ *= 0x100000001b3ULL;
        }
    }
    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

} // namespace

RelationCertificate certify_inequality(std::string relation, double lhs, double rhs, double tolerance,
                                       std::string digest, std::vector<Term> terms)
{
    auto c = base(std::move(relation), lhs, rhs, tolerance, std::move(digest), std::move(terms));
    c.kind = CertificateKind::inequality;
    c.pass = c.slack >= -tolerance;
    c.status = c.pass ? CertificateStatus::passed : CertificateStatus::failed;
    return c;
}

RelationCertificate certify_equality(std::string relation, double lhs, double rhs, double tolerance,
                                     std::string digest, std::vector<Term> terms)
{
    auto c = base(std::move(relation), lhs, rhs, tolerance, std::move(digest), std::move(terms));
    c.kind = CertificateKind::equality;
    c.pass = std::abs(c.slack) <= tolerance;
    c.status = c.pass ? CertificateStatus::passed : CertificateStatus::failed;
    return c;
}

RelationCertificate certify_skipped(std::string relation, std::string reason, std::string digest,
                                    std::vector<Term> terms)
{
    RelationCertificate c;
    c.relation = std::move(relation);
    c.digest = std::move(digest);
    c.terms = std::move(terms);
    c.status = CertificateStatus::skipped;
    c.note = "skipped: " + reason;
    c.lhs = c.rhs = c.slack = std::nan("");
    return c;
}

std::string digest(const Matrix& m, const DimensionProfile& profile)
{
    Fnv1a h;
    for (auto f : profile.factors()) {
        const auto v = static_cast<std::uint64_t>(f);
        h.add(&v, sizeof v);
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const double parts[2] = {m(i, j).real(), m(i, j).imag()};
            h.add(parts, sizeof parts);
        }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h.value()));
    return buf;
}

std::string digest(const DensityOperator& rho)
{
    return digest(rho.matrix(), rho.profile());
}

std::string to_string(CertificateStatus status)
{
    switch (status) {
    case CertificateStatus::passed:
        return "passed";
    case CertificateStatus::failed:
        return "failed";
    case CertificateStatus::skipped:
        return "skipped";
    }
    return "failed";
}

std::string to_string(CertificateKind kind)
{
    return kind == CertificateKind::equality ? "equality" : "inequality";
}

} // namespace qmur
