#include "qmur/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <unistd.h>

namespace qmur {

namespace {

std::string fmt_real(double x, int precision = 17)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
}

std::string fmt_fixed(double x, int decimals)
{
    if (!std::isfinite(x))
        return fmt_real(x);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    std::string out = buf;
    // A value that rounds to zero prints without a sign.
    if (out[0] == '-' && out.find_first_not_of("-0.") == std::string::npos)
        out.erase(0, 1);
    return out;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

/// Left-aligned first column, right-aligned rest.
std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> width(header.size());
    for (std::size_t k = 0; k < header.size(); ++k)
        width[k] = header[k].size();
    for (const auto& row : rows)
        for (std::size_t k = 0; k < row.size(); ++k)
            width[k] = std::max(width[k], row[k].size());
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k > 0)
                out << "  ";
            const auto w = static_cast<int>(width[k]);
            if (k == 0)
                out << std::left << std::setw(w) << row[k];
            else
                out << std::right << std::setw(w) << row[k];
        }
        out << '\n';
    };
    emit(header);
    for (const auto& row : rows)
        emit(row);
    return out.str();
}

Json complex_rows(const Matrix& m)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Complex complex_from_json(const Json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw FormatError("complex entry must be a [re, im] pair");
    const double re = real_from_json(j[0]);
    const double im = real_from_json(j[1]);
    if (!std::isfinite(re) || !std::isfinite(im))
        throw FormatError("complex entry must be finite");
    return {re, im};
}

/// rows x cols matrix of [re, im] pairs; rows given, cols = rows unless specified.
Matrix complex_matrix(const Json& j, std::size_t rows, std::size_t cols, const char* what)
{
    if (!j.is_array() || j.size() != rows)
        throw FormatError(std::string(what) + ": expected " + std::to_string(rows) + " rows");
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw FormatError(std::string(what) + ": row " + std::to_string(i) + " must have "
                              + std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(row[k]);
    }
    return m;
}

std::size_t positive_count(const Json& j, const char* what)
{
    if (!j.is_number_integer() || j.get<long long>() < 1)
        throw FormatError(std::string(what) + " must be a positive integer");
    return static_cast<std::size_t>(j.get<long long>());
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw FormatError(std::string("missing field '") + key + "'");
    return j.at(key);
}

Json terms_json(const std::vector<Term>& terms)
{
    Json out = Json::array();
    for (const auto& t : terms)
        out.push_back({{"name", t.name}, {"value", json_real(t.value)}});
    return out;
}

} // namespace

ReportFormat report_format_from_string(const std::string& name)
{
    if (name == "json")
        return ReportFormat::json;
    if (name == "csv")
        return ReportFormat::csv;
    if (name == "text")
        return ReportFormat::text;
    throw ParameterError("unknown format '" + name + "' (expected json, csv or text)");
}

std::string to_string(ReportFormat format)
{
    switch (format) {
    case ReportFormat::json:
        return "json";
    case ReportFormat::csv:
        return "csv";
    case ReportFormat::text:
        return "text";
    }
    return "json";
}

Json json_real(double x)
{
    if (std::isfinite(x))
        return x;
    return fmt_real(x);
}

double real_from_json(const Json& j)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        if (s == "nan")
            return std::numeric_limits<double>::quiet_NaN();
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size())
            throw FormatError("'" + s + "' is not a decimal real");
        return x;
    }
    throw FormatError("expected a real number");
}

Json state_to_json(const DensityOperator& rho)
{
    return {{"profile", rho.profile().factors()},
            {"normalized", rho.is_normalized()},
            {"matrix", complex_rows(rho.matrix())}};
}

DensityOperator state_from_json(const Json& j)
{
    const Json& prof = field(j, "profile");
    if (!prof.is_array() || prof.empty())
        throw FormatError("profile must be a non-empty array of dimensions");
    std::vector<std::size_t> factors;
    std::size_t total = 1;
    for (const auto& f : prof) {
        factors.push_back(positive_count(f, "profile entry"));
        total *= factors.back();
        if (total > 4096)
            throw FormatError("state dimension exceeds 4096");
    }
    bool normalized = true;
    if (j.contains("normalized")) {
        if (!j.at("normalized").is_boolean())
            throw FormatError("normalized must be a boolean");
        normalized = j.at("normalized").get<bool>();
    }
    Matrix m = complex_matrix(field(j, "matrix"), total, total, "matrix");
    try {
        return DensityOperator(std::move(m), DimensionProfile(std::move(factors)),
                               normalized ? Normalization::normalized : Normalization::subnormalized);
    } catch (const Error& e) {
        throw FormatError(std::string("invalid state: ") + e.what());
    }
}

DensityOperator read_state(const std::filesystem::path& path)
{
    try {
        return state_from_json(read_json_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_state(const std::filesystem::path& path, const DensityOperator& rho)
{
    write_atomic(path, state_to_json(rho).dump(2) + "\n");
}

Json basis_to_json(const MeasurementBasis& basis)
{
    // One vector per entry: the columns of the basis matrix.
    return {{"dimension", basis.dimension()},
            {"vectors", complex_rows(basis.vectors().transpose())},
            {"label", basis.label()}};
}

MeasurementBasis basis_from_json(const Json& j)
{
    const std::size_t d = positive_count(field(j, "dimension"), "dimension");
    if (d > 4096)
        throw FormatError("basis dimension exceeds 4096");
    const Matrix rows = complex_matrix(field(j, "vectors"), d, d, "vectors");
    std::string label = "custom";
    if (j.contains("label")) {
        if (!j.at("label").is_string())
            throw FormatError("label must be a string");
        label = j.at("label").get<std::string>();
    }
    try {
        return MeasurementBasis(rows.transpose(), std::move(label));
    } catch (const Error& e) {
        throw FormatError(std::string("invalid basis: ") + e.what());
    }
}

MeasurementBasis read_basis(const std::filesystem::path& path)
{
    try {
        return basis_from_json(read_json_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_basis(const std::filesystem::path& path, const MeasurementBasis& basis)
{
    write_atomic(path, basis_to_json(basis).dump(2) + "\n");
}

Json to_json(const RelationCertificate& c)
{
    Json j;
    j["suite"] = c.suite;
    j["trial"] = c.trial;
    j["relation"] = c.relation;
    j["kind"] = to_string(c.kind);
    j["status"] = to_string(c.status);
    j["pass"] = c.pass;
    j["lhs"] = json_real(c.lhs);
    j["rhs"] = json_real(c.rhs);
    j["slack"] = json_real(c.slack);
    j["tolerance"] = json_real(c.tolerance);
    j["digest"] = c.digest;
    if (!c.note.empty())
        j["note"] = c.note;
    j["terms"] = terms_json(c.terms);
    return j;
}

Json to_json(const GameReport& r)
{
    return {{"strategy", r.strategy},
            {"p", json_real(r.p)},
            {"profile", r.profile.factors()},
            {"r", r.r_label},
            {"s", r.s_label},
            {"c", json_real(r.c)},
            {"H(R|B)", json_real(r.h_r_b)},
            {"H(S|B)", json_real(r.h_s_b)},
            {"H(A|B)", json_real(r.h_a_b)},
            {"classical_bound", json_real(r.classical_bound)},
            {"memory_bound", json_real(r.memory_bound)},
            {"violation", r.violation},
            {"tightness_gap", json_real(r.tightness_gap)},
            {"digest", r.digest}};
}

Json to_json(const QkdPoint& p)
{
    return {{"p", json_real(p.p)},
            {"H(S|B)", json_real(p.h_s_b)},
            {"log2(1/c)", json_real(p.log2_inv_c)},
            {"bound", json_real(p.bound)},
            {"H(R|E)", json_real(p.h_r_e)},
            {"slack", json_real(p.slack)},
            {"pass", p.pass}};
}

Json to_json(const TrendRow& r)
{
    return {{"n", r.n},
            {"dim", r.dim},
            {"c_n", json_real(r.c_n)},
            {"c^n", json_real(r.c_pow_n)},
            {"log2(1/c)/n", json_real(r.log2_inv_c)},
            {"H_min(R|B)/n", json_real(r.h_min_r_b)},
            {"H_-inf(SB)/n", json_real(r.h_neginf_s_b)},
            {"H_min(AB)/n", json_real(r.h_min_a_b)},
            {"H_min^eps(AB)/n", json_real(r.h_min_eps_a_b)},
            {"slack/n", json_real(r.slack)}};
}

std::string certificates_csv(const std::vector<RelationCertificate>& certs)
{
    std::string out = "suite,trial,relation,kind,status,lhs,rhs,slack,tolerance,digest,note\n";
    for (const auto& c : certs) {
        out += csv_field(c.suite) + ',' + std::to_string(c.trial) + ',' + csv_field(c.relation) + ','
               + to_string(c.kind) + ',' + to_string(c.status) + ',' + fmt_real(c.lhs) + ',' + fmt_real(c.rhs) + ','
               + fmt_real(c.slack) + ',' + fmt_real(c.tolerance) + ',' + c.digest + ',' + csv_field(c.note) + '\n';
    }
    return out;
}

std::string certificates_text(const std::vector<RelationCertificate>& certs)
{
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : certs)
        rows.push_back({c.relation, c.suite, std::to_string(c.trial), fmt_real(c.lhs, 9), fmt_real(c.rhs, 9),
                        fmt_real(c.slack, 3), fmt_real(c.tolerance, 1), to_string(c.status)});
    return table({"relation", "suite", "trial", "lhs", "rhs", "slack", "tol", "status"}, rows);
}

std::string game_text(const GameReport& r)
{
    std::vector<std::vector<std::string>> rows{
        {"strategy", r.strategy},
        {"profile", r.profile.to_string()},
        {"bases", r.r_label + " / " + r.s_label},
        {"c", fmt_fixed(r.c, 9)},
        {"H(R|B)", fmt_fixed(r.h_r_b, 9)},
        {"H(S|B)", fmt_fixed(r.h_s_b, 9)},
        {"H(R|B)+H(S|B)", fmt_fixed(r.h_r_b + r.h_s_b, 9)},
        {"classical bound", fmt_fixed(r.classical_bound, 9)},
        {"memory bound", fmt_fixed(r.memory_bound, 9)},
        {"tightness gap", fmt_fixed(r.tightness_gap, 9)},
        {"violation", r.violation ? "yes" : "no"}};
    if (!std::isnan(r.p))
        rows.insert(rows.begin() + 1, {"p", fmt_fixed(r.p, 6)});
    return table({"quantity", "value"}, rows);
}

std::string qkd_text(const std::vector<QkdPoint>& rows)
{
    std::vector<std::vector<std::string>> out;
    for (const auto& p : rows)
        out.push_back({fmt_fixed(p.p, 2), fmt_fixed(p.h_s_b, 9), fmt_fixed(p.bound, 9), fmt_fixed(p.h_r_e, 9),
                       fmt_fixed(p.slack, 9), p.pass ? "ok" : "FAIL"});
    return table({"p", "H(S|B)", "bound", "H(R|E)", "slack", "check"}, out);
}

std::string trend_text(const std::vector<TrendRow>& rows)
{
    std::vector<std::vector<std::string>> out;
    for (const auto& r : rows)
        out.push_back({std::to_string(r.n), std::to_string(r.dim), fmt_real(r.c_n, 12), fmt_fixed(r.h_min_r_b, 6),
                       fmt_fixed(r.h_neginf_s_b, 6), fmt_fixed(r.h_min_a_b, 6), fmt_fixed(r.h_min_eps_a_b, 6),
                       fmt_fixed(r.slack, 6)});
    return table({"n", "dim", "c_n", "H_min(R|B)/n", "H_-inf(SB)/n", "H_min(AB)/n", "H_min^eps(AB)/n", "slack/n"},
                 out);
}

void write_atomic(const std::filesystem::path& path, const std::string& contents)
{
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw FormatError("cannot open " + tmp.string() + " for writing");
        f << contents;
        f.flush();
        if (!f) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw FormatError("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw FormatError("cannot rename onto " + path.string());
    }
}

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw FormatError("cannot open " + path.string());
    try {
        return Json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace qmur
