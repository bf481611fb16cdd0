#pragma once
// File formats and report emission. States and bases are JSON; complex
// entries are [re, im] pairs, rows outermost. Reports are JSON, CSV or
// aligned text; non-finite reals are written as the strings "inf", "-inf"
// and "nan".

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmur/certificate.hpp"
#include "qmur/game.hpp"
#include "qmur/measurements.hpp"
#include "qmur/states.hpp"

namespace qmur {

using Json = nlohmann::ordered_json;

enum class ReportFormat { json, csv, text };
ReportFormat report_format_from_string(const std::string& name);
std::string to_string(ReportFormat format);

/// Finite values as numbers, the rest as "inf", "-inf" or "nan".
Json json_real(double x);
/// Inverse of json_real; also accepts decimal strings. Throws FormatError.
double real_from_json(const Json& j);

Json state_to_json(const DensityOperator& rho);
/// Rejects anything DensityOperator would reject, as FormatError carrying
/// the validation message.
DensityOperator state_from_json(const Json& j);
DensityOperator read_state(const std::filesystem::path& path);
void write_state(const std::filesystem::path& path, const DensityOperator& rho);

Json basis_to_json(const MeasurementBasis& basis);
MeasurementBasis basis_from_json(const Json& j);
MeasurementBasis read_basis(const std::filesystem::path& path);
void write_basis(const std::filesystem::path& path, const MeasurementBasis& basis);

Json to_json(const RelationCertificate& c);
Json to_json(const GameReport& r);
Json to_json(const QkdPoint& p);
Json to_json(const TrendRow& r);

/// One header line, then one row per certificate.
std::string certificates_csv(const std::vector<RelationCertificate>& certs);
std::string certificates_text(const std::vector<RelationCertificate>& certs);
std::string game_text(const GameReport& r);
std::string qkd_text(const std::vector<QkdPoint>& rows);
std::string trend_text(const std::vector<TrendRow>& rows);

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

/// Parses the whole file; FormatError on I/O or syntax failure.
Json read_json_file(const std::filesystem::path& path);

/// ISO 8601 UTC.
std::string utc_timestamp();

} // namespace qmur
