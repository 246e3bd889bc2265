#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include <ibpdn/analysis.hpp>
#include <ibpdn/solver.hpp>
#include <ibpdn/types.hpp>

namespace ibpdn {

using Json = nlohmann::json;

/// Shortest representation that round-trips a double exactly.
std::string format_full(double v);

/// Fixed 15-significant-digit form used in CSV output.
std::string format_csv(double v);

/// Plain-text vector format: one decimal value per line.
void write_signal(std::ostream& os, const Vector& x);
Vector read_signal(std::istream& is);
void write_signal_file(const std::string& path, const Vector& x);
Vector read_signal_file(const std::string& path);

/// CSV matrix format: one row per line, comma-separated decimals.
void write_matrix_csv(std::ostream& os, const Matrix& a);
Matrix read_matrix_csv(std::istream& is);

Json to_json(const RecoveryResult& result);
Json to_json(const RipEstimate& estimate);
Json to_json(const BoundReport& report);
Json to_json(const OptimalityCertificate& cert);

}  // namespace ibpdn
