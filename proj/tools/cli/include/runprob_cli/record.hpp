#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "runprob/method_result.hpp"
#include "runprob/query.hpp"

namespace runprob::cli {

/// One row of CLI output. Absent optional fields are empty strings.
struct OutputRecord {
    std::int64_t n = 0;
    std::int64_t r = 1;
    std::string p;
    std::string z_exact;
    std::string z_float;
    std::string y_float;
    std::string method;
    std::string error_bound;

    friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

enum class Format { Text, Csv, Json };

Format parse_format(std::string_view text);

/// %.17g, which round-trips every finite double.
std::string format_double(double value);

OutputRecord make_record(const RunQuery& query, const MethodResult& result, std::string_view method_name);

inline constexpr std::string_view kCsvHeader = "n,r,p,z_exact,z_float,y_float,method,error_bound";

std::string to_csv(const OutputRecord& record);
OutputRecord from_csv(std::string_view line);

nlohmann::json to_json(const OutputRecord& record);
OutputRecord from_json(const nlohmann::json& object);

std::string to_text(const OutputRecord& record);

/// Writes records in the chosen format: text lines, CSV with header, or a
/// JSON array (a single object when `single` is set).
void write_records(std::ostream& out, const std::vector<OutputRecord>& records, Format format, bool single = false);

} // namespace runprob::cli
