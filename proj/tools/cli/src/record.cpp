#include "runprob_cli/record.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "runprob/errors.hpp"

namespace runprob::cli {

Format parse_format(std::string_view text) {
    if (text == "text") return Format::Text;
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    throw DomainError("unknown format: " + std::string(text));
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

OutputRecord make_record(const RunQuery& query, const MethodResult& result, std::string_view method_name) {
    OutputRecord record;
    record.n = query.n;
    record.r = query.r;
    record.p = query.p.to_string();
    if (result.mode() == Mode::Exact) record.z_exact = result.z_exact().to_string();
    record.z_float = format_double(result.z_float());
    record.y_float = format_double(result.y_float());
    record.method = std::string(method_name);
    if (result.error_bound()) record.error_bound = format_double(*result.error_bound());
    return record;
}

std::string to_csv(const OutputRecord& record) {
    std::ostringstream line;
    line << record.n << ',' << record.r << ',' << record.p << ',' << record.z_exact << ',' << record.z_float << ','
         << record.y_float << ',' << record.method << ',' << record.error_bound;
    return line.str();
}

OutputRecord from_csv(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (fields.size() != 8) throw DomainError("expected 8 CSV fields, got " + std::to_string(fields.size()));
    OutputRecord record;
    try {
        record.n = std::stoll(fields[0]);
        record.r = std::stoll(fields[1]);
    } catch (const std::exception&) {
        throw DomainError("bad integer field in CSV row");
    }
    record.p = fields[2];
    record.z_exact = fields[3];
    record.z_float = fields[4];
    record.y_float = fields[5];
    record.method = fields[6];
    record.error_bound = fields[7];
    return record;
}

nlohmann::json to_json(const OutputRecord& record) {
    return {{"n", record.n},
            {"r", record.r},
            {"p", record.p},
            {"z_exact", record.z_exact},
            {"z_float", record.z_float},
            {"y_float", record.y_float},
            {"method", record.method},
            {"error_bound", record.error_bound}};
}

OutputRecord from_json(const nlohmann::json& object) {
    OutputRecord record;
    try {
        record.n = object.at("n").get<std::int64_t>();
        record.r = object.at("r").get<std::int64_t>();
        record.p = object.at("p").get<std::string>();
        record.z_exact = object.at("z_exact").get<std::string>();
        record.z_float = object.at("z_float").get<std::string>();
        record.y_float = object.at("y_float").get<std::string>();
        record.method = object.at("method").get<std::string>();
        record.error_bound = object.at("error_bound").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed record: ") + e.what());
    }
    return record;
}

std::string to_text(const OutputRecord& record) {
    std::ostringstream line;
    line << "n=" << record.n << " r=" << record.r << " p=" << record.p;
    if (!record.z_exact.empty()) line << " z_exact=" << record.z_exact;
    line << " z_float=" << record.z_float << " y_float=" << record.y_float << " method=" << record.method;
    if (!record.error_bound.empty()) line << " error_bound=" << record.error_bound;
    return line.str();
}

void write_records(std::ostream& out, const std::vector<OutputRecord>& records, Format format, bool single) {
    switch (format) {
    case Format::Text:
        for (const auto& record : records) out << to_text(record) << '\n';
        break;
    case Format::Csv:
        out << kCsvHeader << '\n';
        for (const auto& record : records) out << to_csv(record) << '\n';
        break;
    case Format::Json: {
        if (single && records.size() == 1) {
            out << to_json(records.front()).dump() << '\n';
            break;
        }
        auto array = nlohmann::json::array();
        for (const auto& record : records) array.push_back(to_json(record));
        out << array.dump() << '\n';
        break;
    }
    }
}

} // namespace runprob::cli
