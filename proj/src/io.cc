#include "lambdip/io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>

#include "lambdip/errors.hpp"

namespace lambdip {

std::string format_g17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string current_timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

void write_csv(std::ostream& out, const Table& table, const std::string& timestamp) {
    out << "# " << table.title << "\n";
    for (const auto& [key, value] : table.meta) {
        out << "# " << key << " = " << value << "\n";
    }
    // The timestamp is the only run-dependent line in the file.
    out << "# generated_at = " << timestamp << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c == 0 ? "" : ",") << table.columns[c];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c == 0 ? "" : ",") << format_g17(row[c]);
        }
        out << "\n";
    }
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (const char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(ch) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                out += buf;
            } else {
                out += ch;
            }
        }
    }
    return out;
}

// JSON has no NaN/Inf literals; failed sweep points become null.
std::string json_number(double value) {
    if (!std::isfinite(value)) {
        return "null";
    }
    return format_g17(value);
}

} // namespace

void write_json(std::ostream& out, const Table& table, const std::string& timestamp) {
    out << "{\n";
    out << "  \"command\": \"" << json_escape(table.title) << "\",\n";
    out << "  \"generated_at\": \"" << json_escape(timestamp) << "\",\n";
    out << "  \"params\": {\n";
    for (std::size_t i = 0; i < table.meta.size(); ++i) {
        out << "    \"" << json_escape(table.meta[i].first) << "\": \""
            << json_escape(table.meta[i].second) << "\""
            << (i + 1 < table.meta.size() ? "," : "") << "\n";
    }
    out << "  },\n";
    out << "  \"columns\": [";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c == 0 ? "" : ", ") << "\"" << json_escape(table.columns[c]) << "\"";
    }
    out << "],\n";
    out << "  \"rows\": [\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out << "    [";
        for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
            out << (c == 0 ? "" : ", ") << json_number(table.rows[r][c]);
        }
        out << "]" << (r + 1 < table.rows.size() ? "," : "") << "\n";
    }
    out << "  ]\n";
    out << "}\n";
}

void emit_table(const Table& table, const std::string& path, OutputFormat format) {
    const std::string timestamp = current_timestamp_utc();
    if (path.empty() || path == "-") {
        if (format == OutputFormat::csv) {
            write_csv(std::cout, table, timestamp);
        } else {
            write_json(std::cout, table, timestamp);
        }
        std::cout.flush();
        if (!std::cout) {
            throw IoError("failed writing to stdout");
        }
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open output file '" + path + "'");
    }
    if (format == OutputFormat::csv) {
        write_csv(out, table, timestamp);
    } else {
        write_json(out, table, timestamp);
    }
    out.flush();
    if (!out) {
        throw IoError("failed writing output file '" + path + "'");
    }
}

} // namespace lambdip
