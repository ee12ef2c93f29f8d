#pragma once

// Deterministic CSV and JSON table emitters.  All numbers are written with
// %.17g so re-reading reproduces every double bit-exactly; apart from the
// generated_at timestamp (isolated to a single comment line / JSON field) two
// runs with the same inputs produce byte-identical files.

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace lambdip {

enum class OutputFormat { csv, json };

struct Table {
    std::string title;                                        // producing command
    std::vector<std::pair<std::string, std::string>> meta;    // ordered snapshot
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;                    // row-major, columns.size() wide
};

// Shortest representation that round-trips a double exactly.
std::string format_g17(double value);

// UTC wall-clock in ISO-8601 (seconds resolution).
std::string current_timestamp_utc();

void write_csv(std::ostream& out, const Table& table, const std::string& timestamp);
void write_json(std::ostream& out, const Table& table, const std::string& timestamp);

// Writes to the given path ("-" = stdout) in the requested format.  Throws
// IoError if the file cannot be created or written.
void emit_table(const Table& table, const std::string& path, OutputFormat format);

} // namespace lambdip
