#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace fdci::app {

using Json = nlohmann::ordered_json;

/// Result of one CLI run. Optional arrays are empty when not applicable;
/// every non-empty array has one entry per interior node.
struct RunOutput {
    Json metadata = Json::object();

    std::vector<double> x;
    std::vector<double> fd_solution;
    std::vector<double> posterior_mean;
    std::vector<double> ci_lower;
    std::vector<double> ci_upper;
    std::vector<double> width;
    std::vector<double> scaled_width;

    std::vector<double> exact;
    std::vector<double> abs_error;
    std::vector<double> rel_error;
    std::vector<double> truncation_leading;
    std::vector<double> reference;

    /// Model-specific columns, in output order.
    std::vector<std::pair<std::string, std::vector<double>>> extra;

    /// Throws std::invalid_argument if a non-empty array has the wrong length.
    void validate() const;
};

enum class Format { Json, Csv };

/// NaN is written as null and read back as NaN.
Json to_json(const RunOutput& out);
RunOutput from_json(const Json& doc);

void write_json(std::ostream& os, const RunOutput& out);
/// Header row then one row per node; numbers use 17 significant digits.
void write_csv(std::ostream& os, const RunOutput& out);

/// "-" writes to stdout. Throws std::runtime_error on I/O failure.
void export_output(const RunOutput& out, Format fmt, const std::string& path);
RunOutput read_json_file(const std::string& path);

}  // namespace fdci::app
