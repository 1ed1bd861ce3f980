#pragma once

#include "ipred/core.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ipred {

using Json = nlohmann::ordered_json;

enum class InstanceKind { Boolean, Integer, Real };

using AnyInstance = std::variant<BooleanInstance, IntegerInstance, RealInstance>;

/// Malformed files and bad parameters; the CLI maps it to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string_view kind_name(InstanceKind kind);
InstanceKind kind_of(const AnyInstance& inst);

/// Rationals print as "p/q", or "p" when integral.
std::string to_text(const Rational& q);
BigInt parse_bigint(std::string_view text);
Rational parse_rational(std::string_view text);

/// {"type", "nA", "nB", "d", "A", "B"}. Boolean rows are 0/1 numbers, integer rows decimal
/// strings, real rows rational strings.
Json instance_to_json(const AnyInstance& inst);
AnyInstance instance_from_json(const Json& j);

std::string format_instance(const AnyInstance& inst);
AnyInstance parse_instance(std::string_view text);
void write_instance(const AnyInstance& inst, const std::filesystem::path& path);
AnyInstance read_instance(const std::filesystem::path& path);

struct RunReport {
    std::string command;
    Json parameters = Json::object();
    std::uint64_t seed = 0;
    Json outputs = Json::object();
    /// name -> bool.
    Json verdicts = Json::object();
    double wall_seconds = 0.0;

    bool all_passed() const;
};

enum class ReportFormat { Json, Csv };

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const CsvTable& table);

/// outputs["columns"] / outputs["rows"] when present, otherwise one flattened row.
CsvTable report_table(const RunReport& report);
Json report_to_json(const RunReport& report, bool include_timing = true);
std::string emit_report(const RunReport& report, ReportFormat format, bool include_timing = true);

}  // namespace ipred
