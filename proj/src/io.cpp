#include "ipred/io.hpp"

#include <fstream>
#include <sstream>

namespace ipred {

std::string_view kind_name(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::Boolean: return "boolean";
        case InstanceKind::Integer: return "integer";
        case InstanceKind::Real: return "real";
    }
    return "boolean";
}

InstanceKind kind_of(const AnyInstance& inst) { return static_cast<InstanceKind>(inst.index()); }

std::string to_text(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

BigInt parse_bigint(std::string_view text) {
    std::string_view digits = text;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
        throw InputError("not a decimal integer: '" + std::string(text) + "'");
    return BigInt(std::string(text.front() == '+' ? text.substr(1) : text));
}

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_bigint(text));
    BigInt num = parse_bigint(text.substr(0, slash));
    BigInt den = parse_bigint(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
}

namespace {

template <typename Scalar>
Json rows_to_json(const VectorSet<Scalar>& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index k = 0; k < m.cols(); ++k) {
            if constexpr (std::is_same_v<Scalar, Bit>) row.push_back(int(m(i, k)));
            else if constexpr (std::is_same_v<Scalar, BigInt>) row.push_back(m(i, k).str());
            else row.push_back(to_text(m(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

template <typename Scalar>
VectorSet<Scalar> rows_from_json(const Json& j, Index n, Index d, const char* side) {
    if (!j.is_array() || static_cast<Index>(j.size()) != n)
        throw InputError(std::string("side ") + side + " must be an array of " + std::to_string(n) + " rows");
    VectorSet<Scalar> m(n, d);
    for (Index i = 0; i < n; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != d)
            throw InputError(std::string("row ") + std::to_string(i) + " of " + side + " must have " + std::to_string(d) +
                             " entries");
        for (Index k = 0; k < d; ++k) {
            const Json& e = row[static_cast<std::size_t>(k)];
            if constexpr (std::is_same_v<Scalar, Bit>) {
                if (!e.is_number_integer() || (e.get<int>() != 0 && e.get<int>() != 1))
                    throw InputError(std::string("boolean entry in ") + side + " is not 0 or 1");
                m(i, k) = static_cast<Bit>(e.get<int>());
            } else {
                if (!e.is_string()) throw InputError(std::string("entries of ") + side + " must be strings");
                if constexpr (std::is_same_v<Scalar, BigInt>) m(i, k) = parse_bigint(e.get<std::string>());
                else m(i, k) = parse_rational(e.get<std::string>());
            }
        }
    }
    return m;
}

Index read_count(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
        throw InputError(std::string("missing or invalid '") + key + "'");
    return static_cast<Index>(j[key].get<long long>());
}

}  // namespace

Json instance_to_json(const AnyInstance& inst) {
    return std::visit(
        [&](const auto& in) {
            Json j;
            j["type"] = kind_name(kind_of(inst));
            j["nA"] = in.a.rows();
            j["nB"] = in.b.rows();
            j["d"] = in.dim();
            j["A"] = rows_to_json(in.a);
            j["B"] = rows_to_json(in.b);
            return j;
        },
        inst);
}

AnyInstance instance_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) throw InputError("missing instance type");
    const auto type = j["type"].get<std::string>();
    const Index na = read_count(j, "nA"), nb = read_count(j, "nB"), d = read_count(j, "d");
    if (!j.contains("A") || !j.contains("B")) throw InputError("missing side A or B");
    try {
        if (type == "boolean") {
            BooleanInstance in{rows_from_json<Bit>(j["A"], na, d, "A"), rows_from_json<Bit>(j["B"], nb, d, "B")};
            validate(in);
            return in;
        }
        if (type == "integer") {
            IntegerInstance in{rows_from_json<BigInt>(j["A"], na, d, "A"), rows_from_json<BigInt>(j["B"], nb, d, "B")};
            validate(in);
            return in;
        }
        if (type == "real") {
            RealInstance in{rows_from_json<Rational>(j["A"], na, d, "A"), rows_from_json<Rational>(j["B"], nb, d, "B")};
            validate(in);
            return in;
        }
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    throw InputError("unknown instance type '" + type + "'");
}

std::string format_instance(const AnyInstance& inst) { return instance_to_json(inst).dump(1) + "\n"; }

AnyInstance parse_instance(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("malformed instance file: ") + e.what());
    }
    return instance_from_json(j);
}

void write_instance(const AnyInstance& inst, const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path.string());
    f << format_instance(inst);
}

AnyInstance read_instance(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot read " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_instance(ss.str());
}

bool RunReport::all_passed() const {
    for (const auto& [name, v] : verdicts.items())
        if (!v.get<bool>()) return false;
    return true;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

std::string to_csv(const CsvTable& table) {
    std::string out;
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ',';
            out += csv_field(fields[i]);
        }
        out += '\n';
    };
    line(table.header);
    for (const auto& r : table.rows) line(r);
    return out;
}

CsvTable report_table(const RunReport& report) {
    CsvTable t;
    if (report.outputs.contains("columns")) {
        for (const auto& c : report.outputs["columns"]) t.header.push_back(c.get<std::string>());
        if (report.outputs.contains("rows"))
            for (const auto& r : report.outputs["rows"]) {
                std::vector<std::string> row;
                for (const auto& v : r) row.push_back(cell(v));
                t.rows.push_back(std::move(row));
            }
        return t;
    }
    std::vector<std::string> row;
    t.header = {"command", "seed"};
    row = {report.command, std::to_string(report.seed)};
    auto flatten = [&](const Json& obj, const std::string& prefix) {
        for (const auto& [k, v] : obj.items()) {
            if (v.is_structured()) continue;
            t.header.push_back(prefix + k);
            row.push_back(cell(v));
        }
    };
    flatten(report.parameters, "");
    flatten(report.outputs, "");
    flatten(report.verdicts, "ok_");
    t.rows.push_back(std::move(row));
    return t;
}

Json report_to_json(const RunReport& report, bool include_timing) {
    Json j;
    j["command"] = report.command;
    j["parameters"] = report.parameters;
    j["seed"] = report.seed;
    j["outputs"] = report.outputs;
    j["verdicts"] = report.verdicts;
    if (include_timing) j["wall_seconds"] = report.wall_seconds;
    return j;
}

std::string emit_report(const RunReport& report, ReportFormat format, bool include_timing) {
    if (format == ReportFormat::Csv) return to_csv(report_table(report));
    return report_to_json(report, include_timing).dump(2) + "\n";
}

}  // namespace ipred
