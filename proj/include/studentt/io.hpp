#pragma once
//
// Flat records and their CSV / JSON renderings. Every real number is
// printed with 15 significant digits; a record is one CSV row or one JSON
// object with no nesting beyond arrays of numbers.
//

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "studentt/errors.hpp"
#include "studentt/quantile.hpp"
#include "studentt/survival_approx.hpp"

namespace studentt::io {

using Value = std::variant<double, long long, std::string, std::vector<double>>;
using Field = std::pair<std::string, Value>;
using Record = std::vector<Field>;

enum class Format { csv, json };

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

inline std::string format_value(const Value& v) {
    struct Visitor {
        std::string operator()(double d) const { return format_number(d); }
        std::string operator()(long long i) const { return std::to_string(i); }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(const std::vector<double>& xs) const {
            std::string out;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (i) out += ';';
                out += format_number(xs[i]);
            }
            return out;
        }
    };
    return std::visit(Visitor{}, v);
}

/// Header row from the first record, then one row per record.
inline void write_csv(std::ostream& out, const std::vector<Record>& records) {
    if (records.empty()) return;
    for (std::size_t i = 0; i < records.front().size(); ++i) {
        if (i) out << ',';
        out << records.front()[i].first;
    }
    out << '\n';
    for (const Record& r : records) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out << ',';
            out << format_value(r[i].second);
        }
        out << '\n';
    }
}

/// Numbers are emitted as JSON numbers carrying the same 15 significant
/// digits as the CSV output.
inline nlohmann::ordered_json to_json(const Record& record) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (const auto& [key, value] : record) {
        if (const auto* d = std::get_if<double>(&value)) {
            obj[key] = std::stod(format_number(*d));
        } else if (const auto* i = std::get_if<long long>(&value)) {
            obj[key] = *i;
        } else if (const auto* s = std::get_if<std::string>(&value)) {
            obj[key] = *s;
        } else {
            auto arr = nlohmann::ordered_json::array();
            for (double x : std::get<std::vector<double>>(value)) {
                arr.push_back(std::stod(format_number(x)));
            }
            obj[key] = std::move(arr);
        }
    }
    return obj;
}

/// A single record becomes an object; several become an array of objects.
inline void write_json(std::ostream& out, const std::vector<Record>& records, bool force_array) {
    if (records.size() == 1 && !force_array) {
        out << to_json(records.front()).dump(2) << '\n';
        return;
    }
    auto arr = nlohmann::ordered_json::array();
    for (const Record& r : records) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
}

inline void write(std::ostream& out, Format format, const std::vector<Record>& records,
                  bool force_array = false) {
    if (format == Format::csv) {
        write_csv(out, records);
    } else {
        write_json(out, records, force_array);
    }
}

// Record builders ----------------------------------------------------------

inline Record to_record(const ErrorScanReport& r) {
    return {{"nu", r.nu},
            {"order", static_cast<long long>(to_int(r.order))},
            {"max_error", r.max_error},
            {"argmax_a", r.argmax_a},
            {"grid_points", static_cast<long long>(r.grid_points)}};
}

inline std::vector<Record> to_records(const SlopeFit& fit) {
    std::vector<Record> rows;
    for (std::size_t i = 0; i < fit.nu_values.size(); ++i) {
        rows.push_back({{"order", static_cast<long long>(to_int(fit.order))},
                        {"nu", fit.nu_values[i]},
                        {"max_error", fit.errors[i]},
                        {"slope", fit.slope},
                        {"intercept", fit.intercept}});
    }
    return rows;
}

inline Record to_summary_record(const SlopeFit& fit) {
    return {{"order", static_cast<long long>(to_int(fit.order))},
            {"slope", fit.slope},
            {"intercept", fit.intercept},
            {"nu_values", fit.nu_values},
            {"errors", fit.errors},
            {"excluded_nu", fit.excluded_nu}};
}

inline Record to_record(const QuantileResult& q, double nu, double alpha) {
    return {{"nu", nu},
            {"alpha", alpha},
            {"method", std::string(to_string(q.method))},
            {"level", static_cast<long long>(q.level)},
            {"lambda", q.lambda},
            {"residual", q.residual},
            {"iterations", static_cast<long long>(q.iterations)}};
}

// CSV parsing --------------------------------------------------------------

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

/// Reads the `scan` CSV schema back into reports.
inline std::vector<ErrorScanReport> parse_scan_csv(std::istream& in) {
    static const std::vector<std::string> expected{"nu", "order", "max_error", "argmax_a",
                                                   "grid_points"};
    std::string line;
    if (!std::getline(in, line) || split_csv_line(line) != expected) {
        throw domain_error("scan csv: unexpected header");
    }
    std::vector<ErrorScanReport> reports;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != expected.size()) {
            throw domain_error("scan csv: wrong number of fields in '" + line + "'");
        }
        ErrorScanReport r;
        r.nu = std::stod(cells[0]);
        r.order = make_approx_order(std::stoi(cells[1]));
        r.max_error = std::stod(cells[2]);
        r.argmax_a = std::stod(cells[3]);
        r.grid_points = std::stoi(cells[4]);
        reports.push_back(r);
    }
    return reports;
}

}  // namespace studentt::io
