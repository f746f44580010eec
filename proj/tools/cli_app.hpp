#pragma once
//
// studentt command-line front end. run() takes the arguments after the
// program name and writes results to `out`, diagnostics to `err`.
//
// Exit codes: 0 success, 1 numerical failure, 2 usage error.
//

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "studentt/io.hpp"
#include "studentt/studentt.hpp"

namespace studentt::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_numerical = 1;
inline constexpr int exit_usage = 2;

namespace detail {

struct Options {
    std::string format = "csv";
    std::string output;
    double nu = 0.0;
    double x = 0.0;
    double a = 0.0;
    double alpha = 0.0;
    bool exact = false;
    bool log_form = false;
    std::optional<int> order;
    std::optional<int> invert_order;
    std::optional<int> theorem2_level;
    bool oracle = false;
    bool printed_cubic = false;
    std::vector<double> nu_list;
    int grid = 2001;
    double window = 10.0;
    double bulk_eta = 0.5;
    bool no_bulk = false;

    ScanOptions scan_options() const {
        ScanOptions opts{grid, window, bulk_eta};
        if (no_bulk) opts.bulk_eta.reset();
        return opts;
    }
};

inline std::vector<io::Record> cmd_pdf(const Options& o) {
    const DegreesOfFreedom nu{o.nu};
    return {{{"nu", o.nu}, {"x", o.x}, {"pdf", student_pdf(nu, o.x)}}};
}

inline std::vector<io::Record> cmd_sf(const Options& o) {
    const DegreesOfFreedom nu{o.nu};
    if (o.order) {
        const ApproxOrder order = make_approx_order(*o.order);
        return {{{"nu", o.nu},
                 {"a", o.a},
                 {"method", std::string("approx")},
                 {"order", static_cast<long long>(*o.order)},
                 {"sf", survival_approx(nu, o.a, order)}}};
    }
    return {{{"nu", o.nu},
             {"a", o.a},
             {"method", std::string("exact")},
             {"order", static_cast<long long>(-1)},
             {"sf", student_sf_exact(nu, o.a)}}};
}

inline std::vector<io::Record> cmd_ratio(const Options& o) {
    const DegreesOfFreedom nu{o.nu};
    const int order = *o.order;
    const ExpansionForm form = o.log_form ? ExpansionForm::log_ratio : ExpansionForm::ratio;
    const StandardizedPoint delta = standardize(nu, o.x);
    return {{{"nu", o.nu},
             {"x", o.x},
             {"delta", delta.delta},
             {"form", std::string(o.log_form ? "log" : "ratio")},
             {"order", static_cast<long long>(order)},
             {"expansion", expansion_value(form, nu, delta, order)},
             {"exact", exact_expansion_target(form, nu, o.x)}}};
}

inline std::vector<io::Record> cmd_quantile(const Options& o) {
    const DegreesOfFreedom nu{o.nu};
    QuantileResult q;
    if (o.invert_order) {
        q = quantile_invert_sf(nu, o.alpha, make_approx_order(*o.invert_order));
    } else if (o.theorem2_level) {
        q = theorem2_solve(nu, o.alpha, *o.theorem2_level,
                           o.printed_cubic ? Level3Cubic::as_printed : Level3Cubic::full);
    } else {
        q = quantile_oracle_result(nu, o.alpha);
    }
    return {io::to_record(q, o.nu, o.alpha)};
}

inline std::vector<io::Record> cmd_constants() {
    std::vector<io::Record> rows;
    const char* names[] = {"M0", "M1", "M2"};
    const char* refs[] = {"0.137647", "0.353017", "0.758112"};
    for (int i = 0; i < 3; ++i) {
        const ExtremalConstant m = extremal_constant(i);
        rows.push_back({{"name", std::string(names[i])},
                        {"computed", m.value},
                        {"reference", std::string(refs[i])}});
    }
    rows.push_back({{"name", std::string("M0_tilde")},
                    {"computed", legacy_M0_tilde()},
                    {"reference", std::string("0.1582")}});
    return rows;
}

inline std::vector<io::Record> cmd_scan(const Options& o) {
    const ApproxOrder order = make_approx_order(*o.order);
    const ScanOptions scan = o.scan_options();
    for (double nu : o.nu_list) (void)DegreesOfFreedom{nu};
    std::vector<io::Record> rows;
    for (double nu : o.nu_list) {
        rows.push_back(io::to_record(max_error_scan(DegreesOfFreedom{nu}, order, scan)));
    }
    return rows;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Refined normal approximations to the Student t distribution"};
    app.name("studentt");
    app.require_subcommand(1);
    detail::Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--output", o.output, "Write to this file instead of standard output");
    };

    auto* pdf = app.add_subcommand("pdf", "Student density f_nu(x)");
    pdf->add_option("--nu", o.nu, "Degrees of freedom (> 2)")->required();
    pdf->add_option("--x", o.x, "Evaluation point")->required();
    add_common(pdf);

    auto* sf = app.add_subcommand("sf", "Survival function, exact or approximate");
    sf->add_option("--nu", o.nu, "Degrees of freedom (> 2)")->required();
    sf->add_option("--a", o.a, "Lower end point")->required();
    auto* sf_exact = sf->add_flag("--exact", o.exact, "Exact incomplete-beta value (default)");
    auto* sf_order = sf->add_option("--order", o.order, "Approximation order 0..3")
                         ->check(CLI::Range(0, 3));
    sf_exact->excludes(sf_order);
    add_common(sf);

    auto* ratio = app.add_subcommand("ratio", "Local expansion of the density ratio");
    ratio->add_option("--nu", o.nu, "Degrees of freedom (> 2)")->required();
    ratio->add_option("--x", o.x, "Evaluation point")->required();
    ratio->add_option("--order", o.order, "Expansion order 1..3")
        ->required()
        ->check(CLI::Range(1, 3));
    ratio->add_flag("--log", o.log_form, "Use the log form");
    add_common(ratio);

    auto* quantile = app.add_subcommand("quantile", "Percentage point for tail probability alpha");
    quantile->add_option("--nu", o.nu, "Degrees of freedom (> 2)")->required();
    quantile->add_option("--alpha", o.alpha, "Upper tail probability in (0, 1)")->required();
    auto* q_inv = quantile->add_option("--invert-order", o.invert_order,
                                       "Invert the order-i survival approximation")
                      ->check(CLI::Range(0, 3));
    auto* q_t2 = quantile->add_option("--theorem2-level", o.theorem2_level,
                                      "Solve the level-j percentage-point equation")
                     ->check(CLI::Range(1, 3));
    auto* q_oracle = quantile->add_flag("--oracle", o.oracle, "Root of the exact survival function");
    quantile->add_flag("--printed-cubic", o.printed_cubic,
                       "Level 3: use only lambda^3 + d1^3 in the cubic block");
    q_inv->excludes(q_t2);
    q_inv->excludes(q_oracle);
    q_t2->excludes(q_oracle);
    add_common(quantile);

    auto* constants = app.add_subcommand("constants", "Extremal constants M0, M1, M2 and M0~");
    add_common(constants);

    auto* scan = app.add_subcommand("scan", "Maximal approximation error per nu");
    scan->add_option("--nu-list", o.nu_list, "Degrees of freedom values")->required();
    scan->add_option("--order", o.order, "Approximation order 0..3")
        ->required()
        ->check(CLI::Range(0, 3));
    scan->add_option("--grid", o.grid, "Grid points")->check(CLI::Range(101, 10000000))
        ->capture_default_str();
    scan->add_option("--window", o.window, "Half-width of the delta window")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    scan->add_option("--bulk-eta", o.bulk_eta, "Clip the window to the bulk B_nu(eta)")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    scan->add_flag("--no-bulk", o.no_bulk, "Scan the full window without bulk clipping");
    add_common(scan);

    auto* slopes = app.add_subcommand("slopes", "Log-log slope of the maximal error against nu");
    slopes->add_option("--nu-list", o.nu_list, "Degrees of freedom values (>= 4 distinct)")
        ->required();
    slopes->add_option("--order", o.order, "Approximation order 0..3")
        ->required()
        ->check(CLI::Range(0, 3));
    slopes->add_option("--grid", o.grid, "Grid points")->check(CLI::Range(101, 10000000))
        ->capture_default_str();
    slopes->add_option("--window", o.window, "Half-width of the delta window")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    slopes->add_option("--bulk-eta", o.bulk_eta, "Clip the window to the bulk B_nu(eta)")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    slopes->add_flag("--no-bulk", o.no_bulk, "Scan the full window without bulk clipping");
    add_common(slopes);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }
    if (quantile->parsed() && !q_inv->count() && !q_t2->count() && !q_oracle->count()) {
        err << "quantile: one of --invert-order, --theorem2-level or --oracle is required\n";
        return exit_usage;
    }

    const io::Format format = o.format == "json" ? io::Format::json : io::Format::csv;
    std::vector<io::Record> records;
    bool force_array = false;
    try {
        if (pdf->parsed()) {
            records = detail::cmd_pdf(o);
        } else if (sf->parsed()) {
            records = detail::cmd_sf(o);
        } else if (ratio->parsed()) {
            records = detail::cmd_ratio(o);
        } else if (quantile->parsed()) {
            records = detail::cmd_quantile(o);
        } else if (constants->parsed()) {
            records = detail::cmd_constants();
            force_array = true;
        } else if (scan->parsed()) {
            records = detail::cmd_scan(o);
            force_array = true;
        } else if (slopes->parsed()) {
            const SlopeFit fit =
                fit_loglog_slope(make_approx_order(*o.order), o.nu_list, o.scan_options());
            records = format == io::Format::csv ? io::to_records(fit)
                                                : std::vector<io::Record>{io::to_summary_record(fit)};
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_numerical;
    }

    if (!o.output.empty()) {
        std::ofstream file(o.output, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << o.output << " for writing\n";
            return exit_usage;
        }
        io::write(file, format, records, force_array);
    } else {
        io::write(out, format, records, force_array);
    }
    return exit_ok;
}

}  // namespace studentt::cli
