// respro: production resilience analysis of annual time-series.
//
// Subcommands: series (one selection), combine (sum of selections),
// portfolio (ranked diversified-system analysis). Input is a FAOSTAT-style
// CSV; outputs are plain text, JSON (--json) and SVG (--plot).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "respro/respro.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

struct CommonOptions {
    std::string input;
    std::string json_path;
    std::string plot_path;
    double span_years = 20.0;
    bool drop_nonpositive = false;
};

void add_common(CLI::App& cmd, CommonOptions& opt) {
    cmd.add_option("--input", opt.input, "input CSV file")->required();
    cmd.add_option("--json", opt.json_path, "write a JSON report to this path");
    cmd.add_option("--plot", opt.plot_path, "write an SVG plot to this path");
    cmd.add_option("--span-years", opt.span_years, "smoothing span in years")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_flag("--drop-nonpositive", opt.drop_nonpositive,
                 "drop rows with Value <= 0 instead of failing");
}

bool use_color() {
    return isatty(fileno(stderr)) && std::getenv("RESPRO_NO_COLOR") == nullptr;
}

void print_error(const std::string& msg) {
    if (use_color()) {
        std::fprintf(stderr, "\x1b[31merror:\x1b[0m %s\n", msg.c_str());
    } else {
        std::fprintf(stderr, "error: %s\n", msg.c_str());
    }
}

int usage_error(const std::string& msg) {
    print_error(msg);
    return 2;
}

std::pair<std::string, std::string> parse_key_value(const std::string& arg) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size())
        throw CLI::ValidationError("expected KEY=VALUE, got '" + arg + "'");
    return {arg.substr(0, eq), arg.substr(eq + 1)};
}

std::vector<respro::ColumnFilter> parse_select(const std::string& arg) {
    std::vector<respro::ColumnFilter> filters;
    std::size_t start = 0;
    while (start <= arg.size()) {
        const auto comma = arg.find(',', start);
        const std::string part =
            arg.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!part.empty()) filters.push_back(parse_key_value(part));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (filters.empty()) throw CLI::ValidationError("empty --select '" + arg + "'");
    return filters;
}

respro::FaostatTable load_table(const CommonOptions& opt) {
    respro::LoadPolicy policy;
    if (opt.drop_nonpositive) policy.on_nonpositive = respro::LoadPolicy::OnNonPositive::drop;
    respro::FaostatTable table = respro::FaostatTable::load_csv(opt.input, policy);
    if (table.dropped_missing() > 0)
        std::fprintf(stderr, "note: dropped %zu rows with missing Value\n", table.dropped_missing());
    if (table.dropped_nonpositive() > 0)
        std::fprintf(stderr, "note: dropped %zu rows with non-positive Value\n",
                     table.dropped_nonpositive());
    return table;
}

std::string unit_of(const respro::FaostatTable& table,
                    std::span<const respro::ColumnFilter> filters) {
    const auto unit_col = table.column_index("Unit");
    if (!unit_col) return "";
    const auto rows = respro::matching_rows(table, filters);
    return rows.empty() ? "" : table.cell(rows.front(), *unit_col);
}

long long round_away(double v) { return std::llround(v); }

std::string format_correlation(double r) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", r);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw respro::IoError("cannot write '" + path + "'");
    out << content;
    if (!out) throw respro::IoError("write to '" + path + "' failed");
}

ordered_json report_json(const respro::ResilienceReport& rep) {
    return ordered_json{
        {"name", rep.name},
        {"n_years", rep.n_years},
        {"mean_production", rep.mean_production},
        {"sigma_raw", rep.sigma_raw},
        {"sigma_normalized", rep.sigma_normalized},
        {"resilience", rep.resilience},
        {"resilience_stationary", rep.resilience_stationary},
    };
}

void add_run_metadata(ordered_json& doc, const CommonOptions& opt,
                      const respro::FaostatTable& table) {
    doc["span_years"] = opt.span_years;
    doc["span_modified"] = opt.span_years != 20.0;
    doc["dropped_rows"] = ordered_json{{"missing_value", table.dropped_missing()},
                                       {"non_positive", table.dropped_nonpositive()}};
}

void write_json(const std::string& path, const ordered_json& doc) {
    write_file(path, doc.dump(2) + "\n");
}

int run_series(const CommonOptions& opt, const std::vector<std::string>& filter_args) {
    std::vector<respro::ColumnFilter> filters;
    for (const auto& arg : filter_args) filters.push_back(parse_key_value(arg));

    const respro::FaostatTable table = load_table(opt);
    const respro::AnnualSeries series = respro::extract_series(table, filters);
    const respro::SmoothingConfig cfg{.span_years = opt.span_years};
    const respro::ResilienceReport rep = respro::production_resilience(series, cfg);

    std::printf("%s : time series length = %d , P-res = %lld\n", rep.name.c_str(), rep.n_years,
                round_away(rep.resilience));

    if (!opt.json_path.empty()) {
        ordered_json doc{{"schema", "respro/1"}, {"command", "series"}};
        doc.update(report_json(rep));
        add_run_metadata(doc, opt, table);
        write_json(opt.json_path, doc);
    }
    if (!opt.plot_path.empty()) {
        const std::string unit = unit_of(table, filters);
        respro::PlotSpec plot;
        plot.title = rep.name;
        plot.y_axis_label = unit.empty() ? "production value" : unit;
        const std::vector<std::pair<respro::AnnualSeries, respro::BaselineSeries>> pairs{
            {series, respro::smooth(series, cfg)}};
        write_file(opt.plot_path, respro::plot_series(pairs, plot));
    }
    return 0;
}

int run_combine(const CommonOptions& opt, const std::vector<std::string>& select_args) {
    std::vector<std::vector<respro::ColumnFilter>> selections;
    for (const auto& arg : select_args) selections.push_back(parse_select(arg));

    const respro::FaostatTable table = load_table(opt);
    std::vector<respro::AnnualSeries> parts;
    for (const auto& filters : selections)
        parts.push_back(respro::extract_series(table, filters));

    respro::AnnualSeries sum = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) sum = sum + parts[i];

    const respro::SmoothingConfig cfg{.span_years = opt.span_years};
    const respro::ResilienceReport rep = respro::production_resilience(sum, cfg);
    const double correlation = respro::anomaly_correlation(parts[0], parts[1], cfg);

    std::printf("%s : time series length = %d , P-res = %lld , correlation = %s\n",
                rep.name.c_str(), rep.n_years, round_away(rep.resilience),
                format_correlation(correlation).c_str());

    if (!opt.json_path.empty()) {
        ordered_json doc{{"schema", "respro/1"}, {"command", "combine"}};
        ordered_json components = ordered_json::array();
        for (const auto& p : parts) components.push_back(p.name());
        doc["components"] = components;
        doc.update(report_json(rep));
        doc["correlation"] = correlation;
        add_run_metadata(doc, opt, table);
        write_json(opt.json_path, doc);
    }
    if (!opt.plot_path.empty()) {
        const std::string unit = unit_of(table, selections.front());
        respro::PlotSpec plot;
        plot.title = rep.name;
        plot.y_axis_label = unit.empty() ? "production value" : unit;
        const std::vector<std::pair<respro::AnnualSeries, respro::BaselineSeries>> pairs{
            {sum, respro::smooth(sum, cfg)}};
        write_file(opt.plot_path, respro::plot_series(pairs, plot));
    }
    return 0;
}

int run_portfolio(const CommonOptions& opt, const std::string& fix_arg,
                  const std::string& group_by, int top_n, int min_length, bool more_info) {
    const auto [fixed_column, fixed_value] = parse_key_value(fix_arg);
    const respro::FaostatTable table = load_table(opt);
    respro::SelectionSpec spec;
    spec.fixed_column = fixed_column;
    spec.fixed_value = fixed_value;
    spec.group_by = group_by;
    spec.top_n = top_n;
    spec.min_length = min_length;
    const respro::SmoothingConfig cfg{.span_years = opt.span_years};

    const respro::PortfolioReport rep = respro::analyze_portfolio(table, spec, cfg);

    for (const auto& ex : rep.excluded)
        std::printf("excluded : %s (%s)\n", ex.name.c_str(), respro::to_string(ex.reason));
    for (std::size_t i = 0; i < rep.size(); ++i) {
        std::printf("%s : mean production = %.2f , length = %d , P-res = %lld , aggregated P-res = %lld",
                    rep.labels[i].c_str(), rep.individual_means[i], rep.individual_lengths[i],
                    round_away(rep.individual_resilience[i]),
                    round_away(rep.aggregated_resilience[i]));
        if (i > 0) {
            const auto& rho = rep.pairwise_correlation[i];
            std::printf(" , correlation = %s", rho ? format_correlation(*rho).c_str() : "n/a");
        }
        std::printf("\n");
    }

    if (!opt.json_path.empty()) {
        ordered_json doc{{"schema", "respro/1"}, {"command", "portfolio"}};
        doc["fixed"] = ordered_json{{fixed_column, fixed_value}};
        doc["group_by"] = group_by;
        doc["labels"] = rep.labels;
        doc["individual_means"] = rep.individual_means;
        doc["individual_resilience"] = rep.individual_resilience;
        doc["aggregated_resilience"] = rep.aggregated_resilience;
        ordered_json corr = ordered_json::array();
        for (const auto& rho : rep.pairwise_correlation) {
            if (rho) {
                corr.push_back(*rho);
            } else {
                corr.push_back(nullptr);
            }
        }
        doc["pairwise_correlation"] = corr;
        doc["individual_lengths"] = rep.individual_lengths;
        doc["aggregated_lengths"] = rep.aggregated_lengths;
        ordered_json excluded = ordered_json::array();
        for (const auto& ex : rep.excluded)
            excluded.push_back(ordered_json{{"name", ex.name}, {"reason", respro::to_string(ex.reason)}});
        doc["excluded"] = excluded;
        doc["top_n"] = top_n;
        doc["min_length"] = min_length;
        add_run_metadata(doc, opt, table);
        write_json(opt.json_path, doc);
    }
    if (!opt.plot_path.empty()) {
        const std::vector<respro::ColumnFilter> fixed{{fixed_column, fixed_value}};
        const std::string unit = unit_of(table, fixed);
        respro::PlotSpec plot;
        plot.title = fixed_value + " production system resilience";
        plot.y_axis_label = unit.empty() ? "mean production" : unit;
        plot.more_info = more_info;
        write_file(opt.plot_path, respro::plot_resilience_diversity(rep, plot));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"annual production resilience analysis for positive-valued time-series"};
    app.require_subcommand(1);

    CommonOptions series_opt;
    std::vector<std::string> filter_args;
    CLI::App* series_cmd =
        app.add_subcommand("series", "resilience of a single selected time-series");
    add_common(*series_cmd, series_opt);
    series_cmd->add_option("--filter", filter_args, "row filter KEY=VALUE (repeatable)")
        ->required();

    CommonOptions combine_opt;
    std::vector<std::string> select_args;
    CLI::App* combine_cmd =
        app.add_subcommand("combine", "resilience of a sum of selected time-series");
    add_common(*combine_cmd, combine_opt);
    combine_cmd->add_option("--select", select_args,
                            "one selection as \"KEY=VALUE,KEY=VALUE\" (repeat >= 2 times)")
        ->required();

    CommonOptions portfolio_opt;
    std::string fix_arg, group_by;
    int top_n = 15;
    int min_length = 30;
    bool more_info = false;
    CLI::App* portfolio_cmd =
        app.add_subcommand("portfolio", "diversified production-system analysis");
    add_common(*portfolio_cmd, portfolio_opt);
    portfolio_cmd->add_option("--fix", fix_arg, "fixed selection KEY=VALUE")->required();
    portfolio_cmd->add_option("--group-by", group_by, "column that identifies the series")
        ->required();
    portfolio_cmd->add_option("--top", top_n, "number of top producers to keep")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    portfolio_cmd->add_option("--min-length", min_length,
                              "keep only series strictly longer than this")
        ->check(CLI::Range(2, 1 << 20))
        ->capture_default_str();
    portfolio_cmd->add_flag("--more-info", more_info,
                            "correlation-colored bars, lengths in labels, colorbar");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() != 0) return usage_error(e.what());
        return app.exit(e);
    }

    try {
        if (series_cmd->parsed()) return run_series(series_opt, filter_args);
        if (combine_cmd->parsed()) {
            if (select_args.size() < 2)
                return usage_error("combine needs at least two --select groups");
            return run_combine(combine_opt, select_args);
        }
        if (portfolio_cmd->parsed())
            return run_portfolio(portfolio_opt, fix_arg, group_by, top_n, min_length, more_info);
    } catch (const CLI::ValidationError& e) {
        return usage_error(e.what());
    } catch (const respro::Error& e) {
        print_error(e.what());
        return 1;
    } catch (const std::exception& e) {
        print_error(e.what());
        return 1;
    }
    return 0;
}
