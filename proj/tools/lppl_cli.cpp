// lppl: command-line front end for LPPL fitting, window scans and the
// supporting series analytics. Reports are JSON on stdout (or --report).

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lppl/analytics.hpp"
#include "lppl/csv.hpp"
#include "lppl/error.hpp"
#include "lppl/fitter.hpp"
#include "lppl/report.hpp"
#include "lppl/scan.hpp"
#include "lppl/synth.hpp"

namespace {

using namespace lppl;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNoFit = 4;

struct InputOptions {
    std::string date_column = "0";
    std::string value_column = "1";
    std::string label;
    std::string holidays;
    std::string from;
    std::string to;
};

struct FitOptions {
    std::string m_grid = "0.1:0.9:0.05";
    double tc_step = 5.0;
    double tc_span = 0.1;
    std::string omega_mode = "free";
    std::string constraints = "auto";
    double tolerance = 1e-9;
    int max_iterations = 500;
    unsigned threads = 0;
    bool invert = false;
    bool standardize = false;
    std::string plot;
};

struct Outputs {
    std::string report = "-";
};

Date require_date(const std::string& text, const std::string& what) {
    const auto d = parse_date(text);
    if (!d) throw Error(ErrorKind::InvalidArgument, "bad " + what + " date '" + text + "'");
    return *d;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty()) {
            throw Error(ErrorKind::InvalidArgument, "bad number '" + s + "' in grid '" + text + "'");
        }
        return v;
    };
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
        if (parts.size() != 3) {
            throw Error(ErrorKind::InvalidArgument, "grid range must be start:stop:step");
        }
        const double lo = number(parts[0]), hi = number(parts[1]), step = number(parts[2]);
        if (!(step > 0.0) || hi < lo) throw Error(ErrorKind::InvalidArgument, "empty grid range");
        const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
        // Rounded to 12 decimals so 0.1:0.9:0.05 yields exactly 0.15, 0.3, ...
        for (long k = 0; k <= count; ++k) {
            out.push_back(std::round((lo + static_cast<double>(k) * step) * 1e12) / 1e12);
        }
    } else {
        std::stringstream ss(text);
        for (std::string part; std::getline(ss, part, ',');) out.push_back(number(part));
    }
    if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty grid");
    return out;
}

TradingCalendar make_calendar(const InputOptions& in) {
    if (in.holidays.empty()) return TradingCalendar{};
    return TradingCalendar(load_holidays(in.holidays));
}

PriceSeries load_input(const std::string& path, const InputOptions& in) {
    CsvOptions csv;
    csv.date_column = in.date_column;
    csv.value_column = in.value_column;
    csv.label = in.label;
    std::vector<std::string> warnings;
    PriceSeries series = load_csv(path, csv, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    if (!in.from.empty() || !in.to.empty()) {
        const Date first = in.from.empty() ? series.front_date() : require_date(in.from, "--from");
        const Date last = in.to.empty() ? series.back_date() : require_date(in.to, "--to");
        series = series.slice(first, last);
    }
    if (series.empty()) throw Error(ErrorKind::Parse, path + ": no observations in range");
    return series;
}

PriceSeries preprocess(PriceSeries series, const FitOptions& fo) {
    if (fo.invert) series = invert_price(series);
    if (fo.standardize) series = standardize(series);
    return series;
}

FitConfig make_fit_config(const FitOptions& fo) {
    FitConfig c;
    c.m_grid = parse_grid(fo.m_grid);
    c.tc_grid_step = fo.tc_step;
    c.tc_grid_span_fraction = fo.tc_span;
    c.tolerance = fo.tolerance;
    c.max_iterations = fo.max_iterations;
    c.threads = fo.threads;
    const bool cap = fo.constraints == "standard" || (fo.constraints == "auto" && fo.standardize);
    c.constraints = cap ? ConstraintSet::standard() : ConstraintSet::raw_prices();
    if (fo.omega_mode == "strict") c.constraints = c.constraints.with_strict_lambda();
    c.validate();
    return c;
}

void emit(const Json& report, const Outputs& out) {
    const std::string text = report.dump(2) + "\n";
    if (out.report == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out.report);
    if (!f) throw Error(ErrorKind::Io, "cannot write report " + out.report);
    f << text;
}

void write_plot(const std::string& path, const PriceSeries& window, const LpplParams& params,
                const TcSummary& tc, const TradingCalendar& calendar) {
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::Io, "cannot write plot data " + path);
    write_plot_data(f, window, params, tc, calendar);
}

void add_input_options(CLI::App* cmd, InputOptions& in, bool with_range = true) {
    cmd->add_option("--date-column", in.date_column, "Date column (header name or 0-based index)");
    cmd->add_option("--value-column", in.value_column, "Value column (header name or 0-based index)");
    cmd->add_option("--label", in.label, "Series label");
    cmd->add_option("--holidays", in.holidays, "File of holiday dates, one per line");
    if (with_range) {
        cmd->add_option("--from", in.from, "First date to use");
        cmd->add_option("--to", in.to, "Last date to use");
    }
}

void add_fit_options(CLI::App* cmd, FitOptions& fo) {
    cmd->add_option("--m-grid", fo.m_grid, "m start values: start:stop:step or a,b,c");
    cmd->add_option("--tc-step", fo.tc_step, "tc start spacing in trading days");
    cmd->add_option("--tc-span", fo.tc_span, "tc starts reach last index + span * n");
    cmd->add_option("--omega-mode", fo.omega_mode, "free: 6..13, strict: 8.5..9.7")
        ->check(CLI::IsMember({"free", "strict"}));
    cmd->add_option("--constraints", fo.constraints,
                    "standard (|C|<1), raw (no amplitude cap), auto (cap iff --standardize)")
        ->check(CLI::IsMember({"auto", "standard", "raw"}));
    cmd->add_option("--tolerance", fo.tolerance, "Relative SSR tolerance");
    cmd->add_option("--max-iterations", fo.max_iterations, "Iterations per start");
    cmd->add_option("--threads", fo.threads, "Worker threads (0 = all cores)");
    cmd->add_flag("--invert", fo.invert, "Fit 1/price (negative bubbles)");
    cmd->add_flag("--standardize", fo.standardize, "Fit the mean-2/std-1 standardized series");
    cmd->add_option("--plot", fo.plot, "Write plot-data CSV here");
}

int error_exit(ErrorKind kind, const std::string& message, int code) {
    Json err;
    err["error"] = Json{{"kind", to_string(kind)}, {"message", message}, {"exit_code", code}};
    std::cerr << err.dump() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LPPL bubble detection: fits, window scans and series analytics"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file whose keys mirror the flags");

    Outputs out;
    auto add_report = [&](CLI::App* cmd) {
        cmd->add_option("--report", out.report, "JSON report path ('-' for stdout)");
    };

    // fit
    InputOptions fit_in;
    FitOptions fit_opts;
    std::string fit_path;
    auto* fit_cmd = app.add_subcommand("fit", "Fit one window with the multistart grid");
    fit_cmd->add_option("input", fit_path, "CSV price series")->required();
    add_input_options(fit_cmd, fit_in);
    add_fit_options(fit_cmd, fit_opts);
    add_report(fit_cmd);

    // scan
    InputOptions scan_in;
    FitOptions scan_opts;
    std::string scan_path, t1_first, t1_last, t2;
    int t1_step = 5;
    auto* scan_cmd = app.add_subcommand("scan", "Shrinking-window stability scan");
    scan_cmd->add_option("input", scan_path, "CSV price series")->required();
    scan_cmd->add_option("--t1-first", t1_first, "First window start")->required();
    scan_cmd->add_option("--t1-last", t1_last, "Last window start")->required();
    scan_cmd->add_option("--t1-step", t1_step, "Window start step in trading days");
    scan_cmd->add_option("--t2", t2, "Common window end")->required();
    add_input_options(scan_cmd, scan_in, false);
    add_fit_options(scan_cmd, scan_opts);
    add_report(scan_cmd);

    // correlate
    InputOptions corr_in;
    std::string corr_ref;
    std::vector<std::string> corr_others;
    std::string corr_returns = "diff";
    auto* corr_cmd = app.add_subcommand("correlate", "Pearson correlations on levels and returns");
    corr_cmd->add_option("reference", corr_ref, "Reference CSV")->required();
    corr_cmd->add_option("others", corr_others, "CSV files to correlate against")->required();
    corr_cmd->add_option("--returns", corr_returns, "diff or log")
        ->check(CLI::IsMember({"diff", "log"}));
    add_input_options(corr_cmd, corr_in);
    add_report(corr_cmd);

    // basket
    InputOptions basket_in;
    std::vector<std::string> basket_paths;
    std::string basket_out, basket_method = "standardized";
    auto* basket_cmd = app.add_subcommand("basket", "Equal-weight standardized basket");
    basket_cmd->add_option("components", basket_paths, "Component CSV files")->required();
    basket_cmd->add_option("--out", basket_out, "Basket CSV path")->required();
    basket_cmd->add_option("--method", basket_method, "standardized or raw-sum")
        ->check(CLI::IsMember({"standardized", "raw-sum"}));
    add_input_options(basket_cmd, basket_in);
    add_report(basket_cmd);

    // invert / standardize
    InputOptions unary_in;
    std::string unary_path, unary_out;
    auto* invert_cmd = app.add_subcommand("invert", "Reciprocal of every price");
    auto* std_cmd = app.add_subcommand("standardize", "Rescale to mean 2, std 1");
    for (auto* cmd : {invert_cmd, std_cmd}) {
        cmd->add_option("input", unary_path, "CSV price series")->required();
        cmd->add_option("--out", unary_out, "Output CSV path")->required();
        add_input_options(cmd, unary_in);
        add_report(cmd);
    }

    // synth
    LpplParams truth{100.0, -1.0, 0.1, 0.0, 0.5, omega_from_lambda(2.0), 0.0};
    double tc_offset = 20.0;
    SynthSpec synth;
    std::string synth_start = "2014-06-12", synth_out, truth_out;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic LPPL series");
    synth_cmd->add_option("--A", truth.A, "Level offset");
    synth_cmd->add_option("--B", truth.B, "Power-law amplitude");
    synth_cmd->add_option("--C1", truth.C1, "Cosine amplitude");
    synth_cmd->add_option("--C2", truth.C2, "Sine amplitude");
    synth_cmd->add_option("--m", truth.m, "Exponent");
    synth_cmd->add_option("--omega", truth.omega, "Log-frequency");
    synth_cmd->add_option("--tc-offset", tc_offset, "tc in trading days past the last point");
    synth_cmd->add_option("--n", synth.n, "Number of observations");
    synth_cmd->add_option("--sigma", synth.noise_sigma, "Gaussian noise standard deviation");
    synth_cmd->add_option("--seed", synth.seed, "Noise seed");
    synth_cmd->add_option("--start-date", synth_start, "First date");
    synth_cmd->add_option("--out", synth_out, "Series CSV path")->required();
    synth_cmd->add_option("--truth", truth_out, "Ground-truth JSON path (default: <out>.truth.json)");
    add_report(synth_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        return error_exit(ErrorKind::InvalidArgument, e.what(), kExitUsage);
    }

    try {
        if (*fit_cmd) {
            const TradingCalendar calendar = make_calendar(fit_in);
            const PriceSeries series = preprocess(load_input(fit_path, fit_in), fit_opts);
            const FitConfig config = make_fit_config(fit_opts);
            const FitResult fit = fit_window(series, config);
            write_plot(fit_opts.plot, series, fit.params, summarize_tc(fit, calendar), calendar);
            Json cfg = to_json(config);
            cfg["invert"] = fit_opts.invert;
            cfg["standardize"] = fit_opts.standardize;
            emit(make_report("fit", describe(series), cfg, to_json(fit, calendar)), out);
        } else if (*scan_cmd) {
            ScanConfig config;
            config.t1_first = require_date(t1_first, "--t1-first");
            config.t1_last = require_date(t1_last, "--t1-last");
            config.t1_step = t1_step;
            config.t2 = require_date(t2, "--t2");
            config.fit = make_fit_config(scan_opts);
            config.calendar = make_calendar(scan_in);
            const PriceSeries series = preprocess(load_input(scan_path, scan_in), scan_opts);
            const ScanResult result = scan(series, config);
            const PriceSeries best_window = series.slice(result.best.window_start, config.t2);
            write_plot(scan_opts.plot, best_window, result.best.params, summarize_tc(result),
                       config.calendar);
            Json cfg = to_json(config);
            cfg["invert"] = scan_opts.invert;
            cfg["standardize"] = scan_opts.standardize;
            emit(make_report("scan", describe(series), cfg, to_json(result, config.calendar)), out);
        } else if (*corr_cmd) {
            const PriceSeries ref = load_input(corr_ref, corr_in);
            std::vector<PriceSeries> others;
            Json inputs = Json::array({describe(ref)});
            for (const auto& p : corr_others) {
                InputOptions in = corr_in;
                in.label.clear();
                others.push_back(load_input(p, in));
                inputs.push_back(describe(others.back()));
            }
            const auto kind = corr_returns == "log" ? ReturnKind::Log : ReturnKind::Difference;
            emit(make_report("correlate", inputs, Json{{"returns", corr_returns}},
                             to_json(correlate(ref, others, kind))),
                 out);
        } else if (*basket_cmd) {
            std::vector<PriceSeries> parts;
            Json inputs = Json::array();
            for (const auto& p : basket_paths) {
                InputOptions in = basket_in;
                in.label.clear();
                parts.push_back(load_input(p, in));
                inputs.push_back(describe(parts.back()));
            }
            const auto method =
                basket_method == "raw-sum" ? BasketMethod::RawSum : BasketMethod::Standardized;
            PriceSeries basket = build_basket(parts, method);
            if (!basket_in.label.empty()) basket = basket.with_label(basket_in.label);
            write_csv(basket_out, basket);
            emit(make_report("basket", inputs, Json{{"method", basket_method}},
                             Json{{"output", basket_out}, {"series", describe(basket)}}),
                 out);
        } else if (*invert_cmd || *std_cmd) {
            const bool inverting = static_cast<bool>(*invert_cmd);
            const PriceSeries in = load_input(unary_path, unary_in);
            const PriceSeries result = inverting ? invert_price(in) : standardize(in);
            write_csv(unary_out, result);
            emit(make_report(inverting ? "invert" : "standardize", describe(in), Json::object(),
                             Json{{"output", unary_out}, {"series", describe(result)}}),
                 out);
        } else if (*synth_cmd) {
            synth.start_date = require_date(synth_start, "--start-date");
            truth.tc = static_cast<double>(synth.n) - 1.0 + tc_offset;
            synth.params = truth;
            const PriceSeries series = generate(synth);
            write_csv(synth_out, series);
            const std::string truth_path = truth_out.empty() ? synth_out + ".truth.json" : truth_out;
            std::ofstream tf(truth_path);
            if (!tf) throw Error(ErrorKind::Io, "cannot write " + truth_path);
            tf << truth_to_json(synth).dump(2) << '\n';
            emit(make_report("synth", Json::object(), truth_to_json(synth),
                             Json{{"output", synth_out},
                                  {"truth", truth_path},
                                  {"series", describe(series)}}),
                 out);
        }
    } catch (const Error& e) {
        int code = kExitData;
        if (e.kind() == ErrorKind::NoFeasibleFit) code = kExitNoFit;
        if (e.kind() == ErrorKind::InvalidArgument) code = kExitUsage;
        return error_exit(e.kind(), e.what(), code);
    } catch (const std::exception& e) {
        return error_exit(ErrorKind::InvalidArgument, e.what(), kExitUsage);
    }
    return 0;
}
