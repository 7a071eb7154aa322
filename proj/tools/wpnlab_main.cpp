#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wpn/channel.hpp"
#include "wpn/mc.hpp"
#include "wpn/sweep.hpp"
#include "wpn/table_io.hpp"
#include "wpn/version.hpp"

namespace {

using nlohmann::json;

struct CliDefaults {
    double beta = 1.0;
    double sigma2_n = 1.0;
    std::string snr_db_range;
    double snr_db = 20.0;
    int L = 16;
    std::string L_rule = "sqrt";
    int J = 64;
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    int threads = wpn::default_thread_count();
    std::string format = "csv";
    std::string out;
    std::string units = "nats";
    std::string deltas = "0.1,0.01,0.001";
    int symbols = 4;
    double p_min_frac = 0.5;
    int fit_window = 0;
};

// --config JSON file: values below CLI flags, above built-in defaults.
void apply_config_file(CliDefaults& d, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    json j = json::parse(in);
    if (j.contains("beta")) d.beta = j["beta"].get<double>();
    if (j.contains("sigma2_n")) d.sigma2_n = j["sigma2_n"].get<double>();
    if (j.contains("snr_db_range")) d.snr_db_range = j["snr_db_range"].get<std::string>();
    if (j.contains("snr_db")) d.snr_db = j["snr_db"].get<double>();
    if (j.contains("L")) d.L = j["L"].get<int>();
    if (j.contains("L_rule")) d.L_rule = j["L_rule"].get<std::string>();
    if (j.contains("J")) d.J = j["J"].get<int>();
    if (j.contains("trials")) d.trials = j["trials"].get<std::uint64_t>();
    if (j.contains("seed")) d.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("threads")) d.threads = j["threads"].get<int>();
    if (j.contains("format")) d.format = j["format"].get<std::string>();
    if (j.contains("out")) d.out = j["out"].get<std::string>();
    if (j.contains("units")) d.units = j["units"].get<std::string>();
    if (j.contains("delta")) {
        if (j["delta"].is_array()) {
            std::string acc;
            for (const auto& v : j["delta"])
                acc += (acc.empty() ? "" : ",") + wpn::format_double(v.get<double>());
            d.deltas = acc;
        } else {
            d.deltas = wpn::format_double(j["delta"].get<double>());
        }
    }
    if (j.contains("symbols")) d.symbols = j["symbols"].get<int>();
    if (j.contains("p_min_frac")) d.p_min_frac = j["p_min_frac"].get<double>();
    if (j.contains("fit_window")) d.fit_window = j["fit_window"].get<int>();
}

std::vector<double> parse_delta_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty())
            out.push_back(std::stod(tok));
    return out;
}

void parse_range(const std::string& s, double& a, double& b, double& step) {
    std::stringstream ss(s);
    std::string tok;
    std::vector<double> parts;
    while (std::getline(ss, tok, ':'))
        parts.push_back(std::stod(tok));
    if (parts.size() != 3)
        throw std::runtime_error("--snr-db-range must be A:B:S");
    a = parts[0];
    b = parts[1];
    step = parts[2];
}

wpn::OutFormat parse_format(const std::string& s) {
    if (s == "csv")
        return wpn::OutFormat::csv;
    if (s == "json")
        return wpn::OutFormat::json;
    throw std::runtime_error("--format must be csv or json");
}

wpn::RateUnits parse_units(const std::string& s) {
    if (s == "nats")
        return wpn::RateUnits::nats;
    if (s == "bits")
        return wpn::RateUnits::bits;
    throw std::runtime_error("--units must be nats or bits");
}

wpn::LRule parse_l_rule(const std::string& s) {
    if (s == "sqrt")
        return wpn::LRule::sqrt_scaling;
    if (s == "fixed")
        return wpn::LRule::fixed;
    throw std::runtime_error("--L-rule must be sqrt or fixed");
}

// Data rows go to --out (atomically) or stdout; progress goes to stderr.
void emit(const wpn::Table& t, wpn::OutFormat format, const std::string& out_path) {
    std::ostringstream os;
    if (format == wpn::OutFormat::csv)
        wpn::write_csv(os, t);
    else
        wpn::write_json(os, t);
    if (out_path.empty())
        std::cout << os.str();
    else
        wpn::atomic_write_file(out_path, os.str());
}

int run(int argc, char** argv) {
    CliDefaults d;
    // Pre-scan for --config so its values become the CLI defaults.
    for (int i = 1; i < argc - 1; ++i)
        if (std::string(argv[i]) == "--config")
            apply_config_file(d, argv[i + 1]);

    CLI::App app{std::string("wpnlab ") + wpn::version +
                 " - oversampled Wiener phase-noise channel laboratory"};
    app.require_subcommand(1);
    std::string config_path; // consumed by the pre-scan; declared so CLI11 accepts it

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file (CLI flags override it)");
        sub->add_option("--beta", d.beta, "linewidth FWHM in 1/Ts units");
        sub->add_option("--seed", d.seed, "RNG seed");
        sub->add_option("--threads", d.threads, "worker threads");
        sub->add_option("--format", d.format, "csv | json");
        sub->add_option("--out", d.out, "output path (default: stdout)");
    };

    CLI::App* sweep = app.add_subcommand("sweep", "SNR sweep of the rate lower bounds");
    add_common(sweep);
    sweep->add_option("--snr-db-range", d.snr_db_range, "grid A:B:S in dB");
    sweep->add_option("--snr-db", d.snr_db, "single-point grid (alternative to range)");
    sweep->add_option("--L-rule", d.L_rule, "sqrt | fixed");
    sweep->add_option("--L", d.L, "samples per symbol for --L-rule fixed");
    sweep->add_option("--J", d.J, "sub-steps per sample interval");
    sweep->add_option("--trials", d.trials, "MC trials per grid point (0 = analytic only)");
    sweep->add_option("--sigma2-n", d.sigma2_n, "noise variance parameter");
    sweep->add_option("--units", d.units, "nats | bits");
    sweep->add_option("--p-min-frac", d.p_min_frac, "P_min as a fraction of P");
    sweep->add_option("--fit-window", d.fit_window, "points in the slope fit (0 = top half)");

    CLI::App* moments = app.add_subcommand("moments", "fade moment table (closed form + MC oracle)");
    add_common(moments);
    moments->add_option("--delta", d.deltas, "comma-separated sample intervals");
    moments->add_option("--J", d.J, "sub-steps per sample interval");
    moments->add_option("--trials", d.trials, "MC oracle fade draws (0 = closed forms only)");

    CLI::App* bound = app.add_subcommand("bound", "analytic and MC bound at one SNR point");
    add_common(bound);
    bound->add_option("--snr-db", d.snr_db, "SNR in dB");
    bound->add_option("--L-rule", d.L_rule, "sqrt | fixed");
    bound->add_option("--L", d.L, "samples per symbol for --L-rule fixed");
    bound->add_option("--J", d.J, "sub-steps per sample interval");
    bound->add_option("--trials", d.trials, "MC trials (0 = analytic only)");
    bound->add_option("--sigma2-n", d.sigma2_n, "noise variance parameter");
    bound->add_option("--units", d.units, "nats | bits");
    bound->add_option("--p-min-frac", d.p_min_frac, "P_min as a fraction of P");

    CLI::App* simulate = app.add_subcommand("simulate", "debug dump of oversampled frames");
    add_common(simulate);
    simulate->add_option("--snr-db", d.snr_db, "sets the symbol amplitude, X = sqrt(snr*sigma2_n)");
    simulate->add_option("--L", d.L, "samples per symbol");
    simulate->add_option("--J", d.J, "sub-steps per sample interval");
    simulate->add_option("--sigma2-n", d.sigma2_n, "noise variance parameter");
    simulate->add_option("--symbols", d.symbols, "number of symbols");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const wpn::OutFormat format = parse_format(d.format);

    if (sweep->parsed()) {
        wpn::SweepSpec spec;
        if (!d.snr_db_range.empty()) {
            parse_range(d.snr_db_range, spec.snr_db_start, spec.snr_db_stop, spec.snr_db_step);
        } else {
            spec.snr_db_start = spec.snr_db_stop = d.snr_db;
            spec.snr_db_step = 1.0;
        }
        spec.beta = d.beta;
        spec.sigma2_N = d.sigma2_n;
        spec.L_rule = parse_l_rule(d.L_rule);
        spec.L_fixed = d.L;
        spec.J = d.J;
        spec.trials = d.trials;
        spec.seed = d.seed;
        spec.threads = d.threads;
        spec.p_min_frac = d.p_min_frac;
        spec.fit_window = d.fit_window;
        spec.units = parse_units(d.units);
        spec.format = format;
        spec.output_path = d.out;
        if (spec.trials > 0)
            std::cerr << "# sweep: " << spec.snr_db_grid().size() << " grid points, "
                      << spec.trials << " trials each\n";
        const wpn::SweepResult result = wpn::run_sweep(spec);
        emit(wpn::sweep_table(spec, result), format, d.out);
        if (result.fit)
            std::cerr << "# prelog slope (analytic, " << result.fit_points
                      << "-point window): " << wpn::format_double(result.fit->slope) << "\n";
        return 0;
    }

    if (moments->parsed()) {
        const std::vector<double> deltas = parse_delta_list(d.deltas);
        const auto rows = wpn::run_moments(d.beta, deltas, d.J, d.trials, d.seed, d.threads);
        emit(wpn::moments_table(d.beta, d.J, d.trials, d.seed, rows), format, d.out);
        return 0;
    }

    if (bound->parsed()) {
        const double snr = std::pow(10.0, d.snr_db / 10.0);
        const int L = wpn::samples_per_symbol(parse_l_rule(d.L_rule), d.beta, snr, d.L);
        const wpn::ChannelConfig cfg = wpn::ChannelConfig::make(d.beta, d.sigma2_n, L, d.J);
        const bool bits = parse_units(d.units) == wpn::RateUnits::bits;
        const double scale = bits ? 1.0 / std::log(2.0) : 1.0;
        const std::string suffix = bits ? "_bits" : "_nats";

        wpn::Table t;
        t.comments.push_back(std::string("wpnlab ") + wpn::version);
        t.comments.push_back("bound snr_db=" + wpn::format_double(d.snr_db) +
                             " beta=" + wpn::format_double(d.beta) + " L=" + std::to_string(L) +
                             " J=" + std::to_string(d.J) + " trials=" + std::to_string(d.trials) +
                             " seed=" + std::to_string(d.seed));
        t.columns = {"kind", "snr_db", "snr_linear", "L", "delta",
                     "value" + suffix, "gap" + suffix, "stderr", "trials"};
        auto push = [&](const char* kind, const wpn::RateEstimate& e) {
            t.rows.push_back({wpn::Field{std::string(kind)}, wpn::Field{d.snr_db},
                              wpn::Field{e.snr}, wpn::Field{static_cast<std::int64_t>(e.L)},
                              wpn::Field{cfg.delta}, wpn::Field{e.value_nats * scale},
                              wpn::Field{e.gap_nats * scale}, wpn::Field{e.stderr_nats * scale},
                              wpn::Field{e.trials}});
        };
        push("analytic", wpn::analytic_rate_lower_bound(snr, cfg));
        if (d.trials > 0) {
            const wpn::InputLaw law =
                wpn::InputLaw::make(snr * d.sigma2_n, d.p_min_frac * snr * d.sigma2_n);
            wpn::McBoundOptions opt;
            opt.threads = d.threads;
            push("monte_carlo",
                 wpn::mc_rate_lower_bound(snr, cfg, law, d.trials, d.seed, opt));
        }
        emit(t, format, d.out);
        return 0;
    }

    // simulate
    const double snr = std::pow(10.0, d.snr_db / 10.0);
    const wpn::ChannelConfig cfg = wpn::ChannelConfig::make(d.beta, d.sigma2_n, d.L, d.J);
    if (d.symbols < 1)
        throw std::runtime_error("simulate: --symbols must be >= 1");
    const wpn::cplx x{std::sqrt(snr * d.sigma2_n), 0.0};
    const wpn::SymbolBlock block = wpn::SymbolBlock::constant(x, static_cast<std::size_t>(d.symbols));
    const wpn::RngStream root(d.seed);
    const auto frames = wpn::channel_transmit(block, cfg, root.stream(0));

    wpn::Table t;
    t.comments.push_back(std::string("wpnlab ") + wpn::version);
    t.comments.push_back("simulate beta=" + wpn::format_double(d.beta) +
                         " sigma2_n=" + wpn::format_double(d.sigma2_n) + " L=" + std::to_string(d.L) +
                         " J=" + std::to_string(d.J) + " symbols=" + std::to_string(d.symbols) +
                         " snr_db=" + wpn::format_double(d.snr_db) +
                         " seed=" + std::to_string(d.seed));
    t.columns = {"k", "re_y", "im_y", "theta", "re_fade", "im_fade"};
    std::int64_t k = 1;
    for (const auto& f : frames)
        for (std::size_t l = 0; l < f.y.size(); ++l, ++k)
            t.rows.push_back({wpn::Field{k}, wpn::Field{f.y[l].real()}, wpn::Field{f.y[l].imag()},
                              wpn::Field{f.theta[l]}, wpn::Field{f.fade[l].real()},
                              wpn::Field{f.fade[l].imag()}});
    emit(t, format, d.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
