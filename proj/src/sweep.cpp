#include "wpn/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wpn/fade_moments.hpp"
#include "wpn/fade_oracle.hpp"
#include "wpn/version.hpp"

namespace wpn {

namespace {
constexpr double pi = 3.141592653589793238463;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

Field opt_field(const std::optional<double>& v) {
    if (v)
        return Field{*v};
    return Field{std::monostate{}};
}
} // namespace

int samples_per_symbol(LRule rule, double beta, double snr_linear, int L_fixed) {
    if (rule == LRule::fixed)
        return L_fixed;
    const int L = static_cast<int>(std::ceil(beta * std::sqrt(snr_linear)));
    return L < 1 ? 1 : L;
}

void SweepSpec::validate() const {
    if (!(snr_db_start <= snr_db_stop))
        throw std::invalid_argument("sweep: snr_db_start must be <= snr_db_stop");
    if (!(snr_db_step > 0.0))
        throw std::invalid_argument("sweep: snr_db_step must be > 0");
    if (!(beta > 0.0))
        throw std::invalid_argument("sweep: beta must be > 0");
    if (!(sigma2_N > 0.0))
        throw std::invalid_argument("sweep: sigma2_N must be > 0");
    if (L_rule == LRule::fixed && L_fixed < 1)
        throw std::invalid_argument("sweep: fixed L must be >= 1");
    if (J < 1)
        throw std::invalid_argument("sweep: J must be >= 1");
    if (!(p_min_frac > 0.0) || !(p_min_frac < 1.0))
        throw std::invalid_argument("sweep: p_min_frac must be in (0, 1)");
    if (threads < 1)
        throw std::invalid_argument("sweep: threads must be >= 1");
}

std::vector<double> SweepSpec::snr_db_grid() const {
    std::vector<double> grid;
    const double span = snr_db_stop - snr_db_start;
    const std::size_t n = static_cast<std::size_t>(std::floor(span / snr_db_step + 1e-9)) + 1;
    grid.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        grid.push_back(snr_db_start + static_cast<double>(i) * snr_db_step);
    return grid;
}

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    const std::vector<double> grid = spec.snr_db_grid();

    SweepResult result;
    result.rows.reserve(grid.size());
    std::vector<RateEstimate> analytic;
    std::vector<RateEstimate> mc;
    analytic.reserve(grid.size());

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double snr_db = grid[i];
        const double snr = db_to_linear(snr_db);
        const int L = samples_per_symbol(spec.L_rule, spec.beta, snr, spec.L_fixed);
        const ChannelConfig cfg = ChannelConfig::make(spec.beta, spec.sigma2_N, L, spec.J);
        const RateEstimate an = analytic_rate_lower_bound(snr, cfg);
        analytic.push_back(an);

        SweepRow row;
        row.snr_db = snr_db;
        row.snr_linear = snr;
        row.L = L;
        row.delta = cfg.delta;
        row.msG = mean_square_G_deviation(cfg);
        row.analytic_lb_nats = an.value_nats;
        row.analytic_gap_nats = an.gap_nats;
        row.trials = spec.trials;
        if (spec.trials > 0) {
            const InputLaw law =
                InputLaw::make(snr * spec.sigma2_N, spec.p_min_frac * snr * spec.sigma2_N);
            McBoundOptions opt;
            opt.threads = spec.threads;
            opt.trial_base = static_cast<std::uint64_t>(i) * spec.trials;
            const RateEstimate est =
                mc_rate_lower_bound(snr, cfg, law, spec.trials, spec.seed, opt);
            mc.push_back(est);
            row.mc_lb_nats = est.value_nats;
            row.mc_stderr = est.stderr_nats;
        }
        result.rows.push_back(row);
    }

    // Slope summary over the tail of the grid (default: top half). The fit
    // needs >= 4 points spanning >= 20 dB; otherwise it is not applicable.
    std::size_t window = spec.fit_window > 0
                             ? static_cast<std::size_t>(spec.fit_window)
                             : (grid.size() + 1) / 2;
    window = std::min(window, grid.size());
    result.fit_points = window;
    if (window >= 4) {
        const std::vector<RateEstimate> tail(analytic.end() - static_cast<std::ptrdiff_t>(window),
                                             analytic.end());
        try {
            result.fit = prelog_fit(tail);
        } catch (const std::invalid_argument&) {
            result.fit.reset();
        }
        if (spec.trials > 0) {
            const std::vector<RateEstimate> tail_mc(mc.end() - static_cast<std::ptrdiff_t>(window),
                                                    mc.end());
            try {
                result.fit_mc = prelog_fit(tail_mc);
            } catch (const std::invalid_argument&) {
                result.fit_mc.reset();
            }
        }
    }
    return result;
}

std::vector<MomentRow> run_moments(double beta, const std::vector<double>& deltas, int J,
                                   std::uint64_t trials, std::uint64_t seed, int threads) {
    if (deltas.empty())
        throw std::invalid_argument("moments: need at least one delta");
    std::vector<MomentRow> rows;
    rows.reserve(deltas.size());
    std::uint64_t stream_base = 0;
    for (const double delta_req : deltas) {
        if (!(delta_req > 0.0) || !(delta_req <= 1.0))
            throw std::invalid_argument("moments: delta must be in (0, 1]");
        const int L = std::max(1, static_cast<int>(std::llround(1.0 / delta_req)));
        const ChannelConfig cfg = ChannelConfig::make(beta, 1.0, L, J);
        const FadeMoments fm = fade_moments(cfg);

        MomentRow row;
        row.beta = beta;
        row.delta = cfg.delta;
        row.L = L;
        row.a = cfg.a;
        row.m2 = fm.m2;
        row.m2_method = moment_F2_method(cfg.a) == EvalMethod::series ? "series" : "direct";
        row.m4 = fm.m4;
        row.m4_method = moment_F4_method(cfg.a) == EvalMethod::series ? "series" : "direct";
        row.var_F2 = fm.var_F2;
        row.msG = fm.msG;
        row.msG_over_delta2 = fm.msG / (cfg.delta * cfg.delta);
        row.limit_value = pi * pi * beta * beta / 9.0;
        row.trials = trials;
        if (trials > 0) {
            const FadeOracleResult oracle =
                mc_fade_oracle(cfg, trials, seed, threads, stream_base);
            stream_base += trials;
            row.m2_mc = oracle.m2;
            row.m2_mc_se = oracle.m2_se;
            row.m4_mc = oracle.m4;
            row.m4_mc_se = oracle.m4_se;
            row.msG_mc = oracle.msG;
            row.msG_mc_se = oracle.msG_se;
        }
        rows.push_back(row);
    }
    return rows;
}

Table sweep_table(const SweepSpec& spec, const SweepResult& result) {
    const bool bits = spec.units == RateUnits::bits;
    const double scale = bits ? 1.0 / std::log(2.0) : 1.0;
    const std::string suffix = bits ? "_bits" : "_nats";

    Table t;
    t.comments.push_back(std::string("wpnlab ") + version);
    t.comments.push_back(
        "sweep beta=" + format_double(spec.beta) + " sigma2_N=" + format_double(spec.sigma2_N) +
        " snr_db=" + format_double(spec.snr_db_start) + ":" + format_double(spec.snr_db_stop) +
        ":" + format_double(spec.snr_db_step) +
        " L_rule=" + (spec.L_rule == LRule::sqrt_scaling ? "sqrt" : "fixed") +
        (spec.L_rule == LRule::fixed ? " L=" + std::to_string(spec.L_fixed) : std::string{}) +
        " J=" + std::to_string(spec.J) + " trials=" + std::to_string(spec.trials) +
        " seed=" + std::to_string(spec.seed) +
        " units=" + (bits ? "bits" : "nats"));
    if (result.fit) {
        t.comments.push_back("prelog_fit slope=" + format_double(result.fit->slope * scale) +
                             " intercept=" + format_double(result.fit->intercept * scale) +
                             " points=" + std::to_string(result.fit_points) +
                             " (analytic bound vs ln snr)");
    } else {
        t.comments.push_back("prelog_fit not applicable (need >= 4 points spanning >= 20 dB)");
    }
    if (result.fit_mc)
        t.comments.push_back("prelog_fit_mc slope=" + format_double(result.fit_mc->slope * scale) +
                             " intercept=" + format_double(result.fit_mc->intercept * scale));

    t.columns = {"snr_db",
                 "snr_linear",
                 "L",
                 "delta",
                 "msG",
                 "analytic_lb" + suffix,
                 "analytic_gap" + suffix,
                 "mc_lb" + suffix,
                 "mc_stderr",
                 "trials"};
    for (const SweepRow& r : result.rows) {
        std::vector<Field> row;
        row.emplace_back(r.snr_db);
        row.emplace_back(r.snr_linear);
        row.emplace_back(static_cast<std::int64_t>(r.L));
        row.emplace_back(r.delta);
        row.emplace_back(r.msG);
        row.emplace_back(r.analytic_lb_nats * scale);
        row.emplace_back(r.analytic_gap_nats * scale);
        row.push_back(r.mc_lb_nats ? Field{*r.mc_lb_nats * scale} : Field{std::monostate{}});
        row.push_back(r.mc_stderr ? Field{*r.mc_stderr * scale} : Field{std::monostate{}});
        row.emplace_back(r.trials);
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table moments_table(double beta, int J, std::uint64_t trials, std::uint64_t seed,
                    const std::vector<MomentRow>& rows) {
    Table t;
    t.comments.push_back(std::string("wpnlab ") + version);
    t.comments.push_back("moments beta=" + format_double(beta) + " J=" + std::to_string(J) +
                         " trials=" + std::to_string(trials) +
                         " seed=" + std::to_string(seed));
    t.columns = {"beta",     "delta",        "L",
                 "a",        "m2",           "m2_method",
                 "m4",       "m4_method",    "var_F2",
                 "msG",      "msG_over_delta2", "limit_pi_beta_sq_over_9",
                 "m2_mc",    "m2_mc_se",     "m4_mc",
                 "m4_mc_se", "msG_mc",       "msG_mc_se",
                 "trials"};
    for (const MomentRow& r : rows) {
        std::vector<Field> row;
        row.emplace_back(r.beta);
        row.emplace_back(r.delta);
        row.emplace_back(static_cast<std::int64_t>(r.L));
        row.emplace_back(r.a);
        row.emplace_back(r.m2);
        row.emplace_back(r.m2_method);
        row.emplace_back(r.m4);
        row.emplace_back(r.m4_method);
        row.emplace_back(r.var_F2);
        row.emplace_back(r.msG);
        row.emplace_back(r.msG_over_delta2);
        row.emplace_back(r.limit_value);
        row.push_back(opt_field(r.m2_mc));
        row.push_back(opt_field(r.m2_mc_se));
        row.push_back(opt_field(r.m4_mc));
        row.push_back(opt_field(r.m4_mc_se));
        row.push_back(opt_field(r.msG_mc));
        row.push_back(opt_field(r.msG_mc_se));
        row.emplace_back(r.trials);
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace wpn
