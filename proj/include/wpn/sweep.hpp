#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wpn/config.hpp"
#include "wpn/rate_bounds.hpp"
#include "wpn/table_io.hpp"

namespace wpn {

enum class LRule { sqrt_scaling, fixed };
enum class OutFormat { csv, json };
enum class RateUnits { nats, bits };

// L = ceil(beta * sqrt(snr)) (at least 1) under the sqrt rule.
int samples_per_symbol(LRule rule, double beta, double snr_linear, int L_fixed);

struct SweepSpec {
    double snr_db_start = 40.0;
    double snr_db_stop = 80.0;
    double snr_db_step = 5.0;
    double beta = 1.0;
    double sigma2_N = 1.0;
    LRule L_rule = LRule::sqrt_scaling;
    int L_fixed = 16;
    int J = 64;
    std::uint64_t trials = 0; // 0 = analytic only
    std::uint64_t seed = 1;
    int threads = 1;
    double p_min_frac = 0.5;     // P_min = p_min_frac * P
    int fit_window = 0;          // 0 = top half of the grid
    RateUnits units = RateUnits::nats;
    OutFormat format = OutFormat::csv;
    std::string output_path;     // empty = stdout

    void validate() const;
    std::vector<double> snr_db_grid() const;
};

struct SweepRow {
    double snr_db = 0.0;
    double snr_linear = 0.0;
    int L = 1;
    double delta = 1.0;
    double msG = 0.0;
    double analytic_lb_nats = 0.0;
    double analytic_gap_nats = 0.0;
    std::optional<double> mc_lb_nats;
    std::optional<double> mc_stderr;
    std::uint64_t trials = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::optional<PrelogFit> fit;    // over the analytic bound
    std::optional<PrelogFit> fit_mc; // over the MC bound, when trials > 0
    std::size_t fit_points = 0;      // rows in the fit window (tail of grid)
};

SweepResult run_sweep(const SweepSpec& spec);

// Moment-table row for one requested delta. L is round(Ts/delta) so that the
// msG column matches a realizable configuration; delta is recomputed as Ts/L.
struct MomentRow {
    double beta = 0.0;
    double delta = 0.0;
    int L = 1;
    double a = 0.0;
    double m2 = 1.0;
    std::string m2_method;
    double m4 = 1.0;
    std::string m4_method;
    double var_F2 = 0.0;
    double msG = 0.0;
    double msG_over_delta2 = 0.0;
    double limit_value = 0.0; // (pi*beta)^2 / 9
    std::optional<double> m2_mc, m2_mc_se;
    std::optional<double> m4_mc, m4_mc_se;
    std::optional<double> msG_mc, msG_mc_se;
    std::uint64_t trials = 0;
};

std::vector<MomentRow> run_moments(double beta, const std::vector<double>& deltas, int J,
                                   std::uint64_t trials, std::uint64_t seed, int threads = 1);

// Table renderings (shared by the CLI and the determinism tests).
Table sweep_table(const SweepSpec& spec, const SweepResult& result);
Table moments_table(double beta, int J, std::uint64_t trials, std::uint64_t seed,
                    const std::vector<MomentRow>& rows);

} // namespace wpn
