#pragma once

#include "wpn/config.hpp"

namespace wpn {

enum class EvalMethod { direct, series, limit };

// Closed-form fade moments in the variable a = exp(-pi*beta*delta).
// Both formulas cancel catastrophically as a -> 1, so below a crossover in
// x = log(a) they switch to Taylor series with precomputed coefficients.
//   m2 = E|F1|^2 = 2*(a - 1 - log a) / (log a)^2
//   m4 = E|F1|^4 = (783 - 784a + a^4 + 540 log a + 240 a log a
//                   + 144 (log a)^2) / (18 (log a)^4)
double moment_F2(double a);
double moment_F4(double a);
EvalMethod moment_F2_method(double a);
EvalMethod moment_F4_method(double a);

// moment_F2(a) - 1 with full relative accuracy even as a -> 1 (needed so
// that msG keeps relative accuracy for arbitrarily small beta*delta).
double moment_F2_minus_1(double a);
// moment_F4(a) - moment_F2(a)^2 >= 0 with the same stability guarantee.
double var_F2(double a);

struct FadeMoments {
    double m2 = 1.0;
    double m4 = 1.0;
    double var_F2 = 0.0; // m4 - m2^2
    double msG = 0.0;    // E[(G-1)^2] = var_F2/L + (m2-1)^2
    double a = 1.0;
};

FadeMoments fade_moments(const ChannelConfig& cfg);

// E[(G-1)^2] assembled from the closed forms with L taken from cfg.
double mean_square_G_deviation(const ChannelConfig& cfg);

namespace detail {
// Branch implementations exposed for crossover-continuity tests.
double moment_F2_direct(double x);      // x = log a
double moment_F2_series(double x);
double moment_F4_direct(double x);
double moment_F4_series(double x);
double var_F2_series(double x);
// Extended-precision direct evaluations (long double), test oracles for the
// series branches at their crossovers.
long double moment_F2_direct_ld(long double x);
long double moment_F4_direct_ld(long double x);
} // namespace detail

} // namespace wpn
