#include "wpn/fade_moments.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>
#include <string>

namespace wpn {

namespace {

// Series crossovers in |x| = |log a|. The second-moment formula only loses
// ~2*eps/|x| to cancellation, so it can switch late; the fourth-moment
// numerator is a ~783-sized alternating sum over an 18*x^4 denominator and
// is unusable in double precision until |x| is O(1).
constexpr double x2_crossover = 1e-2;
constexpr double x4_crossover = 0.5;

// Taylor coefficients of m2(x) = 2*(e^x - 1 - x)/x^2 = sum 2 x^k/(k+2)!.
constexpr double m2_coeff[] = {
    1.0,
    0.3333333333333333333333,   // 1/3
    0.08333333333333333333333,  // 1/12
    0.01666666666666666666667,  // 1/60
    0.002777777777777777777778, // 1/360
    0.0003968253968253968253968,
    0.0000496031746031746031746,
    5.511463844797178130511e-6,
    5.511463844797178130511e-7,
    5.01042167708834375501e-8,
    4.175351397573619795842e-9,
    3.211808767364322919878e-10,
    2.29414911954594494277e-11,
    1.52943274636396329518e-12,
};

// Taylor coefficients of m4(x), generated once by symbolic expansion of the
// closed form (exact rationals, rounded to double).
constexpr double m4_coeff[] = {
    1.0,
    0.6666666666666666666667,  // 2/3
    0.3666666666666666666667,  // 11/30
    0.1904761904761904761905,  // 4/21
    0.09186507936507936507937, // 463/5040
    0.04034391534391534391534,
    0.01607804232804232804233,
    0.00584014750681417348084,
    0.001946097883597883597884,
    0.0005987453904120570787237,
    0.000171065798545957276116,
    0.00004561722815691069659324,
    0.00001140428524481103846183,
    2.683359839590387365053e-6,
    5.963021028566922850562e-7,
    1.25537280076849315851e-7,
    2.510745576217429757416e-8,
    4.782372513288588295589e-9,
    8.695222745241630091926e-10,
    1.512212651061673126211e-10,
    2.520354418311051041502e-11,
    4.032567069245074552082e-12,
    6.203949337278889351498e-13,
    9.191036055219755638323e-14,
    1.313005150745372379271e-14,
    1.811041587234885999963e-15,
};

// Taylor coefficients of (m4(x) - m2(x)^2)/x^2, same provenance.
constexpr double var_coeff[] = {
    0.08888888888888888888889, // 4/45
    0.1015873015873015873016,  // 32/315
    0.06825396825396825396825,
    0.03492063492063492063492,
    0.01497354497354497354497,
    0.005637325637325637325637,
    0.001912110523221634332745,
    0.0005935011490567046122602,
    0.0001703154282519361884441,
    0.00004551709313614075518837,
    0.00001139176263184199692136,
    2.681886231139265686418e-6,
    5.961383473422239545973e-7,
    1.255200414705022266045e-7,
    2.510573183906276077518e-8,
    4.782208327003438030305e-9,
    8.695073483487741624099e-10,
    1.512199671710646507919e-10,
    2.52034360215553955495e-11,
    4.032558416308287218295e-12,
    6.203942681168709132981e-13,
    9.191031124765860083782e-14,
    1.313004798570023279767e-14,
    1.811041344355309562541e-15,
};

constexpr double pi = 3.141592653589793238463;

double horner_n(const double* c, std::size_t n, double x) {
    double acc = c[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        acc = acc * x + c[i];
    return acc;
}

template <std::size_t N>
double horner(const double (&c)[N], double x) {
    return horner_n(c, N, x);
}

void check_domain(double a, const char* who) {
    if (!(a > 0.0) || !(a <= 1.0))
        throw std::domain_error(std::string(who) + ": a must be in (0, 1]");
}

} // namespace

namespace detail {

double moment_F2_direct(double x) {
    // expm1 keeps the numerator's cancellation error at ~eps*|x| instead of
    // the ~eps loss of exp(x) - 1 - x
    return 2.0 * (std::expm1(x) - x) / (x * x);
}

double moment_F2_series(double x) { return horner(m2_coeff, x); }

double moment_F4_direct(double x) {
    const double a = std::exp(x);
    const double a4 = a * a * a * a;
    const double num = 783.0 - 784.0 * a + a4 + 540.0 * x + 240.0 * a * x + 144.0 * x * x;
    const double x2 = x * x;
    return num / (18.0 * x2 * x2);
}

double moment_F4_series(double x) { return horner(m4_coeff, x); }

double var_F2_series(double x) { return x * x * horner(var_coeff, x); }

long double moment_F2_direct_ld(long double x) {
    const long double a = std::exp(x);
    return 2.0L * (a - 1.0L - x) / (x * x);
}

long double moment_F4_direct_ld(long double x) {
    const long double a = std::exp(x);
    const long double a4 = a * a * a * a;
    const long double num =
        783.0L - 784.0L * a + a4 + 540.0L * x + 240.0L * a * x + 144.0L * x * x;
    const long double x2 = x * x;
    return num / (18.0L * x2 * x2);
}

} // namespace detail

namespace {

// Branch dispatch in x = log a, shared by the a-based public functions and
// by fade_moments, which forms x = -pi*beta*delta at full precision instead
// of recovering it from the rounded a.
double m2_from_x(double x) {
    return (std::abs(x) < x2_crossover) ? detail::moment_F2_series(x)
                                        : detail::moment_F2_direct(x);
}

double m4_from_x(double x) {
    return (std::abs(x) < x4_crossover) ? detail::moment_F4_series(x)
                                        : detail::moment_F4_direct(x);
}

double var_from_x(double x) {
    if (std::abs(x) < x4_crossover)
        return detail::var_F2_series(x);
    const double m2 = detail::moment_F2_direct(x);
    return std::max(0.0, detail::moment_F4_direct(x) - m2 * m2);
}

double dm2_from_x(double x) { // m2 - 1 with full relative accuracy
    if (std::abs(x) < x2_crossover)
        return x * horner_n(m2_coeff + 1, std::size(m2_coeff) - 1, x); // drops the leading 1
    return detail::moment_F2_direct(x) - 1.0;
}

} // namespace

double moment_F2(double a) {
    check_domain(a, "moment_F2");
    if (a == 1.0)
        return 1.0;
    return m2_from_x(std::log(a));
}

double moment_F4(double a) {
    check_domain(a, "moment_F4");
    if (a == 1.0)
        return 1.0;
    return m4_from_x(std::log(a));
}

EvalMethod moment_F2_method(double a) {
    check_domain(a, "moment_F2_method");
    if (a == 1.0)
        return EvalMethod::limit;
    return (std::abs(std::log(a)) < x2_crossover) ? EvalMethod::series : EvalMethod::direct;
}

EvalMethod moment_F4_method(double a) {
    check_domain(a, "moment_F4_method");
    if (a == 1.0)
        return EvalMethod::limit;
    return (std::abs(std::log(a)) < x4_crossover) ? EvalMethod::series : EvalMethod::direct;
}

double moment_F2_minus_1(double a) {
    check_domain(a, "moment_F2_minus_1");
    if (a == 1.0)
        return 0.0;
    return dm2_from_x(std::log(a));
}

double var_F2(double a) {
    check_domain(a, "var_F2");
    if (a == 1.0)
        return 0.0;
    return var_from_x(std::log(a));
}

FadeMoments fade_moments(const ChannelConfig& cfg) {
    FadeMoments fm;
    fm.a = cfg.a;
    if (cfg.beta == 0.0)
        return fm; // F = 1 identically; the defaults are the limits
    // Form x = log a = -pi*beta*delta directly: going back through the
    // rounded cfg.a would cap the relative accuracy of x (and so of msG,
    // which is O(x^2)) at eps/|x|.
    const double x = -pi * cfg.beta * cfg.delta;
    fm.m2 = m2_from_x(x);
    fm.m4 = m4_from_x(x);
    fm.var_F2 = var_from_x(x);
    const double dm2 = dm2_from_x(x);
    fm.msG = fm.var_F2 / cfg.L + dm2 * dm2;
    return fm;
}

double mean_square_G_deviation(const ChannelConfig& cfg) {
    return fade_moments(cfg).msG;
}

} // namespace wpn
