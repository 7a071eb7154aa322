#pragma once

#include "wpn/rng.hpp"

namespace wpn {

// Shifted-exponential law for the symbol power X_P = X_A^2:
//   p(x) = (1/lambda) * exp(-(x - P_min)/lambda) on [P_min, inf),
// with lambda = P - P_min so that E[X_P] = P.
struct InputLaw {
    double P = 0.0;
    double P_min = 0.0;
    double lambda = 0.0;

    static InputLaw make(double P, double P_min);
    // The default choice P_min = P/2 used by the closed-form bound.
    static InputLaw half_min(double P) { return make(P, P / 2.0); }
};

double sample_input_power(const InputLaw& law, RngStream& rng);

} // namespace wpn
