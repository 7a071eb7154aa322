#include "wpn/input_law.hpp"

#include <cmath>
#include <stdexcept>

namespace wpn {

InputLaw InputLaw::make(double P, double P_min) {
    if (!std::isfinite(P) || !std::isfinite(P_min))
        throw std::invalid_argument("InputLaw: parameters must be finite");
    if (!(P_min > 0.0))
        throw std::invalid_argument("InputLaw: P_min must be > 0");
    if (!(P_min < P))
        throw std::invalid_argument("InputLaw: P_min must be < P (lambda > 0)");
    return InputLaw{P, P_min, P - P_min};
}

double sample_input_power(const InputLaw& law, RngStream& rng) {
    return law.P_min + rng.next_exponential(law.lambda);
}

} // namespace wpn
