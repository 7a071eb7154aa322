#include "wpn/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace wpn {

double energy_statistic(const OversampledFrame& frame) {
    double v = 0.0;
    for (const cplx& y : frame.y)
        v += std::norm(y);
    return v;
}

EnergyDecomposition decompose(const OversampledFrame& frame, cplx x, const ChannelConfig& cfg) {
    const std::size_t L = frame.y.size();
    if (L == 0 || frame.theta.size() != L || frame.fade.size() != L)
        throw std::invalid_argument("decompose: frame latents missing or inconsistent");
    if (L != static_cast<std::size_t>(cfg.L))
        throw std::invalid_argument("decompose: frame length does not match cfg.L");

    const double x_A = std::abs(x);
    const cplx phase_x = (x_A > 0.0) ? x / x_A : cplx{1.0, 0.0}; // exp(j*Phi_X)

    EnergyDecomposition d;
    for (std::size_t l = 0; l < L; ++l) {
        const cplx rot = std::polar(1.0, frame.theta[l]);
        const cplx s = x * cfg.delta * rot * frame.fade[l];
        const cplx N = frame.y[l] - s;
        d.V += std::norm(frame.y[l]);
        d.G += std::norm(frame.fade[l]);
        d.Z1 += (phase_x * rot * frame.fade[l] * std::conj(N)).real();
        d.Z0 += std::norm(N);
    }
    d.G /= static_cast<double>(L);
    return d;
}

double reconstruct_energy(const EnergyDecomposition& d, double x_A, const ChannelConfig& cfg) {
    return x_A * x_A * cfg.delta * cfg.Ts * d.G + 2.0 * x_A * cfg.delta * d.Z1 + d.Z0;
}

} // namespace wpn
