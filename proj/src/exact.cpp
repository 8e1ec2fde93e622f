#include "pathint/exact.hpp"

#include <cmath>
#include <stdexcept>

#include "pathint/quadrature.hpp"

namespace pathint {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Amplitude free_propagator(double x2, double x1, double T, double m, double hbar) {
    if (T == 0.0) throw std::invalid_argument("free_propagator: T must be nonzero");
    Complex i(0.0, 1.0);
    Complex pref = std::sqrt(m / (2.0 * kPi * i * hbar * T));
    double dx = x2 - x1;
    return Amplitude{pref * std::exp(i * m * dx * dx / (2.0 * hbar * T)), -2};
}

double heat_kernel(double x, double y, double T, double nu) {
    if (!(T > 0.0)) throw std::invalid_argument("heat_kernel: need T > 0");
    if (!(nu > 0.0)) throw std::invalid_argument("heat_kernel: need nu > 0");
    double dx = x - y;
    return std::exp(-dx * dx / (2.0 * nu * T)) / std::sqrt(2.0 * kPi * nu * T);
}

double euclidean_oscillator_kernel(double x, double y, double T, double nu, double omega) {
    if (!(T > 0.0)) throw std::invalid_argument("euclidean_oscillator_kernel: need T > 0");
    if (!(nu > 0.0)) throw std::invalid_argument("euclidean_oscillator_kernel: need nu > 0");
    if (omega == 0.0) return heat_kernel(x, y, T, nu);
    double s = std::sinh(omega * T);
    double c = std::cosh(omega * T);
    double pref = std::sqrt(omega / (2.0 * kPi * nu * s));
    double expo = -(omega / (2.0 * nu * s)) * ((x * x + y * y) * c - 2.0 * x * y);
    return pref * std::exp(expo);
}

RelativisticResult relativistic_free_propagator(double dq, double T, double m, double hbar) {
    if (!(T > 0.0)) throw std::invalid_argument("relativistic_free_propagator: need T > 0");
    Complex i(0.0, 1.0);
    auto integrand = [&](double p) {
        return std::exp(i / hbar * (p * dq - T * std::sqrt(p * p + m * m)));
    };
    // oscillation scale sets the step; damping envelope sets the range
    double osc = (std::abs(dq) + T) / hbar;
    double step = std::min(0.05, 0.5 / std::max(osc, 1.0));
    auto res = quad::damped_oscillatory(integrand, {0.1, 0.05, 0.025, 0.0125}, 42.0, step);
    RelativisticResult out;
    out.value = Amplitude{res.value / (2.0 * kPi * hbar), -2};
    out.extrapolation_spread = res.extrapolation_spread / (2.0 * kPi * hbar);
    out.converged = out.extrapolation_spread < 0.5 * std::abs(out.value.value) + 1e-6;
    return out;
}

}  // namespace pathint
