#pragma once

#include "pathint/amplitude.hpp"

namespace pathint {

/// Free-particle propagator sqrt(m/(2 pi i hbar T)) exp(i m (x2-x1)^2/(2 hbar T)),
/// principal square root. T must be nonzero.
Amplitude free_propagator(double x2, double x1, double T, double m, double hbar);

/// Diffusion (heat) kernel (2 pi nu T)^(-1/2) exp(-(x-y)^2/(2 nu T)), T > 0.
double heat_kernel(double x, double y, double T, double nu);

/// Imaginary-time kernel of the generator (nu/2) d^2/dx^2 - V with the
/// quadratic potential V(x) = omega^2 x^2 / (2 nu). omega = 0 reduces to the
/// heat kernel.
double euclidean_oscillator_kernel(double x, double y, double T, double nu, double omega);

struct RelativisticResult {
    Amplitude value;
    double extrapolation_spread = 0.0;
    bool converged = true;
};

/// (1/2 pi hbar) \int exp{(i/hbar)[p dq - T sqrt(p^2 + m^2)]} dp, evaluated by
/// exp(-delta |p|)-damped quadrature extrapolated delta -> 0.
RelativisticResult relativistic_free_propagator(double dq, double T, double m, double hbar);

}  // namespace pathint
