#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pathint/amplitude.hpp"

namespace pathint {

/// Parameters of the higher-derivative regularization for the free particle,
/// endpoints fixed to x(0) = 0 and x(T) = x. The branch parameter satisfies
/// a^2 = 1 - i m nu / hbar with Re a > 0 (principal square root).
struct ItoSpec {
    double nu = 1.0;
    double m = 1.0;
    double hbar = 1.0;
    double T = 1.0;
    double x = 0.0;
    Complex a{1.0, 0.0};

    ItoSpec(double nu_, double m_, double hbar_, double T_, double x_);
};

/// Piecewise-constant source g(t): value(i) on [breakpoints(i), breakpoints(i+1)).
struct PiecewiseConstantSource {
    Eigen::VectorXd breakpoints;
    Eigen::VectorXd values;

    PiecewiseConstantSource(Eigen::VectorXd breaks, Eigen::VectorXd vals);
    static PiecewiseConstantSource box(double lambda, double t0, double t1);
};

/// exp[-(nu/(4 a hbar^2)) \int\int g(t) g(u) exp(-a|t-u|) dt du], the double
/// integral in closed form piece by piece. Unity when g vanishes.
Amplitude ou_generating_functional(const PiecewiseConstantSource& g, double nu, Complex a,
                                   double hbar);

/// F(a, T) = 2T/a - (2/a^2)(1 - exp(-aT)): the box-source double integral.
Complex f_factor(Complex a, double T);

/// sqrt(a/(nu F pi)) exp(-a x^2 / (nu F)), principal square root.
Amplitude ito_propagator(const ItoSpec& spec);

struct ItoLimitRow {
    double nu = 0.0;
    double rel_error = 0.0;
};
struct ItoLimitStudy {
    std::vector<ItoLimitRow> rows;
    double fitted_slope = 0.0;  // d log10(err) / d log10(nu)
};

/// Relative error against the exact free propagator over a list of diffusion
/// constants, with the fitted power law of the decay.
ItoLimitStudy ito_limit_study(const std::vector<double>& nu_list, double m, double hbar, double T,
                              double x);

struct AdmissibilityReport {
    bool admissible = false;
    double integral = 0.0;    // \int |w| including the tail estimate
    double tail_bound = 0.0;  // estimated mass beyond the table
    double tail_power = 0.0;  // fitted decay power of |w|
};

/// Tabulated |w| on a uniform symmetric grid: quadrature of \int |w(s)| ds
/// plus a power-law tail bound fitted to the outer decade of the table.
/// Throws TailUnbounded when no decay can be established.
AdmissibilityReport fourier_potential_admissible(const Eigen::VectorXd& s,
                                                 const Eigen::VectorXd& w);

}  // namespace pathint
