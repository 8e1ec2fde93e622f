#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "pathint/amplitude.hpp"

namespace pathint::quad {

/// Composite Simpson rule over [a, b] with n subintervals (n made even).
double simpson(const std::function<double(double)>& f, double a, double b, int n);
Complex simpson_c(const std::function<Complex(double)>& f, double a, double b, int n);

/// Trapezoid rule over uniform samples with spacing h.
double trapezoid(const Eigen::VectorXd& samples, double h);

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

/// Conditionally convergent oscillatory integral of f over the real line,
/// evaluated with an exp(-delta |x|) damping factor and a polynomial
/// extrapolation delta -> 0 over the supplied damping list. range_factor
/// controls the truncation |x| <= range_factor / delta.
struct DampedIntegral {
    Complex value;
    double extrapolation_spread = 0.0;  // max pairwise difference of the damped values
};
DampedIntegral damped_oscillatory(const std::function<Complex(double)>& f,
                                  const std::vector<double>& deltas, double range_factor,
                                  double step);

/// Least-squares polynomial fit of degree deg to (x, y); returns coefficients
/// c0 + c1 x + ... The fit is done with a QR factorisation.
Eigen::VectorXd polyfit(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int deg);
double polyval(const Eigen::VectorXd& coeffs, double x);

/// Straight-line fit y = a + b x; returns {a, b, stderr_of_b}.
struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double slope_stderr = 0.0;
};
LineFit fit_line(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Deterministic sum: fixed-order pairwise reduction (independent of any
/// parallel partitioning used to fill the vector).
double pairwise_sum(const std::vector<double>& xs);
Complex pairwise_sum(const std::vector<Complex>& xs);

}  // namespace pathint::quad
