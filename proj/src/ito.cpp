#include "pathint/ito.hpp"

#include <cmath>
#include <limits>

#include "pathint/errors.hpp"
#include "pathint/exact.hpp"
#include "pathint/quadrature.hpp"

namespace pathint {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ItoSpec::ItoSpec(double nu_, double m_, double hbar_, double T_, double x_)
    : nu(nu_), m(m_), hbar(hbar_), T(T_), x(x_) {
    if (!(nu > 0.0) || !(m > 0.0) || !(hbar > 0.0) || !(T > 0.0))
        throw std::invalid_argument("ItoSpec: nu, m, hbar, T must be positive");
    Complex a2(1.0, -m * nu / hbar);
    a = std::sqrt(a2);
    if (!(a.real() > 0.0)) throw NumericError("ItoSpec: branch condition Re a > 0 violated");
    if (std::abs(a * a - a2) > 1e-14 * std::abs(a2))
        throw NumericError("ItoSpec: a^2 does not reproduce 1 - i m nu / hbar");
}

PiecewiseConstantSource::PiecewiseConstantSource(Eigen::VectorXd breaks, Eigen::VectorXd vals)
    : breakpoints(std::move(breaks)), values(std::move(vals)) {
    if (breakpoints.size() != values.size() + 1 || values.size() < 1)
        throw std::invalid_argument("PiecewiseConstantSource: need k+1 breakpoints for k pieces");
    for (Eigen::Index i = 0; i + 1 < breakpoints.size(); ++i)
        if (!(breakpoints[i + 1] > breakpoints[i]))
            throw std::invalid_argument("PiecewiseConstantSource: breakpoints must increase");
}

PiecewiseConstantSource PiecewiseConstantSource::box(double lambda, double t0, double t1) {
    Eigen::VectorXd b(2), v(1);
    b << t0, t1;
    v << lambda;
    return {b, v};
}

namespace {

// \int_I \int_J exp(-a|t-u|) dt du for disjoint intervals I=[c,d] before
// J=[e,f]; written so every exponent has a nonpositive real part.
Complex cross_piece(Complex a, double c, double d, double e, double f) {
    return (std::exp(-a * (e - d)) - std::exp(-a * (e - c)) - std::exp(-a * (f - d)) +
            std::exp(-a * (f - c))) /
           (a * a);
}

}  // namespace

Complex f_factor(Complex a, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("f_factor: need T > 0");
    if (a == Complex(0.0, 0.0)) throw std::invalid_argument("f_factor: need a != 0");
    return 2.0 * T / a - 2.0 / (a * a) * (1.0 - std::exp(-a * T));
}

Amplitude ou_generating_functional(const PiecewiseConstantSource& g, double nu, Complex a,
                                   double hbar) {
    if (!(a.real() > 0.0))
        throw std::invalid_argument("ou_generating_functional: need Re a > 0");
    const auto k = g.values.size();
    Complex total(0.0, 0.0);
    for (Eigen::Index i = 0; i < k; ++i) {
        if (g.values[i] == 0.0) continue;
        double li = g.breakpoints[i + 1] - g.breakpoints[i];
        total += g.values[i] * g.values[i] * f_factor(a, li);
        for (Eigen::Index j = i + 1; j < k; ++j) {
            if (g.values[j] == 0.0) continue;
            total += 2.0 * g.values[i] * g.values[j] *
                     cross_piece(a, g.breakpoints[i], g.breakpoints[i + 1], g.breakpoints[j],
                                 g.breakpoints[j + 1]);
        }
    }
    return Amplitude{std::exp(-(nu / (4.0 * a * hbar * hbar)) * total), 0};
}

Amplitude ito_propagator(const ItoSpec& spec) {
    Complex F = f_factor(spec.a, spec.T);
    Complex ratio = spec.a / (spec.nu * F);
    Complex value = std::sqrt(ratio / kPi) * std::exp(-ratio * spec.x * spec.x);
    return Amplitude{value, -2};
}

ItoLimitStudy ito_limit_study(const std::vector<double>& nu_list, double m, double hbar, double T,
                              double x) {
    if (nu_list.size() < 2) throw std::invalid_argument("ito_limit_study: need >= 2 nu values");
    for (std::size_t i = 1; i < nu_list.size(); ++i)
        if (!(nu_list[i] > nu_list[i - 1]))
            throw std::invalid_argument("ito_limit_study: nu_list must increase");
    Complex exact = free_propagator(x, 0.0, T, m, hbar).value;
    ItoLimitStudy study;
    Eigen::VectorXd lx(nu_list.size()), ly(nu_list.size());
    for (std::size_t i = 0; i < nu_list.size(); ++i) {
        ItoSpec spec(nu_list[i], m, hbar, T, x);
        Complex v = ito_propagator(spec).value;
        double err = std::abs(v - exact) / std::abs(exact);
        study.rows.push_back({nu_list[i], err});
        lx[i] = std::log10(nu_list[i]);
        ly[i] = std::log10(err);
    }
    study.fitted_slope = quad::fit_line(lx, ly).slope;
    return study;
}

AdmissibilityReport fourier_potential_admissible(const Eigen::VectorXd& s,
                                                 const Eigen::VectorXd& w) {
    const auto n = s.size();
    if (n < 9 || w.size() != n)
        throw std::invalid_argument("fourier_potential_admissible: table too short");
    double h = (s[n - 1] - s[0]) / (n - 1);
    for (Eigen::Index i = 1; i < n; ++i)
        if (std::abs(s[i] - s[i - 1] - h) > 1e-9 * std::abs(h))
            throw std::invalid_argument("fourier_potential_admissible: grid must be uniform");

    // Simpson on |w| (n should be odd; fall back to trapezoid otherwise)
    Eigen::VectorXd aw = w.cwiseAbs();
    double integral;
    if (n % 2 == 1) {
        integral = aw[0] + aw[n - 1];
        for (Eigen::Index i = 1; i + 1 < n; ++i) integral += aw[i] * (i % 2 ? 4.0 : 2.0);
        integral *= h / 3.0;
    } else {
        integral = quad::trapezoid(aw, h);
    }

    // power-law decay fitted to the outer quarter of each side
    auto side_tail = [&](bool positive_side, double& power) -> double {
        std::vector<double> lx, ly;
        Eigen::Index count = n / 4;
        for (Eigen::Index k = 0; k < count; ++k) {
            Eigen::Index i = positive_side ? n - 1 - k : k;
            double si = std::abs(s[i]);
            double wi = aw[i];
            if (si <= 0.0) continue;
            if (wi < 1e-300) continue;  // already underflowed: nothing out there
            lx.push_back(std::log(si));
            ly.push_back(std::log(wi));
        }
        double edge = aw[positive_side ? n - 1 : 0];
        if (lx.size() < 3) {
            if (edge < 1e-12) {
                power = std::numeric_limits<double>::infinity();
                return 0.0;  // table ends in zeros: tail negligible
            }
            throw TailUnbounded("fourier_potential_admissible: cannot establish decay");
        }
        Eigen::VectorXd vx = Eigen::Map<Eigen::VectorXd>(lx.data(), lx.size());
        Eigen::VectorXd vy = Eigen::Map<Eigen::VectorXd>(ly.data(), ly.size());
        power = -quad::fit_line(vx, vy).slope;
        double S = std::abs(positive_side ? s[n - 1] : s[0]);
        if (power <= 1.05) return std::numeric_limits<double>::infinity();
        double C = edge * std::pow(S, power);
        return C * std::pow(S, 1.0 - power) / (power - 1.0);
    };

    AdmissibilityReport rep;
    double p_pos = 0.0, p_neg = 0.0;
    double tail = side_tail(true, p_pos) + side_tail(false, p_neg);
    rep.tail_power = std::min(p_pos, p_neg);
    rep.tail_bound = tail;
    rep.admissible = std::isfinite(tail);
    rep.integral = rep.admissible ? integral + tail : std::numeric_limits<double>::infinity();
    return rep;
}

}  // namespace pathint
